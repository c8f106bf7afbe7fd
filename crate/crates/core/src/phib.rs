//! The φB-connection, its potential and its torsion.
//!
//! `∇'_x y = ∇_x y + ½{(∇_x φ)φy + (∇_x η)y·ξ} - η(y)∇_x ξ`, where `∇` is the
//! Levi-Civita connection. The torsion is computed from the connection
//! coefficients and independently from `F`; the two must agree exactly.

use crate::classify::{classify, ClassReport};
use crate::error::{Error, Result};
use crate::model::{
    compose, d_eta, fundamental_f, levi_civita, lee_forms, nabla_eta, nabla_xi, AlgebraModel, Connection,
};
use crate::report::{identity_check, tensor_zero_check, Check, Report};
use crate::scalar::{rational, PolyScalar};
use crate::tensor::{Slot, Tensor};

use Slot::{Contravariant as Up, Covariant as Co};

/// `Q^k_ij` (index `(i, j, k)`) of `∇' = ∇ + Q` for the φB-connection.
fn phib_potential_up(m: &AlgebraModel, lc: &Connection) -> Tensor {
    let d = m.dim();
    let half = rational(1, 2);
    let dphi = lc.covariant_derivative(m.phi()); // (i, k, j) = (∇_i φ)^k_j
    let dn = nabla_eta(m, lc); // (i, j) = (∇_i η) e_j
    let nx = nabla_xi(m, lc); // (k, i) = (∇_i ξ)^k
    let (phi, xi, eta) = (m.phi(), m.xi(), m.eta());
    Tensor::from_fn(m.params(), d, &[Co, Co, Up], |idx| {
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        let mut acc = m.zero();
        for s in 0..d {
            acc += &(dphi.get(&[i, k, s]) * phi.get(&[s, j]));
        }
        acc += &(dn.get(&[i, j]) * xi.get(&[k]));
        let mut acc = acc.scale(&half);
        acc -= &(eta.get(&[j]) * nx.get(&[k, i]));
        acc
    })
}

fn add_potential(lc: &Connection, q: &Tensor) -> Connection {
    Connection::new(lc.gamma() + q)
}

/// The φB-connection of `m`; `lc` must be its Levi-Civita connection.
pub fn phib(m: &AlgebraModel, lc: &Connection) -> Connection {
    add_potential(lc, &phib_potential_up(m, lc))
}

/// The reduced form `∇'_x y = ∇_x y + (∇_x η)y·ξ - η(y)∇_x ξ`, valid on class U.
/// Refuses models outside U.
pub fn phib_u_form(m: &AlgebraModel, lc: &Connection) -> Result<Connection> {
    let class = classify(m)?;
    if !class.u {
        return Err(Error::Precondition { required: "U".into(), report: Box::new(class) });
    }
    let d = m.dim();
    let dn = nabla_eta(m, lc);
    let nx = nabla_xi(m, lc);
    let (xi, eta) = (m.xi(), m.eta());
    let q = Tensor::from_fn(m.params(), d, &[Co, Co, Up], |idx| {
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        &(dn.get(&[i, j]) * xi.get(&[k])) - &(eta.get(&[j]) * nx.get(&[k, i]))
    });
    Ok(add_potential(lc, &q))
}

/// `Q(x,y,z) = g(∇'_x y - ∇_x y, z)`.
pub fn potential_q(m: &AlgebraModel, lc: &Connection, np: &Connection) -> Tensor {
    (np.gamma() - lc.gamma()).lower(2, m.metric()).expect("rank 3")
}

/// `Q(x,y,z) = F(x,φy,ξ)η(z) - F(x,φz,ξ)η(y)`, the closed form on class U.
pub fn potential_q_u_form(m: &AlgebraModel, f: &Tensor) -> Result<Tensor> {
    let fphi_xi = f.apply_phi_slot(1, m.phi())?.insert_vector(2, m.xi())?; // F(x, φy, ξ)
    let eta = m.eta();
    Ok(Tensor::from_fn(m.params(), m.dim(), &[Co, Co, Co], |i| {
        let (x, y, z) = (i[0], i[1], i[2]);
        &(fphi_xi.get(&[x, y]) * eta.get(&[z])) - &(fphi_xi.get(&[x, z]) * eta.get(&[y]))
    }))
}

/// Naturality of a connection: `∇'φ = ∇'ξ = ∇'η = ∇'g = 0`.
pub fn naturality_report(m: &AlgebraModel, conn: &Connection) -> Report {
    let mut r = Report::new("naturality");
    r.push(tensor_zero_check("phi-parallel", &conn.covariant_derivative(m.phi())));
    r.push(tensor_zero_check("xi-parallel", &conn.covariant_derivative(m.xi())));
    r.push(tensor_zero_check("eta-parallel", &conn.covariant_derivative(m.eta())));
    r.push(tensor_zero_check("metric-parallel", &conn.covariant_derivative(m.metric())));
    r
}

/// The two conditions characterising natural potentials:
/// `Q(x,y,φz) - Q(x,φy,z) = F(x,y,z)` and `Q(x,y,z) = -Q(x,z,y)`.
pub fn potential_report(m: &AlgebraModel, q: &Tensor, f: &Tensor) -> Result<Report> {
    let d = m.dim();
    let q_phi_z = q.apply_phi_slot(2, m.phi())?;
    let q_phi_y = q.apply_phi_slot(1, m.phi())?;
    let mut r = Report::new("potential");
    r.push(identity_check("potential-phi-defect-equals-F", d, 3, |i| {
        &(q_phi_z.get(i) - q_phi_y.get(i)) - f.get(i)
    }));
    r.push(identity_check("potential-metric-antisymmetric", d, 3, |i| q.get(i) + q.get(&[i[0], i[2], i[1]])));
    Ok(r)
}

/// Torsion `T(x,y,z) = g(∇'_x y - ∇'_y x - [x,y], z)` straight from the coefficients.
pub fn torsion_tensor(m: &AlgebraModel, conn: &Connection) -> Tensor {
    let gamma = conn.gamma();
    let c = m.brackets();
    let up = Tensor::from_fn(m.params(), m.dim(), &[Co, Co, Up], |i| {
        &(gamma.get(i) - gamma.get(&[i[1], i[0], i[2]])) - c.get(i)
    });
    up.lower(2, m.metric()).expect("rank 3")
}

/// Torsion of the φB-connection expressed through `F` alone:
/// `T(x,y,z) = -½{F(x,φy,φ²z) - F(y,φx,φ²z)} + η(x)F(y,φz,ξ) - η(y)F(x,φz,ξ)
///            + η(z){F(x,φy,ξ) - F(y,φx,ξ)}`.
pub fn torsion_from_f(m: &AlgebraModel, f: &Tensor) -> Result<Tensor> {
    let phi = m.phi();
    let phi2 = compose(phi, phi);
    let f_phi_y = f.apply_phi_slot(1, phi)?;
    let f_phi_y_phi2_z = f_phi_y.apply_endomorphism_slot(2, &phi2)?; // F(x, φy, φ²z)
    let f_phi_y_xi = f_phi_y.insert_vector(2, m.xi())?; // F(x, φy, ξ)
    let eta = m.eta();
    let half = rational(1, 2);
    Ok(Tensor::from_fn(m.params(), m.dim(), &[Co, Co, Co], |i| {
        let (x, y, z) = (i[0], i[1], i[2]);
        let mut t = (f_phi_y_phi2_z.get(&[x, y, z]) - f_phi_y_phi2_z.get(&[y, x, z])).scale(&-&half);
        t += &(eta.get(&[x]) * f_phi_y_xi.get(&[y, z]));
        t -= &(eta.get(&[y]) * f_phi_y_xi.get(&[x, z]));
        t += &(eta.get(&[z]) * &(f_phi_y_xi.get(&[x, y]) - f_phi_y_xi.get(&[y, x])));
        t
    }))
}

/// `T(x,y,z) = η(x)F(y,φz,ξ) - η(y)F(x,φz,ξ) + η(z)dη(x,y)`, valid on class U.
pub fn torsion_u_form(m: &AlgebraModel, f: &Tensor, deta: &Tensor) -> Result<Tensor> {
    let f_phi_xi = f.apply_phi_slot(1, m.phi())?.insert_vector(2, m.xi())?;
    let eta = m.eta();
    Ok(Tensor::from_fn(m.params(), m.dim(), &[Co, Co, Co], |i| {
        let (x, y, z) = (i[0], i[1], i[2]);
        let mut t = &(eta.get(&[x]) * f_phi_xi.get(&[y, z])) - &(eta.get(&[y]) * f_phi_xi.get(&[x, z]));
        t += &(eta.get(&[z]) * deta.get(&[x, y]));
        t
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionForms {
    /// `t(x) = g^ij T(x,e_i,e_j)`
    pub t: Tensor,
    /// `t*(x) = g^ij T(x,e_i,φe_j)`
    pub t_star: Tensor,
    /// `t̂(x) = T(x,ξ,ξ)`
    pub t_hat: Tensor,
}

pub fn torsion_forms(m: &AlgebraModel, t: &Tensor) -> Result<TorsionForms> {
    let gi = m.metric_inverse();
    Ok(TorsionForms {
        t: t.contract(1, 2, gi)?,
        t_star: t.apply_phi_slot(2, m.phi())?.contract(1, 2, gi)?,
        t_hat: t.insert_vector(2, m.xi())?.insert_vector(1, m.xi())?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionAnalysis {
    pub torsion: Tensor,
    pub forms: TorsionForms,
    pub class_verdicts: Vec<Check>,
    /// Identities the torsion forms satisfy in terms of the Lee forms.
    pub form_checks: Vec<Check>,
}

impl TorsionAnalysis {
    pub fn verdict(&self, name: &str) -> Option<&Check> {
        self.class_verdicts.iter().find(|c| c.name == name)
    }
}

fn cross_check(what: &str, a: &Tensor, b: &Tensor) -> Result<()> {
    match a.first_difference(b)? {
        None => Ok(()),
        Some((idx, diff)) => Err(Error::CrossCheck {
            what: what.to_string(),
            witness: idx.iter().map(|i| i + 1).collect(),
            difference: diff.to_string(),
        }),
    }
}

/// Full torsion analysis of the φB-connection `np` of `m`.
///
/// The torsion from the coefficients is cross-checked against the `F`
/// expression (and, on class U, against the reduced `dη` expression); any
/// disagreement is a hard error.
pub fn torsion(m: &AlgebraModel, np: &Connection) -> Result<TorsionAnalysis> {
    let lc = levi_civita(m);
    let f = fundamental_f(m, &lc);
    let t = torsion_tensor(m, np);
    cross_check("torsion (coefficients vs F expression)", &t, &torsion_from_f(m, &f)?)?;
    let class = classify(m)?;
    if class.u {
        let deta = d_eta(m, &lc);
        cross_check("torsion (coefficients vs d-eta expression)", &t, &torsion_u_form(m, &f, &deta)?)?;
    }
    let forms = torsion_forms(m, &t)?;
    let form_checks = torsion_form_checks(m, &f, &forms, &class)?;
    Ok(TorsionAnalysis { class_verdicts: torsion_class_check(m, &t)?, torsion: t, forms, form_checks })
}

/// `t = ½(θ* + θ*(ξ)η)`, `t* = -½(θ + θ(ξ)η)`, `t̂ = -ω∘φ` in general, and
/// `t = θ*(ξ)η`, `t* = -θ(ξ)η`, `t̂ = 0` on class U.
fn torsion_form_checks(m: &AlgebraModel, f: &Tensor, forms: &TorsionForms, class: &ClassReport) -> Result<Vec<Check>> {
    let d = m.dim();
    let lee = lee_forms(m, f)?;
    let eta = m.eta();
    let at_xi = |form: &Tensor| -> Result<PolyScalar> { Ok(form.insert_vector(0, m.xi())?.value().clone()) };
    let theta_xi = at_xi(&lee.theta)?;
    let theta_star_xi = at_xi(&lee.theta_star)?;
    let omega_phi = lee.omega.apply_phi_slot(0, m.phi())?;
    let half = rational(1, 2);
    let mut checks = vec![
        identity_check("t-from-theta-star", d, 1, |i| {
            let rhs = (lee.theta_star.get(i) + &(&theta_star_xi * eta.get(i))).scale(&half);
            forms.t.get(i) - &rhs
        }),
        identity_check("t-star-from-theta", d, 1, |i| {
            let rhs = (lee.theta.get(i) + &(&theta_xi * eta.get(i))).scale(&-&half);
            forms.t_star.get(i) - &rhs
        }),
        identity_check("t-hat-from-omega", d, 1, |i| forms.t_hat.get(i) + omega_phi.get(i)),
    ];
    if class.u {
        checks.push(identity_check("u-t-equals-theta-star-xi-eta", d, 1, |i| {
            forms.t.get(i) - &(&theta_star_xi * eta.get(i))
        }));
        checks.push(identity_check("u-t-star-equals-minus-theta-xi-eta", d, 1, |i| {
            forms.t_star.get(i) + &(&theta_xi * eta.get(i))
        }));
        checks.push(tensor_zero_check("u-t-hat-vanishes", &forms.t_hat));
    }
    Ok(checks)
}

/// Precomputed contractions of a torsion tensor used by the class predicates.
struct TorsionParts<'a> {
    m: &'a AlgebraModel,
    t: &'a Tensor,
    /// T(ξ, y, z)
    vertical: Tensor,
    /// T(x, y, ξ)
    xi_last: Tensor,
    /// T(ξ, φy, φz)
    vertical_phi: Tensor,
    /// T(ξ, φ²y, φ²z)
    vertical_phi2: Tensor,
    /// T(φx, φy, z)
    phi_phi_z: Tensor,
    /// T(φx, y, φz)
    phi_y_phi: Tensor,
    /// T(φx, y, z)
    phi_first: Tensor,
    /// T(φ²x, φ²y, ξ)
    xi_last_phi2: Tensor,
    /// T(φx, φy, ξ)
    xi_last_phi: Tensor,
    /// t̂(x) = T(x, ξ, ξ)
    t_hat: Tensor,
}

impl<'a> TorsionParts<'a> {
    fn new(m: &'a AlgebraModel, t: &'a Tensor) -> Result<Self> {
        let phi = m.phi();
        let phi2 = compose(phi, phi);
        let vertical = t.insert_vector(0, m.xi())?;
        let xi_last = t.insert_vector(2, m.xi())?;
        Ok(TorsionParts {
            m,
            t,
            vertical_phi: vertical.apply_phi_slot(0, phi)?.apply_phi_slot(1, phi)?,
            vertical_phi2: vertical.apply_endomorphism_slot(0, &phi2)?.apply_endomorphism_slot(1, &phi2)?,
            phi_phi_z: t.apply_phi_slot(0, phi)?.apply_phi_slot(1, phi)?,
            phi_y_phi: t.apply_phi_slot(0, phi)?.apply_phi_slot(2, phi)?,
            phi_first: t.apply_phi_slot(0, phi)?,
            xi_last_phi2: xi_last.apply_endomorphism_slot(0, &phi2)?.apply_endomorphism_slot(1, &phi2)?,
            xi_last_phi: xi_last.apply_phi_slot(0, phi)?.apply_phi_slot(1, phi)?,
            t_hat: xi_last.insert_vector(1, m.xi())?,
            vertical,
            xi_last,
        })
    }

    fn d(&self) -> usize {
        self.m.dim()
    }

    fn eta(&self, i: usize) -> &PolyScalar {
        self.m.eta().get(&[i])
    }

    fn vertical_zero(&self) -> Check {
        tensor_zero_check("T(ξ,y,z)=0", &self.vertical)
    }

    fn xi_last_zero(&self) -> Check {
        tensor_zero_check("T(x,y,ξ)=0", &self.xi_last)
    }

    fn cyclic(&self) -> Result<Check> {
        Ok(tensor_zero_check("𝔖T(x,y,z)=0", &self.t.cyclic_sum()?))
    }

    /// `T(x,y,z) = η(z)T(φ²x,φ²y,ξ)`
    fn xi_last_form(&self) -> Check {
        identity_check("T(x,y,z)=η(z)T(φ²x,φ²y,ξ)", self.d(), 3, |i| {
            self.t.get(i) - &(self.eta(i[2]) * self.xi_last_phi2.get(&[i[0], i[1]]))
        })
    }

    /// `T(x,y,z) = η(x)T(ξ,φ²y,φ²z) - η(y)T(ξ,φ²x,φ²z)`
    fn vertical_form(&self) -> Check {
        identity_check("T(x,y,z)=η(x)T(ξ,φ²y,φ²z)-η(y)T(ξ,φ²x,φ²z)", self.d(), 3, |i| {
            let (x, y, z) = (i[0], i[1], i[2]);
            let rhs = &(self.eta(x) * self.vertical_phi2.get(&[y, z])) - &(self.eta(y) * self.vertical_phi2.get(&[x, z]));
            self.t.get(i) - &rhs
        })
    }

    /// `T(ξ,y,z) = ±T(ξ,z,y)`
    fn vertical_swap(&self, sign: i64) -> Check {
        let name = if sign > 0 { "T(ξ,y,z)=T(ξ,z,y)" } else { "T(ξ,y,z)=-T(ξ,z,y)" };
        identity_check(name, self.d(), 2, |i| {
            let swapped = self.vertical.get(&[i[1], i[0]]);
            if sign > 0 {
                self.vertical.get(i) - swapped
            } else {
                self.vertical.get(i) + swapped
            }
        })
    }

    /// `T(ξ,y,z) = ±T(ξ,φy,φz)`
    fn vertical_phi_rel(&self, sign: i64) -> Check {
        let name = if sign > 0 { "T(ξ,y,z)=T(ξ,φy,φz)" } else { "T(ξ,y,z)=-T(ξ,φy,φz)" };
        identity_check(name, self.d(), 2, |i| {
            if sign > 0 {
                self.vertical.get(i) - self.vertical_phi.get(i)
            } else {
                self.vertical.get(i) + self.vertical_phi.get(i)
            }
        })
    }

    /// `T(x,y,ξ) = ±T(φx,φy,ξ)`
    fn xi_last_phi_rel(&self, sign: i64) -> Check {
        let name = if sign > 0 { "T(x,y,ξ)=T(φx,φy,ξ)" } else { "T(x,y,ξ)=-T(φx,φy,ξ)" };
        identity_check(name, self.d(), 2, |i| {
            if sign > 0 {
                self.xi_last.get(i) - self.xi_last_phi.get(i)
            } else {
                self.xi_last.get(i) + self.xi_last_phi.get(i)
            }
        })
    }

    /// `T(x,y,z) = η(x)T(ξ,y,z) - η(y)T(ξ,x,z) + η(z)T(ξ,x,y) - η(z)T(ξ,y,x)`
    fn u_vertical_structure(&self) -> Check {
        identity_check("u-vertical-structure", self.d(), 3, |i| {
            let (x, y, z) = (i[0], i[1], i[2]);
            let v = &self.vertical;
            let mut rhs = &(self.eta(x) * v.get(&[y, z])) - &(self.eta(y) * v.get(&[x, z]));
            rhs += &(self.eta(z) * &(v.get(&[x, y]) - v.get(&[y, x])));
            self.t.get(i) - &rhs
        })
    }
}

/// Every single-class condition set for the φB torsion, plus the derived
/// direct-sum predicates for U, U1 (T31+T33), U2 (T31+T32) and U3 (T31).
///
/// Direct sums are decided by the identities common to their summands:
/// - U: the vertical structure identity;
/// - U1: vertical structure, `T(x,y,ξ) = 0`, `T(ξ,y,z) = T(ξ,z,y)`;
/// - U2: vertical structure, `T(x,y,ξ) = 0`, `T(ξ,φy,φz) = -T(ξ,y,z)`;
/// - U3: the full T31 condition set.
pub fn torsion_class_check(m: &AlgebraModel, t: &Tensor) -> Result<Vec<Check>> {
    let p = TorsionParts::new(m, t)?;
    let d = m.dim();
    let anti_phi_pair = identity_check("T(x,y,z)=-T(φx,φy,z)", d, 3, |i| t.get(i) + p.phi_phi_z.get(i));
    let phi_pair_plus = identity_check("T(x,y,z)=T(φx,φy,z)", d, 3, |i| t.get(i) - p.phi_phi_z.get(i));
    let phi_xz = identity_check("T(x,y,z)=T(φx,y,φz)", d, 3, |i| t.get(i) - p.phi_y_phi.get(i));
    let cyclic_phi = tensor_zero_check("𝔖T(φx,y,z)=0", &p.phi_first.cyclic_sum()?);
    let t41 = identity_check("T(x,y,z)=η(z){η(y)t̂(x)-η(x)t̂(y)}", d, 3, |i| {
        let (x, y, z) = (i[0], i[1], i[2]);
        let inner = &(p.eta(y) * p.t_hat.get(&[x])) - &(p.eta(x) * p.t_hat.get(&[y]));
        t.get(i) - &(p.eta(z) * &inner)
    });

    let base = || vec![p.vertical_zero(), p.xi_last_zero()];
    let with = |mut v: Vec<Check>, extra: Vec<Check>| {
        v.extend(extra);
        v
    };
    Ok(vec![
        Check::all_of("T12", with(base(), vec![anti_phi_pair.clone(), phi_xz])),
        Check::all_of("T13", with(base(), vec![phi_pair_plus.clone(), p.cyclic()?])),
        Check::all_of("T14", with(base(), vec![phi_pair_plus, cyclic_phi])),
        Check::all_of("T21", vec![p.xi_last_form(), p.xi_last_phi_rel(-1)]),
        Check::all_of("T22", vec![p.xi_last_form(), p.xi_last_phi_rel(1)]),
        Check::all_of("T31", vec![p.vertical_form(), p.vertical_swap(1), p.vertical_phi_rel(-1)]),
        Check::all_of("T32", vec![p.vertical_form(), p.vertical_swap(-1), p.vertical_phi_rel(-1)]),
        Check::all_of("T33", vec![p.vertical_form(), p.vertical_swap(1), p.vertical_phi_rel(1)]),
        Check::all_of("T34", vec![p.vertical_form(), p.vertical_swap(-1), p.vertical_phi_rel(1)]),
        Check::all_of("T41", vec![t41]),
        Check::all_of("U", vec![p.u_vertical_structure()]),
        Check::all_of("U1:T31+T33", vec![p.u_vertical_structure(), p.xi_last_zero(), p.vertical_swap(1)]),
        Check::all_of("U2:T31+T32", vec![p.u_vertical_structure(), p.xi_last_zero(), p.vertical_phi_rel(-1)]),
        Check::all_of("U3:T31", vec![p.vertical_form(), p.vertical_swap(1), p.vertical_phi_rel(-1)]),
    ])
}

/// Vertical-structure identity of the torsion on class U.
pub fn u_vertical_structure_check(m: &AlgebraModel, t: &Tensor) -> Result<Check> {
    Ok(TorsionParts::new(m, t)?.u_vertical_structure())
}

fn require(m: &AlgebraModel, required: &str, holds: impl Fn(&ClassReport) -> bool) -> Result<ClassReport> {
    let class = classify(m)?;
    if holds(&class) {
        Ok(class)
    } else {
        Err(Error::Precondition { required: required.into(), report: Box::new(class) })
    }
}

/// On U1: `Q(x,y,z) = T(z,y,x)` and `𝔖T = 0`.
pub fn u1_torsion_properties(m: &AlgebraModel, q: &Tensor, t: &Tensor) -> Result<Report> {
    require(m, "U1", |c| c.u1)?;
    let mut r = Report::new("U1 torsion properties");
    r.push(identity_check("potential-equals-transposed-torsion", m.dim(), 3, |i| {
        q.get(i) - t.get(&[i[2], i[1], i[0]])
    }));
    r.push(tensor_zero_check("torsion-cyclic-sum-vanishes", &t.cyclic_sum()?));
    Ok(r)
}

/// `∇_{φx} ξ = φ ∇_x ξ`, valid on U2.
pub fn nabla_xi_phi_check(m: &AlgebraModel, lc: &Connection) -> Check {
    let nx = nabla_xi(m, lc);
    let lhs = compose(&nx, m.phi()); // x ↦ ∇_{φx} ξ
    let rhs = compose(m.phi(), &nx);
    identity_check("nabla-xi-commutes-with-phi", m.dim(), 2, |i| lhs.get(i) - rhs.get(i))
}

/// Torsion identities on U3, plus `𝔖T = 0` (needs U1) and
/// `∇_{φx}ξ = φ∇_x ξ` (needs U2). Sub-checks run only when their class holds;
/// a model in neither U1 nor U2 is refused.
pub fn u3_torsion_properties(m: &AlgebraModel, lc: &Connection, t: &Tensor) -> Result<Report> {
    let class = require(m, "U1 or U2", |c| c.u1 || c.u2)?;
    let d = m.dim();
    let mut r = Report::new("U3 torsion properties");
    if class.u3 {
        let phi = m.phi();
        let t_phi_x = t.apply_phi_slot(0, phi)?;
        let t_phi_y = t.apply_phi_slot(1, phi)?;
        let t_phi_z = t.apply_phi_slot(2, phi)?;
        let t_phi_xz = t_phi_x.apply_phi_slot(2, phi)?;
        let t_phi_yz = t_phi_y.apply_phi_slot(2, phi)?;
        let t_xi_mid = t.insert_vector(1, m.xi())?; // T(x, ξ, z)
        let eta = m.eta();
        r.push(identity_check("phi-derivation", d, 3, |i| {
            &(t_phi_x.get(i) + t_phi_y.get(i)) - t_phi_z.get(i)
        }));
        r.push(identity_check("phi-pair-sum", d, 3, |i| &(t.get(i) + t_phi_xz.get(i)) + t_phi_yz.get(i)));
        r.push(identity_check("phi-pair-symmetry", d, 3, |i| {
            t_phi_yz.get(i) - t_phi_yz.get(&[i[0], i[2], i[1]])
        }));
        r.push(identity_check("skew-defect", d, 3, |i| {
            let (x, y, z) = (i[0], i[1], i[2]);
            let lhs = t.get(i) - t.get(&[x, z, y]);
            let rhs = &(eta.get(&[y]) * t_xi_mid.get(&[x, z])) - &(eta.get(&[z]) * t_xi_mid.get(&[x, y]));
            &lhs - &rhs
        }));
    } else {
        r.note("model is not in U3; the U3-only identities were not evaluated");
    }
    if class.u1 {
        r.push(tensor_zero_check("torsion-cyclic-sum-vanishes", &t.cyclic_sum()?));
    }
    if class.u2 {
        r.push(nabla_xi_phi_check(m, lc));
    }
    Ok(r)
}

/// `(∇t)` via [`Connection::covariant_derivative`]; the new leading slot is the direction.
pub fn covariant_derivative(_m: &AlgebraModel, conn: &Connection, t: &Tensor) -> Tensor {
    conn.covariant_derivative(t)
}
