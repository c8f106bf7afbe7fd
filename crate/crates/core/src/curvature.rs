//! Curvature of the φB-connection and φ-Kähler-type tests.

use serde::Serialize;

use crate::classify::classify;
use crate::error::{Error, Result};
use crate::model::{compose, curvature_traces, levi_civita, nabla_eta, nabla_xi, norm_nabla_xi, riemann, AlgebraModel, Connection};
use crate::phib::potential_q;
use crate::report::{identity_check, Check, Report};
use crate::scalar::{int, PolyScalar};
use crate::tensor::{Slot, Tensor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KaehlerFlags {
    /// `L(x,y,z,w) = -L(y,x,z,w) = -L(x,y,w,z)`
    pub curvature_antisymmetry: bool,
    /// `𝔖_{x,y,z} L(x,y,z,w) = 0`
    pub first_bianchi: bool,
    /// `L(x,y,φz,φw) = -L(x,y,z,w)`
    pub phi_anti_invariance: bool,
}

impl KaehlerFlags {
    pub fn all(&self) -> bool {
        self.curvature_antisymmetry && self.first_bianchi && self.phi_anti_invariance
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureAnalysis {
    pub r_prime: Tensor,
    pub tau_prime: PolyScalar,
    pub tau_prime_star: PolyScalar,
    pub kaehler: KaehlerFlags,
}

/// `R'(x,y,z,w) = R(x,y,z,w) + (∇_x Q)(y,z,w) - (∇_y Q)(x,z,w)
///              + g(Q(x,z),Q(y,w)) - g(Q(y,z),Q(x,w))` with `∇` the Levi-Civita connection.
pub fn gauss_form_curvature(m: &AlgebraModel, lc: &Connection, np: &Connection) -> Tensor {
    let r = riemann(m, lc);
    let q = potential_q(m, lc, np);
    let q_up = np.gamma() - lc.gamma();
    let dq = lc.covariant_derivative(&q);
    let d = m.dim();
    Tensor::from_fn(m.params(), d, &[Slot::Covariant; 4], |i| {
        let (x, y, z, w) = (i[0], i[1], i[2], i[3]);
        let mut acc = r.get(i) + dq.get(i);
        acc -= dq.get(&[y, x, z, w]);
        for a in 0..d {
            acc += &(q_up.get(&[x, z, a]) * q.get(&[y, w, a]));
            acc -= &(q_up.get(&[y, z, a]) * q.get(&[x, w, a]));
        }
        acc
    })
}

/// `τ = g^ij g^kl L(e_k,e_i,e_j,e_l)` evaluated as one double sum.
fn direct_scalar_curvature(m: &AlgebraModel, l: &Tensor) -> PolyScalar {
    let d = m.dim();
    let gi = m.metric_inverse();
    let mut acc = m.zero();
    for i in 0..d {
        for j in 0..d {
            let a = gi.get(&[i, j]);
            if a.is_zero() {
                continue;
            }
            for k in 0..d {
                for ll in 0..d {
                    let b = gi.get(&[k, ll]);
                    if b.is_zero() {
                        continue;
                    }
                    acc += &(&(a * b) * l.get(&[k, i, j, ll]));
                }
            }
        }
    }
    acc
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

/// Curvature of `np` from the commutator definition, cross-checked against
/// the Gauss-type expression through the potential.
pub fn r_prime(m: &AlgebraModel, np: &Connection) -> Result<CurvatureAnalysis> {
    let lc = levi_civita(m);
    let r_prime = riemann(m, np);
    cross_check("curvature (commutator vs potential expression)", &r_prime, &gauss_form_curvature(m, &lc, np))?;
    let (_, tau_prime, tau_prime_star) = curvature_traces(m, &r_prime)?;
    let direct = direct_scalar_curvature(m, &r_prime);
    if direct != tau_prime {
        return Err(Error::CrossCheck {
            what: "scalar curvature (Ricci trace vs double contraction)".into(),
            witness: vec![],
            difference: (&tau_prime - &direct).to_string(),
        });
    }
    let kaehler = kaehler_type_check(&r_prime, m);
    Ok(CurvatureAnalysis { r_prime, tau_prime, tau_prime_star, kaehler })
}

/// The three φ-Kähler-type conditions as checks carrying witnesses.
pub fn kaehler_type_report(l: &Tensor, m: &AlgebraModel) -> Report {
    let d = m.dim();
    let l_phi = l
        .apply_phi_slot(2, m.phi())
        .and_then(|t| t.apply_phi_slot(3, m.phi()))
        .expect("rank-4 covariant tensor");
    let mut r = Report::new("phi-Kaehler-type");
    r.push(identity_check("curvature-antisymmetry", d, 4, |i| {
        let (x, y, z, w) = (i[0], i[1], i[2], i[3]);
        let a = l.get(i) + l.get(&[y, x, z, w]);
        if !a.is_zero() {
            return a;
        }
        l.get(i) + l.get(&[x, y, w, z])
    }));
    r.push(match l.cyclic_sum() {
        Ok(s) => crate::report::tensor_zero_check("first-bianchi", &s),
        Err(e) => Check::fail("first-bianchi", e.to_string()),
    });
    r.push(identity_check("phi-anti-invariance", d, 4, |i| l_phi.get(i) + l.get(i)));
    r
}

pub fn kaehler_type_check(l: &Tensor, m: &AlgebraModel) -> KaehlerFlags {
    let r = kaehler_type_report(l, m);
    let ok = |name: &str| r.check(name).is_some_and(Check::passed);
    KaehlerFlags {
        curvature_antisymmetry: ok("curvature-antisymmetry"),
        first_bianchi: ok("first-bianchi"),
        phi_anti_invariance: ok("phi-anti-invariance"),
    }
}

/// On class U: `R'(x,y,z,w) = R(x,y,φ²z,φ²w) - (∇_xη)z(∇_yη)w + (∇_yη)z(∇_xη)w`,
/// its full trace `τ' = τ - 2ρ(ξ,ξ) - tr((∇ξ)²) + (tr ∇ξ)²`, and the reduced
/// scalar identity `τ' = τ - 2ρ(ξ,ξ) - ‖∇ξ‖²`. The reduced form needs
/// `tr ∇ξ = 0` and a self-adjoint `∇ξ`; outside that it fails and is reported as such.
pub fn r_prime_u_identity(m: &AlgebraModel, r: &Tensor, lc: &Connection, analysis: &CurvatureAnalysis) -> Result<Report> {
    let class = classify(m)?;
    if !class.u {
        return Err(Error::Precondition { required: "U".into(), report: Box::new(class) });
    }
    let d = m.dim();
    let phi2 = compose(m.phi(), m.phi());
    let r_h = r.apply_endomorphism_slot(2, &phi2)?.apply_endomorphism_slot(3, &phi2)?;
    let dn = nabla_eta(m, lc);
    let mut rep = Report::new("curvature on U");
    rep.push(identity_check("horizontal-curvature-form", d, 4, |i| {
        let (x, y, z, w) = (i[0], i[1], i[2], i[3]);
        let mut rhs = r_h.get(i) - &(dn.get(&[x, z]) * dn.get(&[y, w]));
        rhs += &(dn.get(&[y, z]) * dn.get(&[x, w]));
        analysis.r_prime.get(i) - &rhs
    }));
    let (rho, tau, _) = curvature_traces(m, r)?;
    let rho_xi_xi = rho.insert_vector(1, m.xi())?.insert_vector(0, m.xi())?.value().clone();
    let norm = norm_nabla_xi(m, lc);
    let nx = nabla_xi(m, lc);
    let nx2 = compose(&nx, &nx);
    let trace = |t: &Tensor| (0..d).fold(m.zero(), |acc, k| &acc + t.get(&[k, k]));
    let (tr_nx, tr_nx2) = (trace(&nx), trace(&nx2));
    let base = &tau - &rho_xi_xi.scale(&int(2));

    let full = &(&base - &tr_nx2) + &(&tr_nx * &tr_nx);
    let defect = &analysis.tau_prime - &full;
    rep.push(Check::from_bool(
        "scalar-curvature-trace-form",
        defect.is_zero(),
        format!("τ' - (τ - 2ρ(ξ,ξ) - tr((∇ξ)²) + (tr ∇ξ)²) = {defect}"),
    ));
    let defect = &analysis.tau_prime - &(&base - &norm);
    rep.push(Check::from_bool(
        "scalar-curvature-identity",
        defect.is_zero(),
        format!("τ' - (τ - 2ρ(ξ,ξ) - ‖∇ξ‖²) = {defect}"),
    ));
    rep.value("tau", &tau);
    rep.value("rho(xi,xi)", &rho_xi_xi);
    rep.value("norm(nabla xi)^2", &norm);
    rep.value("trace(nabla xi)", &tr_nx);
    rep.value("tau'", &analysis.tau_prime);
    Ok(rep)
}

/// `G(a, b) = g(∇_a ξ, ∇_b ξ)`
fn nabla_xi_gram(m: &AlgebraModel, nx: &Tensor) -> Tensor {
    let d = m.dim();
    let nx_low = nx.lower(0, m.metric()).expect("rank 2");
    Tensor::from_fn(m.params(), d, &[Slot::Covariant; 2], |i| {
        (0..d).fold(m.zero(), |acc, k| &acc + &(nx_low.get(&[k, i[0]]) * nx.get(&[k, i[1]])))
    })
}

fn vertical_form_check(name: &str, m: &AlgebraModel, r: &Tensor, h: &Tensor) -> Check {
    let r_xi = r.insert_vector(2, m.xi()).expect("rank 4");
    let eta = m.eta();
    identity_check(name, m.dim(), 3, |i| {
        let (x, y, z) = (i[0], i[1], i[2]);
        let rhs = &(eta.get(&[x]) * h.get(&[y, z])) - &(eta.get(&[y]) * h.get(&[x, z]));
        r_xi.get(i) - &rhs
    })
}

/// `R(x,y,ξ,z) = η(x)g(∇_yξ,∇_zξ) - η(y)g(∇_xξ,∇_zξ)`, i.e. `g(R(x,y)ξ, z)`.
///
/// Holds on U3 only when `∇_ξ(∇ξ) = 0`; see [`vertical_curvature_derivative_check`].
pub fn vertical_curvature_check(m: &AlgebraModel, r: &Tensor, lc: &Connection) -> Check {
    let gram = nabla_xi_gram(m, &nabla_xi(m, lc));
    vertical_form_check("vertical-curvature-form", m, r, &gram)
}

/// `g(R(x,y)ξ, z) = η(x)h(y,z) - η(y)h(x,z)` with
/// `h(a,b) = g(∇_aξ, ∇_bξ) + g((∇_ξ ∇ξ)a, b)`, from `R(x,ξ)ξ = -(∇_ξ∇ξ)x - (∇ξ)²x`.
pub fn vertical_curvature_derivative_check(m: &AlgebraModel, r: &Tensor, lc: &Connection) -> Check {
    let nx = nabla_xi(m, lc);
    let gram = nabla_xi_gram(m, &nx);
    // (∇_ξ ∇ξ) with slots (k, a), lowered on k
    let dxi = lc.covariant_derivative(&nx).insert_vector(0, m.xi()).expect("rank 3");
    let dxi_low = dxi.lower(0, m.metric()).expect("rank 2");
    let h = Tensor::from_fn(m.params(), m.dim(), &[Slot::Covariant; 2], |i| {
        gram.get(i) + dxi_low.get(&[i[1], i[0]])
    });
    vertical_form_check("vertical-curvature-form-with-xi-derivative", m, r, &h)
}

/// On U1: the vertical curvature form of `R` and the φ-Kähler-type conditions
/// for `R'`. On U3 all of them are asserted; on the rest of U1 they are
/// evaluated and reported, with a note that U3 membership is not implied.
pub fn r_xi_u3_check(m: &AlgebraModel, r: &Tensor, lc: &Connection) -> Result<Report> {
    let class = classify(m)?;
    if !class.u1 {
        return Err(Error::Precondition { required: "U1".into(), report: Box::new(class) });
    }
    let np = crate::phib::phib(m, lc);
    let analysis = r_prime(m, &np)?;
    let mut rep = Report::new("curvature on U1");
    rep.push(vertical_curvature_check(m, r, lc));
    rep.push(vertical_curvature_derivative_check(m, r, lc));
    rep.absorb("r-prime-", kaehler_type_report(&analysis.r_prime, m));
    if !class.u3 {
        rep.note("model is in U1 but not in U3");
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phib::phib;
    use crate::scalar::ParamSet;
    use crate::tensor::Slot::{Contravariant as Up, Covariant as Co};

    fn semidirect(entries: &[(usize, usize, i64)]) -> AlgebraModel {
        let params = ParamSet::empty();
        let mut m = AlgebraModel::with_standard_structure(2, Tensor::zeros(&params, 5, &[Co, Co, Up])).unwrap();
        for &(i, k, a) in entries {
            m = m.with_bracket(i, 4, k, PolyScalar::constant(&params, int(a)));
        }
        m
    }

    #[test]
    fn f0_curvature_equals_levi_civita_curvature() {
        let m = semidirect(&[]);
        let lc = levi_civita(&m);
        let a = r_prime(&m, &phib(&m, &lc)).unwrap();
        assert_eq!(a.r_prime, riemann(&m, &lc));
        assert!(a.kaehler.all());
        assert!(r_prime_u_identity(&m, &riemann(&m, &lc), &lc, &a).unwrap().all_passed());
        assert!(r_xi_u3_check(&m, &riemann(&m, &lc), &lc).unwrap().all_passed());
    }

    #[test]
    fn u1_model_outside_u3() {
        let m = semidirect(&[(0, 0, 1)]);
        let lc = levi_civita(&m);
        let r = riemann(&m, &lc);
        let a = r_prime(&m, &phib(&m, &lc)).unwrap();
        // R' is still φ-Kähler-type here although the model is outside U3.
        assert!(a.kaehler.all());
        let rep = r_prime_u_identity(&m, &r, &lc, &a).unwrap();
        assert!(rep.check("horizontal-curvature-form").unwrap().passed());
        assert!(rep.check("scalar-curvature-trace-form").unwrap().passed());
        // tr ∇ξ = 1, so the reduced scalar identity is off by exactly 1.
        let reduced = rep.check("scalar-curvature-identity").unwrap();
        assert!(!reduced.passed());
        assert!(reduced.detail.as_deref().unwrap().ends_with("= 1"));
        let rep = r_xi_u3_check(&m, &r, &lc).unwrap();
        assert!(rep.all_passed(), "{}", rep.render_text());
        assert_eq!(rep.notes, vec!["model is in U1 but not in U3".to_string()]);
    }

    #[test]
    fn metric_kulkarni_square_is_curvature_like() {
        // L(x,y,z,w) = g(x,w)g(y,z) - g(x,z)g(y,w)
        let m = semidirect(&[]);
        let g = m.metric();
        let l = Tensor::from_fn(m.params(), 5, &[Co; 4], |i| {
            &(g.get(&[i[0], i[3]]) * g.get(&[i[1], i[2]])) - &(g.get(&[i[0], i[2]]) * g.get(&[i[1], i[3]]))
        });
        let flags = kaehler_type_check(&l, &m);
        assert!(flags.curvature_antisymmetry && flags.first_bianchi);
        assert!(!flags.phi_anti_invariance);
    }

    #[test]
    fn vertical_form_needs_the_xi_derivative_on_the_example() {
        let m = crate::example::build_example(&crate::example::ExampleParams::symbolic());
        let lc = levi_civita(&m);
        let r = riemann(&m, &lc);
        let stated = vertical_curvature_check(&m, &r, &lc);
        assert_eq!(stated.witness, Some(vec![1, 5, 1]));
        assert_eq!(stated.detail.as_deref(), Some("residual -1/2*l2^2 + 1/2*l4^2 + 1/2*m1^2 - 1/2*m3^2"));
        assert!(vertical_curvature_derivative_check(&m, &r, &lc).passed());
    }
}
