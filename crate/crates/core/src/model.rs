//! Almost contact B-metric Lie algebras in a fixed left-invariant frame.
//!
//! Everything here reduces to Lie-algebra combinatorics: frame components of
//! left-invariant fields are constant, so a connection is a table of
//! coefficients `Γ^k_ij` and covariant derivatives are purely algebraic.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::error::Result;
use crate::report::{identity_check, tensors_equal_check, Check, Report};
use crate::scalar::{int, ParamImage, ParamSet, PolyScalar, Rational, ScalarError};
use crate::tensor::{Slot, Tensor};

use Slot::{Contravariant as Up, Covariant as Co};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("dimension must be odd and at least 3, got {0}")]
    Dimension(usize),
    #[error("{field}: {msg}")]
    Shape { field: String, msg: String },
    #[error("metric[{i}][{j}] differs from metric[{j}][{i}]")]
    AsymmetricMetric { i: usize, j: usize },
    #[error("metric: matrix is not invertible")]
    SingularMetric,
    #[error("brackets: parameter set differs from the model parameters")]
    ParamMismatch,
}

/// A Lie algebra `[e_i, e_j] = Σ c^k_ij e_k` with an almost contact structure
/// `(φ, ξ, η)` and a constant metric `g`.
#[derive(Debug, Clone)]
pub struct AlgebraModel {
    n: usize,
    params: ParamSet,
    brackets: Tensor,
    metric: Vec<Vec<Rational>>,
    g: Tensor,
    g_inv: Tensor,
    phi: Tensor,
    xi: Tensor,
    eta: Tensor,
}

fn shape_err(field: &str, msg: impl Into<String>) -> ModelError {
    ModelError::Shape { field: field.to_string(), msg: msg.into() }
}

fn check_matrix(field: &str, m: &[Vec<Rational>], dim: usize) -> Result<(), ModelError> {
    if m.len() != dim {
        return Err(shape_err(field, format!("expected {dim} rows, got {}", m.len())));
    }
    for (r, row) in m.iter().enumerate() {
        if row.len() != dim {
            return Err(shape_err(&format!("{field}[{}]", r + 1), format!("expected {dim} entries, got {}", row.len())));
        }
    }
    Ok(())
}

/// Gauss-Jordan inverse over the rationals.
pub fn invert_matrix(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut inv: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                let (x, y) = (&a[col][j] * &factor, &inv[col][j] * &factor);
                a[r][j] -= x;
                inv[r][j] -= y;
            }
        }
    }
    Some(inv)
}

/// Coefficients of `det(λI - A)`, highest degree first (Faddeev-LeVerrier).
pub fn characteristic_polynomial(a: &[Vec<Rational>]) -> Vec<Rational> {
    let n = a.len();
    let identity = |i: usize, j: usize| if i == j { Rational::one() } else { Rational::zero() };
    let mul = |x: &[Vec<Rational>], y: &[Vec<Rational>]| -> Vec<Vec<Rational>> {
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| &x[i][k] * &y[k][j]).sum()).collect()).collect()
    };
    let trace = |x: &[Vec<Rational>]| -> Rational { (0..n).map(|i| x[i][i].clone()).sum() };
    let mut coeffs = vec![Rational::one()];
    let mut mk: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| identity(i, j)).collect()).collect();
    for k in 1..=n {
        let amk = mul(a, &mk);
        let c = -trace(&amk) / int(k as i64);
        coeffs.push(c.clone());
        mk = (0..n).map(|i| (0..n).map(|j| &amk[i][j] + &(&c * &identity(i, j))).collect()).collect();
    }
    coeffs
}

fn sign_changes(seq: impl Iterator<Item = Rational>) -> usize {
    let signs: Vec<bool> = seq.filter(|c| !c.is_zero()).map(|c| c.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// `(negative, positive, zero)` eigenvalue counts of a symmetric rational
/// matrix. All roots of its characteristic polynomial are real, so Descartes'
/// rule of signs gives exact counts.
pub fn metric_signature(m: &[Vec<Rational>]) -> (usize, usize, usize) {
    let p = characteristic_polynomial(m);
    let n = m.len();
    let zero = p.iter().rev().take_while(|c| c.is_zero()).count();
    let pos = sign_changes(p.iter().cloned());
    // p(-λ): coefficient of λ^d picks up (-1)^d; p[i] multiplies λ^(n-i).
    let neg = sign_changes(p.iter().enumerate().map(|(i, c)| if (n - i) % 2 == 1 { -c.clone() } else { c.clone() }));
    (neg, pos, zero)
}

impl AlgebraModel {
    pub fn new(
        params: ParamSet,
        brackets: Tensor,
        metric: Vec<Vec<Rational>>,
        phi: Vec<Vec<Rational>>,
        xi: Vec<Rational>,
        eta: Vec<Rational>,
    ) -> Result<Self, ModelError> {
        let dim = metric.len();
        if dim < 3 || dim.is_multiple_of(2) {
            return Err(ModelError::Dimension(dim));
        }
        check_matrix("metric", &metric, dim)?;
        check_matrix("phi", &phi, dim)?;
        if xi.len() != dim {
            return Err(shape_err("xi", format!("expected {dim} entries, got {}", xi.len())));
        }
        if eta.len() != dim {
            return Err(shape_err("eta", format!("expected {dim} entries, got {}", eta.len())));
        }
        if brackets.dim() != dim || brackets.slots() != [Co, Co, Up] {
            return Err(shape_err("brackets", "expected c^k_ij with slots (covariant, covariant, contravariant)"));
        }
        if brackets.params() != &params {
            return Err(ModelError::ParamMismatch);
        }
        for i in 0..dim {
            for j in i + 1..dim {
                if metric[i][j] != metric[j][i] {
                    return Err(ModelError::AsymmetricMetric { i: i + 1, j: j + 1 });
                }
            }
        }
        let inverse = invert_matrix(&metric).ok_or(ModelError::SingularMetric)?;
        let g = Tensor::from_rationals(&params, dim, &[Co, Co], |i| metric[i[0]][i[1]].clone());
        let g_inv = Tensor::from_rationals(&params, dim, &[Up, Up], |i| inverse[i[0]][i[1]].clone());
        let phi = Tensor::from_rationals(&params, dim, &[Up, Co], |i| phi[i[0]][i[1]].clone());
        let xi = Tensor::from_rationals(&params, dim, &[Up], |i| xi[i[0]].clone());
        let eta = Tensor::from_rationals(&params, dim, &[Co], |i| eta[i[0]].clone());
        Ok(AlgebraModel { n: (dim - 1) / 2, params, brackets, metric, g, g_inv, phi, xi, eta })
    }

    /// The structure `φe_i = e_{i+n}`, `φe_{i+n} = -e_i`, `ξ = e_{2n+1}`,
    /// `g = diag(1,..,1,-1,..,-1,1)` with the given brackets.
    pub fn with_standard_structure(n: usize, brackets: Tensor) -> Result<Self, ModelError> {
        let dim = 2 * n + 1;
        let zero = || Rational::zero();
        let mut metric = vec![vec![zero(); dim]; dim];
        let mut phi = vec![vec![zero(); dim]; dim];
        for i in 0..n {
            metric[i][i] = int(1);
            metric[i + n][i + n] = int(-1);
            phi[i + n][i] = int(1);
            phi[i][i + n] = int(-1);
        }
        metric[dim - 1][dim - 1] = int(1);
        let mut xi = vec![zero(); dim];
        xi[dim - 1] = int(1);
        let eta = xi.clone();
        AlgebraModel::new(brackets.params().clone(), brackets, metric, phi, xi, eta)
    }

    pub fn dim(&self) -> usize {
        2 * self.n + 1
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    /// `c^k_ij` at index `(i, j, k)`.
    pub fn brackets(&self) -> &Tensor {
        &self.brackets
    }

    pub fn metric_entries(&self) -> &[Vec<Rational>] {
        &self.metric
    }

    pub fn metric(&self) -> &Tensor {
        &self.g
    }

    pub fn metric_inverse(&self) -> &Tensor {
        &self.g_inv
    }

    /// `φ^a_b` at index `(a, b)`: column `b` is `φ(e_b)`.
    pub fn phi(&self) -> &Tensor {
        &self.phi
    }

    pub fn xi(&self) -> &Tensor {
        &self.xi
    }

    pub fn eta(&self) -> &Tensor {
        &self.eta
    }

    pub fn phi_squared(&self) -> Tensor {
        compose(&self.phi, &self.phi)
    }

    pub fn zero(&self) -> PolyScalar {
        PolyScalar::zero(&self.params)
    }

    pub fn constant(&self, value: Rational) -> PolyScalar {
        PolyScalar::constant(&self.params, value)
    }

    /// Rational entries of `(φ, ξ, η)`.
    pub fn structure_entries(&self) -> (Vec<Vec<Rational>>, Vec<Rational>, Vec<Rational>) {
        let rat = |t: &Tensor, idx: &[usize]| t.get(idx).as_constant().expect("structure tensors are rational");
        let d = self.dim();
        let phi = (0..d).map(|a| (0..d).map(|b| rat(&self.phi, &[a, b])).collect()).collect();
        let xi = (0..d).map(|a| rat(&self.xi, &[a])).collect();
        let eta = (0..d).map(|a| rat(&self.eta, &[a])).collect();
        (phi, xi, eta)
    }

    fn rebuild(&self, params: ParamSet, brackets: Tensor) -> Result<Self, ModelError> {
        let (phi, xi, eta) = self.structure_entries();
        AlgebraModel::new(params, brackets, self.metric.clone(), phi, xi, eta)
    }

    /// Sets `c^k_ij = value` and `c^k_ji = -value`.
    pub fn with_bracket(&self, i: usize, j: usize, k: usize, value: PolyScalar) -> Self {
        let mut c = self.brackets.clone();
        c.set(&[j, i, k], -&value);
        c.set(&[i, j, k], value);
        AlgebraModel { brackets: c, ..self.clone() }
    }

    /// Replaces the metric (the rest of the structure is kept).
    pub fn with_metric(&self, metric: Vec<Vec<Rational>>) -> Result<Self, ModelError> {
        let (phi, xi, eta) = self.structure_entries();
        AlgebraModel::new(self.params.clone(), self.brackets.clone(), metric, phi, xi, eta)
    }

    /// Substitutes rational values for some parameters; they leave the parameter set.
    pub fn bind(&self, bindings: &BTreeMap<String, Rational>) -> Result<Self> {
        if let Some(unknown) = bindings.keys().find(|k| self.params.index_of(k).is_none()) {
            return Err(ScalarError::UnknownParameter { name: unknown.clone(), pos: 0 }.into());
        }
        let target = self.params.without(bindings.keys().map(String::as_str));
        let brackets = self.brackets.try_map(&target, |p| p.bind(bindings, &target))?;
        Ok(self.rebuild(target, brackets)?)
    }

    /// Renames parameters; names not in `renames` are kept.
    pub fn relabel(&self, renames: &BTreeMap<String, String>) -> Result<Self> {
        let image = |n: &str| renames.get(n).cloned().unwrap_or_else(|| n.to_string());
        let target = ParamSet::new(self.params.names().iter().map(|n| image(n)))?;
        if target.len() != self.params.len() {
            return Err(ScalarError::InvalidParamName("renaming merges two parameters".into()).into());
        }
        let brackets = self.brackets.try_map(&target, |p| p.rewrite(&target, |n| ParamImage::Param(image(n))))?;
        Ok(self.rebuild(target, brackets)?)
    }
}

/// Composition `a ∘ b` of two (1,1)-tensors.
pub fn compose(a: &Tensor, b: &Tensor) -> Tensor {
    let d = a.dim();
    Tensor::from_fn(a.params(), d, &[Up, Co], |i| {
        let mut acc = PolyScalar::zero(a.params());
        for m in 0..d {
            acc += &(a.get(&[i[0], m]) * b.get(&[m, i[1]]));
        }
        acc
    })
}

/// An affine connection by its frame coefficients: `∇_{e_i} e_j = Σ Γ^k_ij e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    gamma: Tensor,
}

impl Connection {
    pub fn new(gamma: Tensor) -> Self {
        assert_eq!(gamma.slots(), &[Co, Co, Up], "connection coefficients are indexed (i, j, k)");
        Connection { gamma }
    }

    /// `Γ^k_ij` at index `(i, j, k)`.
    pub fn gamma(&self) -> &Tensor {
        &self.gamma
    }

    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> &PolyScalar {
        self.gamma.get(&[i, j, k])
    }

    /// `∇t` for a tensor field with constant frame components. The result gains
    /// a leading covariant slot holding the differentiation direction.
    pub fn covariant_derivative(&self, t: &Tensor) -> Tensor {
        let d = t.dim();
        let mut slots = vec![Co];
        slots.extend_from_slice(t.slots());
        let mut src = vec![0; t.rank()];
        Tensor::from_fn(t.params(), d, &slots, |idx| {
            let dir = idx[0];
            let comp = &idx[1..];
            let mut acc = PolyScalar::zero(t.params());
            for (s, kind) in t.slots().iter().enumerate() {
                src.copy_from_slice(comp);
                for m in 0..d {
                    src[s] = m;
                    let v = t.get(&src);
                    if v.is_zero() {
                        continue;
                    }
                    match kind {
                        Up => acc += &(self.coefficient(dir, m, comp[s]) * v),
                        Co => acc -= &(self.coefficient(dir, comp[s], m) * v),
                    }
                }
            }
            acc
        })
    }
}

fn bool_check(name: &str, dim: usize, rank: usize, residual: impl FnMut(&[usize]) -> PolyScalar) -> Check {
    identity_check(name, dim, rank, residual)
}

/// Checks the almost contact B-metric axioms plus the derived duality
/// `η = g(·, ξ)`, bracket antisymmetry and the metric signature `(n, n+1)`.
pub fn validate_structure(m: &AlgebraModel) -> Report {
    let d = m.dim();
    let (phi, xi, eta, g) = (m.phi(), m.xi(), m.eta(), m.metric());
    let mut r = Report::new("structure");
    let delta = |a: usize, b: usize| m.constant(int((a == b) as i64));

    r.push(bool_check("phi-xi-vanishes", d, 1, |i| {
        (0..d).fold(m.zero(), |acc, b| &acc + &(phi.get(&[i[0], b]) * xi.get(&[b])))
    }));
    let phi2 = m.phi_squared();
    r.push(bool_check("phi-squared", d, 2, |i| {
        // φ² + Id - η⊗ξ
        &(phi2.get(i) + &delta(i[0], i[1])) - &(xi.get(&[i[0]]) * eta.get(&[i[1]]))
    }));
    r.push(bool_check("eta-phi-vanishes", d, 1, |i| {
        (0..d).fold(m.zero(), |acc, a| &acc + &(eta.get(&[a]) * phi.get(&[a, i[0]])))
    }));
    let eta_xi = (0..d).fold(m.zero(), |acc, a| &acc + &(eta.get(&[a]) * xi.get(&[a])));
    r.push(Check::from_bool("eta-xi-unit", eta_xi == m.constant(int(1)), format!("η(ξ) = {eta_xi}")));
    r.push(bool_check("metric-compatibility", d, 2, |i| {
        let mut lhs = m.zero();
        for a in 0..d {
            for b in 0..d {
                lhs += &(&(phi.get(&[a, i[0]]) * phi.get(&[b, i[1]])) * g.get(&[a, b]));
            }
        }
        &(&lhs + g.get(i)) - &(eta.get(&[i[0]]) * eta.get(&[i[1]]))
    }));
    r.push(bool_check("eta-metric-dual", d, 1, |i| {
        (0..d).fold(-eta.get(i), |acc, j| &acc + &(g.get(&[i[0], j]) * xi.get(&[j])))
    }));
    let c = m.brackets();
    r.push(bool_check("brackets-antisymmetric", d, 3, |i| c.get(i) + c.get(&[i[1], i[0], i[2]])));
    let (neg, pos, zero) = metric_signature(m.metric_entries());
    r.push(Check::from_bool(
        "metric-signature",
        neg == m.n() && pos == m.n() + 1 && zero == 0,
        format!("signature has {neg} negative, {pos} positive, {zero} zero directions; expected ({}, {})", m.n(), m.n() + 1),
    ));
    r
}

/// `𝔖 [[e_i, e_j], e_k] = 0` for every triple.
pub fn jacobi_check(m: &AlgebraModel) -> Report {
    let d = m.dim();
    let c = m.brackets();
    let mut r = Report::new("jacobi");
    r.push(identity_check("jacobi-identity", d, 4, |idx| {
        let (i, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
        let mut acc = m.zero();
        for s in 0..d {
            acc += &(c.get(&[i, j, s]) * c.get(&[s, k, l]));
            acc += &(c.get(&[j, k, s]) * c.get(&[s, i, l]));
            acc += &(c.get(&[k, i, s]) * c.get(&[s, j, l]));
        }
        acc
    }));
    r
}

/// Levi-Civita connection of left-invariant `g` from the Koszul formula
/// `2g(∇_x y, z) = g([x,y],z) - g([y,z],x) + g([z,x],y)`.
pub fn levi_civita(m: &AlgebraModel) -> Connection {
    let d = m.dim();
    let lowered = m.brackets().lower(2, m.metric()).expect("bracket tensor shape is fixed");
    let half = crate::scalar::rational(1, 2);
    let koszul = Tensor::from_fn(m.params(), d, &[Co, Co, Co], |i| {
        let (x, y, z) = (i[0], i[1], i[2]);
        (&(lowered.get(&[x, y, z]) - lowered.get(&[y, z, x])) + lowered.get(&[z, x, y])).scale(&half)
    });
    Connection::new(koszul.raise(2, m.metric_inverse()).expect("shape fixed"))
}

/// The endomorphism `x ↦ ∇_x ξ`: component `(k, i)` is `(∇_{e_i} ξ)^k`.
pub fn nabla_xi(m: &AlgebraModel, conn: &Connection) -> Tensor {
    conn.covariant_derivative(m.xi()).permuted(&[1, 0]).expect("rank 2")
}

/// `(∇_x η) y` at index `(x, y)`.
pub fn nabla_eta(m: &AlgebraModel, conn: &Connection) -> Tensor {
    conn.covariant_derivative(m.eta())
}

/// `F(x, y, z) = g((∇_x φ) y, z)`.
pub fn fundamental_f(m: &AlgebraModel, conn: &Connection) -> Tensor {
    // ∇φ is indexed (x, k, y) with k contravariant.
    let dphi = conn.covariant_derivative(m.phi());
    dphi.lower(1, m.metric()).and_then(|t| t.permuted(&[0, 2, 1])).expect("rank 3")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeeForms {
    pub theta: Tensor,
    pub theta_star: Tensor,
    pub omega: Tensor,
}

/// `θ(z) = g^ij F(e_i,e_j,z)`, `θ*(z) = g^ij F(e_i,φe_j,z)`, `ω(z) = F(ξ,ξ,z)`.
pub fn lee_forms(m: &AlgebraModel, f: &Tensor) -> Result<LeeForms> {
    let theta = f.contract(0, 1, m.metric_inverse())?;
    let theta_star = f.apply_phi_slot(1, m.phi())?.contract(0, 1, m.metric_inverse())?;
    let omega = f.insert_vector(0, m.xi())?.insert_vector(0, m.xi())?;
    Ok(LeeForms { theta, theta_star, omega })
}

/// `dη(x, y) = (∇_x η) y - (∇_y η) x`.
pub fn d_eta(m: &AlgebraModel, conn: &Connection) -> Tensor {
    let dn = nabla_eta(m, conn);
    &dn - &dn.permuted(&[1, 0]).expect("rank 2")
}

/// `R(x,y,z,w) = g(R(x,y)z, w)` with `R(x,y) = [∇_x, ∇_y] - ∇_[x,y]`.
pub fn riemann(m: &AlgebraModel, conn: &Connection) -> Tensor {
    let d = m.dim();
    let c = m.brackets();
    let gm = |a: usize, b: usize, k: usize| conn.coefficient(a, b, k);
    let up = Tensor::from_fn(m.params(), d, &[Co, Co, Co, Up], |idx| {
        let (i, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
        let mut acc = m.zero();
        for s in 0..d {
            let (a, b) = (gm(j, k, s), gm(i, s, l));
            if !a.is_zero() && !b.is_zero() {
                acc += &(a * b);
            }
            let (a, b) = (gm(i, k, s), gm(j, s, l));
            if !a.is_zero() && !b.is_zero() {
                acc -= &(a * b);
            }
            let (a, b) = (c.get(&[i, j, s]), gm(s, k, l));
            if !a.is_zero() && !b.is_zero() {
                acc -= &(a * b);
            }
        }
        acc
    });
    up.lower(3, m.metric()).expect("rank 4")
}

/// Traces of a (0,4) curvature tensor: `ρ(x,y) = g^kl R(e_k,x,y,e_l)`,
/// `τ = g^ij ρ(e_i,e_j)` and `τ* = g^ij g^kl R(e_k,e_i,e_j,φe_l)`.
pub fn curvature_traces(m: &AlgebraModel, r: &Tensor) -> Result<(Tensor, PolyScalar, PolyScalar)> {
    let gi = m.metric_inverse();
    let rho = r.contract(0, 3, gi)?;
    let tau = rho.contract(0, 1, gi)?.value().clone();
    let tau_star = r.apply_phi_slot(3, m.phi())?.contract(0, 3, gi)?.contract(0, 1, gi)?.value().clone();
    Ok((rho, tau, tau_star))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarCurvatures {
    pub tau: PolyScalar,
    pub tau_star: PolyScalar,
    pub rho: Tensor,
    pub norm_nabla_xi: PolyScalar,
}

/// Scalar curvatures of `r` together with `‖∇ξ‖² = g^ij g(∇_{e_i}ξ, ∇_{e_j}ξ)`
/// for the Levi-Civita connection `lc`.
pub fn scalar_curvatures(m: &AlgebraModel, lc: &Connection, r: &Tensor) -> Result<ScalarCurvatures> {
    let (rho, tau, tau_star) = curvature_traces(m, r)?;
    Ok(ScalarCurvatures { tau, tau_star, rho, norm_nabla_xi: norm_nabla_xi(m, lc) })
}

pub fn norm_nabla_xi(m: &AlgebraModel, lc: &Connection) -> PolyScalar {
    let d = m.dim();
    let nx = nabla_xi(m, lc);
    let (g, gi) = (m.metric(), m.metric_inverse());
    let mut acc = m.zero();
    for i in 0..d {
        for j in 0..d {
            let w = gi.get(&[i, j]);
            if w.is_zero() {
                continue;
            }
            for a in 0..d {
                for b in 0..d {
                    let gab = g.get(&[a, b]);
                    if gab.is_zero() {
                        continue;
                    }
                    acc += &(&(&(w * gab) * nx.get(&[a, i])) * nx.get(&[b, j]));
                }
            }
        }
    }
    acc
}

/// Metricity and torsion-freeness of a claimed Levi-Civita connection.
pub fn levi_civita_properties(m: &AlgebraModel, lc: &Connection) -> Report {
    let d = m.dim();
    let mut r = Report::new("levi-civita");
    r.push(crate::report::tensor_zero_check("metric-parallel", &lc.covariant_derivative(m.metric())));
    let c = m.brackets();
    r.push(identity_check("torsion-free", d, 3, |i| {
        &(lc.coefficient(i[0], i[1], i[2]) - lc.coefficient(i[1], i[0], i[2])) - c.get(i)
    }));
    let nx = nabla_xi(m, lc);
    let eta_nx = nx.lower(0, m.metric()).and_then(|t| t.insert_vector(0, m.xi()));
    match eta_nx {
        Ok(t) => r.push(crate::report::tensor_zero_check("eta-nabla-xi-vanishes", &t)),
        Err(e) => r.push(Check::fail("eta-nabla-xi-vanishes", e.to_string())),
    }
    r
}

/// The curvature symmetries `R(x,y,z,w) = -R(y,x,z,w) = -R(x,y,w,z)` and `𝔖 R(x,y)z = 0`.
pub fn curvature_symmetries(r: &Tensor) -> Report {
    let mut rep = Report::new("curvature-symmetries");
    let swap12 = r.permuted(&[1, 0, 2, 3]).expect("rank 4");
    let swap34 = r.permuted(&[0, 1, 3, 2]).expect("rank 4");
    rep.push(tensors_equal_check("antisymmetric-first-pair", r, &-&swap12));
    rep.push(tensors_equal_check("antisymmetric-last-pair", r, &-&swap34));
    match r.cyclic_sum() {
        Ok(s) => rep.push(crate::report::tensor_zero_check("first-bianchi", &s)),
        Err(e) => rep.push(Check::fail("first-bianchi", e.to_string())),
    }
    rep
}
