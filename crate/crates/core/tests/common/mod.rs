//! Plain-array reference computations over exact rationals, written without
//! the crate's tensor or polynomial types.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    q(n, 1)
}

/// A left-invariant structure in a frame with diagonal metric.
pub struct Frame {
    pub d: usize,
    /// `[e_i, e_j] = Σ c[i][j][k] e_k`
    pub c: Vec<Vec<Vec<Q>>>,
    pub g: Vec<Q>,
    /// `φ e_b = Σ phi[a][b] e_a`
    pub phi: Vec<Vec<Q>>,
    pub xi: usize,
}

/// `Γ[i][j][k]`: `∇_{e_i} e_j = Σ_k Γ[i][j][k] e_k`.
pub type Coefficients = Vec<Vec<Vec<Q>>>;

fn zeros3(d: usize) -> Vec<Vec<Vec<Q>>> {
    vec![vec![vec![Q::zero(); d]; d]; d]
}

impl Frame {
    /// The five-dimensional family, values `[l1, l2, l3, l4, m1, m3]`.
    pub fn example(v: &[Q; 6]) -> Frame {
        let [l1, l2, l3, l4, m1, m3] = v.clone();
        let rows = [
            [l1.clone(), l2.clone(), l3.clone(), l4.clone()],
            [m1.clone(), -l1.clone(), m3.clone(), -l3.clone()],
            [-l3.clone(), -l4.clone(), l1.clone(), l2.clone()],
            [-m3.clone(), l3.clone(), m1.clone(), -l1.clone()],
        ];
        let d = 5;
        let mut c = zeros3(d);
        for (i, row) in rows.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                c[i][4][k] = v.clone();
                c[4][i][k] = -v.clone();
            }
        }
        let mut phi = vec![vec![Q::zero(); d]; d];
        phi[2][0] = qi(1);
        phi[3][1] = qi(1);
        phi[0][2] = qi(-1);
        phi[1][3] = qi(-1);
        Frame { d, c, g: vec![qi(1), qi(1), qi(-1), qi(-1), qi(1)], phi, xi: 4 }
    }

    pub fn basis(&self, i: usize) -> Vec<Q> {
        (0..self.d).map(|k| if k == i { Q::one() } else { Q::zero() }).collect()
    }

    pub fn inner(&self, u: &[Q], v: &[Q]) -> Q {
        (0..self.d).fold(Q::zero(), |acc, a| acc + &self.g[a] * &u[a] * &v[a])
    }

    pub fn eta(&self, v: &[Q]) -> Q {
        v[self.xi].clone() * &self.g[self.xi]
    }

    pub fn phi_of(&self, v: &[Q]) -> Vec<Q> {
        (0..self.d).map(|a| (0..self.d).fold(Q::zero(), |acc, b| acc + &self.phi[a][b] * &v[b])).collect()
    }

    pub fn bracket(&self, u: &[Q], v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.d];
        for i in 0..self.d {
            for j in 0..self.d {
                let w = &u[i] * &v[j];
                if w.is_zero() {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o += &w * &self.c[i][j][k];
                }
            }
        }
        out
    }

    /// Koszul formula with a diagonal metric.
    pub fn levi_civita(&self) -> Coefficients {
        let d = self.d;
        let mut gamma = zeros3(d);
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let low = |a: usize, b: usize, c: usize| &self.c[a][b][c] * &self.g[c];
                    let twice = low(i, j, k) - low(j, k, i) + low(k, i, j);
                    gamma[i][j][k] = twice / (qi(2) * &self.g[k]);
                }
            }
        }
        gamma
    }

    pub fn apply(&self, conn: &Coefficients, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.d];
        for i in 0..self.d {
            for j in 0..self.d {
                let w = &x[i] * &y[j];
                if w.is_zero() {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o += &w * &conn[i][j][k];
                }
            }
        }
        out
    }

    /// `∇'_x y = ∇_x y + ½{(∇_x φ)φy + (∇_x η)y ξ} - η(y)∇_x ξ`.
    pub fn phib(&self, lc: &Coefficients) -> Coefficients {
        let d = self.d;
        let xi = self.basis(self.xi);
        let mut out = zeros3(d);
        for i in 0..d {
            let x = self.basis(i);
            for j in 0..d {
                let y = self.basis(j);
                let phy = self.phi_of(&y);
                // (∇_x φ)(φy) = ∇_x(φφy) - φ∇_x(φy)
                let dphi = {
                    let a = self.apply(lc, &x, &self.phi_of(&phy));
                    let b = self.phi_of(&self.apply(lc, &x, &phy));
                    sub(&a, &b)
                };
                // (∇_x η) y = -η(∇_x y) for constant η
                let deta = -self.eta(&self.apply(lc, &x, &y));
                let nabla_x_xi = self.apply(lc, &x, &xi);
                let base = self.apply(lc, &x, &y);
                for k in 0..d {
                    out[i][j][k] = &base[k] + (&dphi[k] + &deta * &xi[k]) / qi(2) - self.eta(&y) * &nabla_x_xi[k];
                }
            }
        }
        out
    }

    /// `T(x,y,z) = g(∇_x y - ∇_y x - [x,y], z)`.
    pub fn torsion(&self, conn: &Coefficients) -> Vec<Vec<Vec<Q>>> {
        let d = self.d;
        let mut t = zeros3(d);
        for i in 0..d {
            for j in 0..d {
                let (x, y) = (self.basis(i), self.basis(j));
                let v = sub(&sub(&self.apply(conn, &x, &y), &self.apply(conn, &y, &x)), &self.bracket(&x, &y));
                for k in 0..d {
                    t[i][j][k] = self.inner(&v, &self.basis(k));
                }
            }
        }
        t
    }

    /// `R(x,y,z,w) = g(∇_x∇_y z - ∇_y∇_x z - ∇_[x,y] z, w)`.
    pub fn curvature(&self, conn: &Coefficients) -> Vec<Vec<Vec<Vec<Q>>>> {
        let d = self.d;
        let mut r = vec![zeros3(d); d];
        for i in 0..d {
            for j in 0..d {
                let (x, y) = (self.basis(i), self.basis(j));
                let xy = self.bracket(&x, &y);
                for k in 0..d {
                    let z = self.basis(k);
                    let a = self.apply(conn, &x, &self.apply(conn, &y, &z));
                    let b = self.apply(conn, &y, &self.apply(conn, &x, &z));
                    let c = self.apply(conn, &xy, &z);
                    let v = sub(&sub(&a, &b), &c);
                    for l in 0..d {
                        r[i][j][k][l] = &v[l] * &self.g[l];
                    }
                }
            }
        }
        r
    }

    /// `(∇_i T)(j,k,l)` for constant components.
    pub fn derivative3(&self, conn: &Coefficients, t: &[Vec<Vec<Q>>]) -> Vec<Vec<Vec<Vec<Q>>>> {
        let d = self.d;
        let mut out = vec![zeros3(d); d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let mut acc = Q::zero();
                        for m in 0..d {
                            acc -= &conn[i][j][m] * &t[m][k][l];
                            acc -= &conn[i][k][m] * &t[j][m][l];
                            acc -= &conn[i][l][m] * &t[j][k][m];
                        }
                        out[i][j][k][l] = acc;
                    }
                }
            }
        }
        out
    }

    pub fn scalar_data(&self) -> ScalarData {
        let d = self.d;
        let lc = self.levi_civita();
        let r = self.curvature(&lc);
        let rho = |y: usize, z: usize| (0..d).fold(Q::zero(), |acc, k| acc + &r[k][y][z][k] / &self.g[k]);
        let tau = (0..d).fold(Q::zero(), |acc, i| acc + rho(i, i) / &self.g[i]);
        let xi = self.basis(self.xi);
        let norm = (0..d).fold(Q::zero(), |acc, i| {
            let v = self.apply(&lc, &self.basis(i), &xi);
            acc + self.inner(&v, &v) / &self.g[i]
        });
        ScalarData { tau, rho_xi_xi: rho(self.xi, self.xi), norm_nabla_xi: norm }
    }
}

pub struct ScalarData {
    pub tau: Q,
    pub rho_xi_xi: Q,
    pub norm_nabla_xi: Q,
}

pub fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `τ = ρ(ξ,ξ)` on the example, as a closed form.
pub fn tau_closed_form(v: &[Q; 6]) -> Q {
    let [l1, l2, l3, l4, m1, m3] = v;
    -qi(4) * l1 * l1 - l2 * l2 - qi(2) * l2 * m1 + qi(4) * l3 * l3 + l4 * l4 + qi(2) * l4 * m3 - m1 * m1 + m3 * m3
}

pub const PARAMS: [&str; 6] = ["l1", "l2", "l3", "l4", "m1", "m3"];
