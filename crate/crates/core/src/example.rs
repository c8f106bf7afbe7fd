//! The five-dimensional F6 Lie algebra family with parameters l1..l4, m1, m3:
//!
//! ```text
//! [e1,ξ] =  l1 e1 + l2 e2 + l3 e3 + l4 e4
//! [e2,ξ] =  m1 e1 - l1 e2 + m3 e3 - l3 e4
//! [e3,ξ] = -l3 e1 - l4 e2 + l1 e3 + l2 e4
//! [e4,ξ] = -m3 e1 + l3 e2 + m1 e3 - l1 e4
//! ```
//!
//! with `φe1 = e3, φe2 = e4, ξ = e5` and `g = diag(1, 1, -1, -1, 1)`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{classify, SubLabel};
use crate::curvature::{r_prime, r_prime_u_identity};
use crate::error::{Error, Result};
use crate::model::{levi_civita, nabla_eta, nabla_xi, riemann, AlgebraModel};
use crate::phib::{phib, phib_u_form, potential_q, torsion, u1_torsion_properties, u3_torsion_properties};
use crate::report::{tensor_zero_check, tensors_equal_check, Check, Report};
use crate::scalar::{rational, ParamSet, PolyScalar, Rational, ScalarError};
use crate::tensor::{Slot, Tensor};

use Slot::{Contravariant as Up, Covariant as Co};

pub const PARAM_NAMES: [&str; 6] = ["l1", "l2", "l3", "l4", "m1", "m3"];

/// Names of the eight claims checked by [`verify_paper_claims`], in report order.
pub const CLAIMS: [&str; 8] = [
    "class-f6",
    "levi-civita-nabla-xi",
    "phib-components",
    "torsion-components",
    "phib-flat",
    "parallel-torsion",
    "scalar-curvature-identity",
    "torsion-identity-suites",
];

/// Each parameter is either symbolic (`None`) or bound to a rational.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExampleParams {
    pub l1: Option<Rational>,
    pub l2: Option<Rational>,
    pub l3: Option<Rational>,
    pub l4: Option<Rational>,
    pub m1: Option<Rational>,
    pub m3: Option<Rational>,
}

impl ExampleParams {
    pub fn symbolic() -> Self {
        Self::default()
    }

    pub fn from_bindings(bindings: &BTreeMap<String, Rational>) -> Result<Self> {
        let mut p = Self::default();
        for (name, value) in bindings {
            *p.slot_mut(name).ok_or_else(|| ScalarError::UnknownParameter { name: name.clone(), pos: 0 })? =
                Some(value.clone());
        }
        Ok(p)
    }

    /// Every parameter bound to a rational `a/b` with `|a| ≤ 9`, `1 ≤ b ≤ 5`.
    pub fn random(rng: &mut impl Rng) -> Self {
        let mut p = Self::default();
        for name in PARAM_NAMES {
            let v = rational(rng.random_range(-9..=9), rng.random_range(1..=5));
            *p.slot_mut(name).expect("known name") = Some(v);
        }
        p
    }

    fn slot_mut(&mut self, name: &str) -> Option<&mut Option<Rational>> {
        Some(match name {
            "l1" => &mut self.l1,
            "l2" => &mut self.l2,
            "l3" => &mut self.l3,
            "l4" => &mut self.l4,
            "m1" => &mut self.m1,
            "m3" => &mut self.m3,
            _ => return None,
        })
    }

    pub fn bindings(&self) -> BTreeMap<String, Rational> {
        let values = [&self.l1, &self.l2, &self.l3, &self.l4, &self.m1, &self.m3];
        PARAM_NAMES
            .iter()
            .zip(values)
            .filter_map(|(n, v)| v.as_ref().map(|v| (n.to_string(), v.clone())))
            .collect()
    }
}

/// The six parameters as polynomials over the unbound ones.
struct Coefficients {
    params: ParamSet,
    l1: PolyScalar,
    l2: PolyScalar,
    l3: PolyScalar,
    l4: PolyScalar,
    m1: PolyScalar,
    m3: PolyScalar,
}

impl Coefficients {
    fn new(p: &ExampleParams) -> Self {
        let bindings = p.bindings();
        let params = ParamSet::new(PARAM_NAMES.iter().filter(|n| !bindings.contains_key(**n)).copied())
            .expect("valid names");
        let get = |name: &str| match bindings.get(name) {
            Some(v) => PolyScalar::constant(&params, v.clone()),
            None => PolyScalar::var(&params, name).expect("unbound name is a parameter"),
        };
        Coefficients {
            l1: get("l1"),
            l2: get("l2"),
            l3: get("l3"),
            l4: get("l4"),
            m1: get("m1"),
            m3: get("m3"),
            params,
        }
    }

    fn half(&self, a: &PolyScalar, b: &PolyScalar, sign: i64) -> PolyScalar {
        let b = if sign > 0 { b.clone() } else { -b };
        (a + &b).scale(&rational(1, 2))
    }
}

/// Builds the model; bound parameters are substituted, the rest stay symbolic.
pub fn build_example(p: &ExampleParams) -> AlgebraModel {
    let c = Coefficients::new(p);
    let rows: [[PolyScalar; 4]; 4] = [
        [c.l1.clone(), c.l2.clone(), c.l3.clone(), c.l4.clone()],
        [c.m1.clone(), -&c.l1, c.m3.clone(), -&c.l3],
        [-&c.l3, -&c.l4, c.l1.clone(), c.l2.clone()],
        [-&c.m3, c.l3.clone(), c.m1.clone(), -&c.l1],
    ];
    let mut brackets = Tensor::zeros(&c.params, 5, &[Co, Co, Up]);
    for (i, row) in rows.iter().enumerate() {
        for (k, v) in row.iter().enumerate() {
            brackets.set(&[i, 4, k], v.clone());
            brackets.set(&[4, i, k], -v);
        }
    }
    AlgebraModel::with_standard_structure(2, brackets).expect("the example structure is well formed")
}

fn table(params: &ParamSet, slots: &[Slot], entries: Vec<(Vec<usize>, PolyScalar)>) -> Tensor {
    let mut t = Tensor::zeros(params, 5, slots);
    for (idx, v) in entries {
        t.set(&idx, v);
    }
    t
}

/// `∇_{e_i} ξ` as the endomorphism with component `(k, i)`.
pub fn expected_nabla_xi(p: &ExampleParams) -> Tensor {
    let c = Coefficients::new(p);
    let s = c.half(&c.l2, &c.m1, 1);
    let t = c.half(&c.l4, &c.m3, 1);
    let columns = [
        [c.l1.clone(), s.clone(), c.l3.clone(), t.clone()],
        [s.clone(), -&c.l1, t.clone(), -&c.l3],
        [-&c.l3, -&t, c.l1.clone(), s.clone()],
        [-&t, c.l3.clone(), s.clone(), -&c.l1],
    ];
    let mut entries = Vec::new();
    for (i, col) in columns.into_iter().enumerate() {
        for (k, v) in col.into_iter().enumerate() {
            entries.push((vec![k, i], v));
        }
    }
    table(&c.params, &[Up, Co], entries)
}

/// Coefficients `Γ'^k_ij` of the φB-connection: only `∇'_ξ e_i` is nonzero.
pub fn expected_phib(p: &ExampleParams) -> Tensor {
    let c = Coefficients::new(p);
    let a = c.half(&c.l2, &c.m1, -1);
    let b = c.half(&c.l4, &c.m3, -1);
    let images = [
        [PolyScalar::zero(&c.params), -&a, PolyScalar::zero(&c.params), -&b],
        [a.clone(), PolyScalar::zero(&c.params), b.clone(), PolyScalar::zero(&c.params)],
        [PolyScalar::zero(&c.params), b.clone(), PolyScalar::zero(&c.params), -&a],
        [-&b, PolyScalar::zero(&c.params), a.clone(), PolyScalar::zero(&c.params)],
    ];
    let mut entries = Vec::new();
    for (i, img) in images.into_iter().enumerate() {
        for (k, v) in img.into_iter().enumerate() {
            entries.push((vec![4, i, k], v));
        }
    }
    table(&c.params, &[Co, Co, Up], entries)
}

/// Torsion `T(x,y,z)`: the listed `T_5ij` and their partners `T_i5j = -T_5ij`.
pub fn expected_torsion(p: &ExampleParams) -> Tensor {
    let c = Coefficients::new(p);
    let a = c.l1.clone();
    let b = c.half(&c.l2, &c.m1, 1);
    let cc = -&c.l3;
    let d = -&c.half(&c.l4, &c.m3, 1);
    let rows = [
        [a.clone(), b.clone(), cc.clone(), d.clone()],
        [b.clone(), -&a, d.clone(), -&cc],
        [cc.clone(), d.clone(), -&a, -&b],
        [d.clone(), -&cc, -&b, a.clone()],
    ];
    let mut entries = Vec::new();
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            entries.push((vec![i, 4, j], -&v));
            entries.push((vec![4, i, j], v));
        }
    }
    table(&c.params, &[Co, Co, Co], entries)
}

fn suite(name: &str, reports: Vec<Report>) -> Check {
    let parts = reports.into_iter().flat_map(|r| r.checks).collect();
    Check::all_of(name, parts)
}

/// Checks every stated property of the family, one named check per claim
/// (see [`CLAIMS`]), as exact identities in the unbound parameters.
pub fn verify_paper_claims(p: &ExampleParams) -> Result<Report> {
    let m = build_example(p);
    let lc = levi_civita(&m);
    let np = phib(&m, &lc);
    let class = classify(&m)?;
    let mut rep = Report::new("F6 example");

    rep.push(Check::from_bool(
        CLAIMS[0],
        class.u && class.u1 && class.u2 && class.u3 && class.sub_label == SubLabel::F6,
        format!(
            "u={} u1={} u2={} u3={} sub_label={}",
            class.u, class.u1, class.u2, class.u3, class.sub_label
        ),
    ));

    let nx = nabla_xi(&m, &lc);
    rep.push(tensors_equal_check(CLAIMS[1], &nx, &expected_nabla_xi(p)));

    let u_form = phib_u_form(&m, &lc)?;
    rep.push(Check::all_of(
        CLAIMS[2],
        vec![
            tensors_equal_check("matches-table", np.gamma(), &expected_phib(p)),
            tensors_equal_check("u-form-agrees", u_form.gamma(), np.gamma()),
        ],
    ));

    let ta = torsion(&m, &np)?;
    // T(ξ, e_i, e_j) = (∇_{e_i} η) e_j must hold before the table is compared.
    let vertical = ta.torsion.insert_vector(0, m.xi())?;
    rep.push(Check::all_of(
        CLAIMS[3],
        vec![
            tensors_equal_check("vertical-part-equals-nabla-eta", &vertical, &nabla_eta(&m, &lc)),
            tensors_equal_check("matches-table", &ta.torsion, &expected_torsion(p)),
            tensor_zero_check("t-vanishes", &ta.forms.t),
            tensor_zero_check("t-star-vanishes", &ta.forms.t_star),
            tensor_zero_check("t-hat-vanishes", &ta.forms.t_hat),
        ],
    ));

    let ca = r_prime(&m, &np)?;
    rep.push(tensor_zero_check(CLAIMS[4], &ca.r_prime));
    rep.push(tensor_zero_check(CLAIMS[5], &np.covariant_derivative(&ta.torsion)));

    let r = riemann(&m, &lc);
    let u_curv = r_prime_u_identity(&m, &r, &lc, &ca)?;
    let scalar = u_curv.check("scalar-curvature-identity").cloned().expect("always reported");
    rep.push(Check { name: CLAIMS[6].to_string(), ..scalar });

    let q = potential_q(&m, &lc, &np);
    let class_checks = ["U", "U3:T31"]
        .iter()
        .filter_map(|n| ta.verdict(n).cloned())
        .collect::<Vec<_>>();
    let mut class_rep = Report::new("torsion classes");
    class_rep.checks = class_checks;
    rep.push(suite(
        CLAIMS[7],
        vec![class_rep, u1_torsion_properties(&m, &q, &ta.torsion)?, u3_torsion_properties(&m, &lc, &ta.torsion)?],
    ));

    rep.table("nabla_xi", &nx);
    rep.table("phib", np.gamma());
    rep.table("T", &ta.torsion);
    for v in u_curv.values {
        rep.values.push(v);
    }
    Ok(rep)
}

/// Runs [`verify_paper_claims`] on `count` random full bindings drawn from a
/// ChaCha8 stream seeded with `seed`; one check per instance.
pub fn verify_random_instances(seed: u64, count: usize) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = Report::new(format!("F6 example, {count} random bindings, seed {seed}"));
    for n in 0..count {
        let p = ExampleParams::random(&mut rng);
        let sub = verify_paper_claims(&p)?;
        let bindings: Vec<String> = p.bindings().iter().map(|(k, v)| format!("{k}={v}")).collect();
        let name = format!("instance-{n}");
        rep.push(match sub.failures().next() {
            None => Check::pass(name),
            Some(f) => Check::fail(name, format!("{} fails at {}", f.name, bindings.join(" "))),
        });
    }
    Ok(rep)
}

/// [`build_example`] followed by the structure and Jacobi checks.
pub fn build_checked(p: &ExampleParams) -> Result<AlgebraModel> {
    let m = build_example(p);
    let s = crate::model::validate_structure(&m);
    let j = crate::model::jacobi_check(&m);
    let failure = s.failures().chain(j.failures()).next().cloned();
    match failure {
        None => Ok(m),
        Some(f) => Err(Error::CrossCheck {
            what: format!("example structure ({})", f.name),
            witness: f.witness.unwrap_or_default(),
            difference: f.detail.unwrap_or_default(),
        }),
    }
}
