use std::collections::BTreeMap;

use acbm::classify;
use acbm::example::{build_example, ExampleParams, PARAM_NAMES};
use acbm::manifold_file::ManifoldSpec;
use acbm::model::{fundamental_f, levi_civita, levi_civita_properties, riemann, AlgebraModel};
use acbm::phib::{naturality_report, phib, potential_q, potential_report, torsion};
use acbm::scalar::{rational, ParamSet};
use acbm::tensor::Slot::{Contravariant as Up, Covariant as Co};
use acbm::{parse_manifold, PolyScalar, Rational, Tensor};
use proptest::prelude::*;

fn params() -> ParamSet {
    ParamSet::new(["a", "b", "c"]).unwrap()
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rational(n, d))
}

/// Sums of up to four monomials of degree at most 3 per variable.
fn poly() -> impl Strategy<Value = PolyScalar> {
    prop::collection::vec((small_rational(), 0u32..=3, 0u32..=3, 0u32..=3), 0..=4).prop_map(|terms| {
        let ps = params();
        let var = |n: &str| PolyScalar::var(&ps, n).unwrap();
        terms.into_iter().fold(PolyScalar::zero(&ps), |acc, (c, x, y, z)| {
            let mono = &(&var("a").pow(x) * &var("b").pow(y)) * &var("c").pow(z);
            &acc + &mono.scale(&c)
        })
    })
}

fn bindings() -> impl Strategy<Value = BTreeMap<String, Rational>> {
    (small_rational(), small_rational(), small_rational())
        .prop_map(|(a, b, c)| BTreeMap::from([("a".into(), a), ("b".into(), b), ("c".into(), c)]))
}

fn example_bindings() -> impl Strategy<Value = ExampleParams> {
    prop::collection::vec(small_rational(), 6).prop_map(|v| {
        let b: BTreeMap<String, Rational> = PARAM_NAMES.iter().map(|n| n.to_string()).zip(v).collect();
        ExampleParams::from_bindings(&b).unwrap()
    })
}

/// Either `[e_i, ξ] = A e_i` on an abelian horizontal part, or a central
/// `ξ` with `[e_i, e_j] = b_ij ξ`; both satisfy the Jacobi identity.
fn random_model() -> impl Strategy<Value = AlgebraModel> {
    let derivation = prop::collection::vec(-2i64..=2, 16).prop_map(|a| (true, a));
    let central = prop::collection::vec(-2i64..=2, 16).prop_map(|b| (false, b));
    prop_oneof![derivation, central].prop_map(|(semidirect, entries)| {
        let ps = ParamSet::empty();
        let mut m = AlgebraModel::with_standard_structure(2, Tensor::zeros(&ps, 5, &[Co, Co, Up])).unwrap();
        for i in 0..4 {
            for k in 0..4 {
                let v = entries[4 * i + k];
                if v == 0 {
                    continue;
                }
                let value = PolyScalar::constant(&ps, rational(v, 1));
                m = if semidirect {
                    m.with_bracket(i, 4, k, value)
                } else if i < k {
                    m.with_bracket(i, k, 4, value)
                } else {
                    m
                };
            }
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &PolyScalar::one(&params()), p.clone());
    }

    #[test]
    fn rendering_parses_back(p in poly()) {
        prop_assert_eq!(PolyScalar::parse(&p.to_string(), &params()).unwrap(), p);
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(p in poly(), q in poly(), b in bindings()) {
        let (pv, qv) = (p.substitute(&b).unwrap(), q.substitute(&b).unwrap());
        prop_assert_eq!((&p + &q).substitute(&b).unwrap(), &pv + &qv);
        prop_assert_eq!((&p * &q).substitute(&b).unwrap(), &pv * &qv);
    }

    #[test]
    fn partial_binding_then_substitution_agrees(p in poly(), b in bindings()) {
        let first = BTreeMap::from([("a".to_string(), b["a"].clone())]);
        let target = params().without(["a"]);
        let rest: BTreeMap<String, Rational> = b.iter().filter(|(k, _)| *k != "a").map(|(k, v)| (k.clone(), v.clone())).collect();
        prop_assert_eq!(p.bind(&first, &target).unwrap().substitute(&rest).unwrap(), p.substitute(&b).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn levi_civita_and_phib_properties_on_random_models(m in random_model()) {
        let lc = levi_civita(&m);
        prop_assert!(levi_civita_properties(&m, &lc).all_passed());
        let np = phib(&m, &lc);
        let rep = naturality_report(&m, &np);
        prop_assert!(rep.all_passed(), "{}", rep.render_text());
        let f = fundamental_f(&m, &lc);
        let rep = potential_report(&m, &potential_q(&m, &lc, &np), &f).unwrap();
        prop_assert!(rep.all_passed(), "{}", rep.render_text());
        // the torsion cross-checks raise on disagreement
        prop_assert!(torsion(&m, &np).is_ok());
    }

    #[test]
    fn fundamental_tensor_symmetries(m in random_model()) {
        // F(x,y,z) = F(x,z,y) = F(x,φy,φz) + η(y)F(x,ξ,z) + η(z)F(x,y,ξ)
        let f = fundamental_f(&m, &levi_civita(&m));
        let f_phi = f.apply_phi_slot(1, m.phi()).unwrap().apply_phi_slot(2, m.phi()).unwrap();
        let f_xi_mid = f.insert_vector(1, m.xi()).unwrap();
        let f_xi_last = f.insert_vector(2, m.xi()).unwrap();
        let eta = m.eta();
        for idx in f.indices() {
            let (x, y, z) = (idx[0], idx[1], idx[2]);
            prop_assert_eq!(f.get(&idx), f.get(&[x, z, y]));
            let rhs = &(f_phi.get(&idx) + &(eta.get(&[y]) * f_xi_mid.get(&[x, z]))) + &(eta.get(&[z]) * f_xi_last.get(&[x, y]));
            prop_assert_eq!(f.get(&idx), &rhs);
        }
    }

    #[test]
    fn classification_lattice_is_consistent(m in random_model()) {
        let c = classify(&m).unwrap();
        prop_assert!(c.lattice_consistent(), "{:?}", c);
    }

    #[test]
    fn manifold_description_round_trips(m in random_model()) {
        let spec = ManifoldSpec::from_model(&m);
        let back = parse_manifold(&spec.to_json()).unwrap();
        prop_assert_eq!(back.brackets(), m.brackets());
        prop_assert_eq!(classify(&back).unwrap(), classify(&m).unwrap());
    }

    #[test]
    fn naturality_holds_on_example_bindings(p in example_bindings()) {
        let m = build_example(&p);
        let lc = levi_civita(&m);
        let np = phib(&m, &lc);
        prop_assert!(naturality_report(&m, &np).all_passed());
        let rep = potential_report(&m, &potential_q(&m, &lc, &np), &fundamental_f(&m, &lc)).unwrap();
        prop_assert!(rep.all_passed());
    }
}

#[test]
fn relabelling_parameters_changes_nothing_else() {
    let m = build_example(&ExampleParams::symbolic());
    let renames: BTreeMap<String, String> =
        PARAM_NAMES.iter().map(|n| (n.to_string(), format!("p_{n}"))).collect();
    let r = m.relabel(&renames).unwrap();
    let (a, b) = (classify(&m).unwrap(), classify(&r).unwrap());
    assert_eq!((a.f0, a.u, a.u1, a.u2, a.u3, a.sub_label), (b.f0, b.u, b.u1, b.u2, b.u3, b.sub_label));

    let rm = riemann(&m, &levi_civita(&m));
    let rr = riemann(&r, &levi_civita(&r));
    for idx in rm.indices() {
        let renamed = rm.get(&idx).rewrite(r.params(), |n| acbm::scalar::ParamImage::Param(renames[n].clone())).unwrap();
        assert_eq!(&renamed, rr.get(&idx));
    }
}
