//! Exit criteria, one line each. Every check is exact.

use std::path::PathBuf;
use std::process::Command;

use acbm::classify::{classify, SubLabel};
use acbm::curvature::{gauss_form_curvature, kaehler_type_report, r_prime, r_prime_u_identity, vertical_curvature_check};
use acbm::example::{build_example, ExampleParams};
use acbm::model::{
    curvature_traces, fundamental_f, jacobi_check, levi_civita, nabla_xi, norm_nabla_xi, riemann, validate_structure,
    AlgebraModel,
};
use acbm::phib::{
    phib, potential_q, potential_report, naturality_report, torsion, torsion_class_check, torsion_from_f,
    torsion_tensor, u1_torsion_properties, u3_torsion_properties, u_vertical_structure_check,
};
use acbm::report::{tensor_zero_check, tensors_equal_check};
use acbm::tensor::Slot::{Contravariant as Up, Covariant as Co};
use acbm::{parse_manifold, Check, PolyScalar, Report, Tensor};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const RANDOM_SEED: u64 = 20_241_016;
const RANDOM_COUNT: usize = 100;

type Outcome = Result<(), String>;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn symbolic() -> AlgebraModel {
    build_example(&ExampleParams::symbolic())
}

fn random_models() -> Vec<(String, AlgebraModel)> {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    (0..RANDOM_COUNT)
        .map(|_| {
            let p = ExampleParams::random(&mut rng);
            let label = p.bindings().iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ");
            (label, build_example(&p))
        })
        .collect()
}

fn require(c: &Check) -> Outcome {
    if c.passed() {
        return Ok(());
    }
    let at = c.witness.as_ref().map(|w| format!(" at {w:?}")).unwrap_or_default();
    Err(format!("{}{at}: {}", c.name, c.detail.as_deref().unwrap_or("failed")))
}

fn require_all(r: &Report) -> Outcome {
    r.checks.iter().try_for_each(require)
}

fn table(m: &AlgebraModel, slots: &[acbm::Slot], entries: &[(&[usize], &str)]) -> Tensor {
    let mut t = Tensor::zeros(m.params(), m.dim(), slots);
    for (idx, text) in entries {
        let zero_based: Vec<usize> = idx.iter().map(|i| i - 1).collect();
        t.set(&zero_based, PolyScalar::parse(text, m.params()).expect("table entry parses"));
    }
    t
}

fn structure_validation() -> Outcome {
    let m = symbolic();
    require_all(&validate_structure(&m))?;
    require_all(&jacobi_check(&m))
}

fn levi_civita_reproduction() -> Outcome {
    let m = symbolic();
    let s = "1/2*(l2 + m1)";
    let t = "1/2*(l4 + m3)";
    // column i holds ∇_{e_i} ξ
    let columns: [[&str; 4]; 4] = [
        ["l1", s, "l3", t],
        [s, "-l1", t, "-l3"],
        ["-l3", "-1/2*(l4 + m3)", "l1", s],
        ["-1/2*(l4 + m3)", "l3", s, "-l1"],
    ];
    let mut entries: Vec<(Vec<usize>, &str)> = Vec::new();
    for (i, col) in columns.iter().enumerate() {
        for (k, v) in col.iter().enumerate() {
            entries.push((vec![k + 1, i + 1], v));
        }
    }
    let refs: Vec<(&[usize], &str)> = entries.iter().map(|(i, v)| (i.as_slice(), *v)).collect();
    let expected = table(&m, &[Up, Co], &refs);
    require(&tensors_equal_check("nabla-xi", &nabla_xi(&m, &levi_civita(&m)), &expected))
}

fn classification() -> Outcome {
    let c = classify(&symbolic()).map_err(|e| e.to_string())?;
    if !(c.u && c.u1 && c.u2 && c.u3 && c.sub_label == SubLabel::F6) {
        return Err(format!("example: u={} u1={} u2={} u3={} sub_label={}", c.u, c.u1, c.u2, c.u3, c.sub_label));
    }
    let abelian = parse_manifold(&std::fs::read_to_string(data("abelian.json")).unwrap()).map_err(|e| e.to_string())?;
    let a = classify(&abelian).map_err(|e| e.to_string())?;
    if !a.f0 {
        return Err("abelian model is not F0".into());
    }
    Ok(())
}

fn phib_reproduction() -> Outcome {
    let m = symbolic();
    let a = "1/2*(l2 - m1)";
    let b = "1/2*(l4 - m3)";
    let na = "-1/2*(l2 - m1)";
    let nb = "-1/2*(l4 - m3)";
    let expected = table(
        &m,
        &[Co, Co, Up],
        &[
            (&[5, 1, 2], na),
            (&[5, 1, 4], nb),
            (&[5, 2, 1], a),
            (&[5, 2, 3], b),
            (&[5, 3, 2], b),
            (&[5, 3, 4], na),
            (&[5, 4, 1], nb),
            (&[5, 4, 3], a),
        ],
    );
    let np = phib(&m, &levi_civita(&m));
    require(&tensors_equal_check("phib-coefficients", np.gamma(), &expected))
}

fn torsion_reproduction() -> Outcome {
    let m = symbolic();
    let l1 = "l1";
    let s = "1/2*(l2 + m1)";
    let l3 = "-l3";
    let t = "-1/2*(l4 + m3)";
    let neg = |v: &str| format!("-({v})");
    let (nl1, ns, nl3) = (neg(l1), neg(s), neg(l3));
    // T_5ij
    let rows: [[&str; 4]; 4] = [
        [l1, s, l3, t],
        [s, &nl1, t, &nl3],
        [l3, t, &nl1, &ns],
        [t, &nl3, &ns, l1],
    ];
    let mut entries: Vec<(Vec<usize>, String)> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            entries.push((vec![5, i + 1, j + 1], v.to_string()));
            // T(x,y,z) = -T(y,x,z)
            entries.push((vec![i + 1, 5, j + 1], neg(v)));
        }
    }
    let refs: Vec<(&[usize], &str)> = entries.iter().map(|(i, v)| (i.as_slice(), v.as_str())).collect();
    let expected = table(&m, &[Co, Co, Co], &refs);
    let ta = torsion(&m, &phib(&m, &levi_civita(&m))).map_err(|e| e.to_string())?;
    require(&tensors_equal_check("torsion-components", &ta.torsion, &expected))?;
    require(&tensor_zero_check("t", &ta.forms.t))?;
    require(&tensor_zero_check("t*", &ta.forms.t_star))?;
    require(&tensor_zero_check("t^", &ta.forms.t_hat))
}

fn flatness() -> Outcome {
    let m = symbolic();
    let ca = r_prime(&m, &phib(&m, &levi_civita(&m))).map_err(|e| e.to_string())?;
    require(&tensor_zero_check("r-prime", &ca.r_prime))
}

fn parallel_torsion() -> Outcome {
    let m = symbolic();
    let np = phib(&m, &levi_civita(&m));
    let t = torsion_tensor(&m, &np);
    require(&tensor_zero_check("nabla'-T", &np.covariant_derivative(&t)))
}

fn scalar_identity() -> Outcome {
    let m = symbolic();
    let lc = levi_civita(&m);
    let (rho, tau, _) = curvature_traces(&m, &riemann(&m, &lc)).map_err(|e| e.to_string())?;
    let rho_xi_xi = rho.get(&[4, 4]);
    let defect = &(&tau - &rho_xi_xi.scale(&acbm::scalar::int(2))) - &norm_nabla_xi(&m, &lc);
    if !defect.is_zero() {
        return Err(format!("τ - 2ρ(ξ,ξ) - ‖∇ξ‖² = {defect}"));
    }
    let ca = r_prime(&m, &phib(&m, &lc)).map_err(|e| e.to_string())?;
    if !ca.tau_prime.is_zero() {
        return Err(format!("τ' = {}", ca.tau_prime));
    }
    Ok(())
}

fn naturality_suite(m: &AlgebraModel) -> Outcome {
    let lc = levi_civita(m);
    let np = phib(m, &lc);
    require_all(&naturality_report(m, &np))?;
    let rep = potential_report(m, &potential_q(m, &lc, &np), &fundamental_f(m, &lc)).map_err(|e| e.to_string())?;
    require_all(&rep)
}

fn naturality() -> Outcome {
    naturality_suite(&symbolic()).map_err(|e| format!("symbolic: {e}"))?;
    for (label, m) in random_models() {
        naturality_suite(&m).map_err(|e| format!("{label}: {e}"))?;
    }
    Ok(())
}

fn torsion_identities(m: &AlgebraModel, t: &Tensor) -> acbm::Result<Vec<Check>> {
    let lc = levi_civita(m);
    let q = potential_q(m, &lc, &phib(m, &lc));
    let mut checks = vec![u_vertical_structure_check(m, t)?];
    checks.extend(u1_torsion_properties(m, &q, t)?.checks);
    checks.extend(u3_torsion_properties(m, &lc, t)?.checks.into_iter().filter(|c| c.name != "nabla-xi-commutes-with-phi"));
    checks.extend(torsion_class_check(m, t)?.into_iter().filter(|c| c.name == "U3:T31"));
    Ok(checks)
}

fn torsion_identity_suite() -> Outcome {
    let m = symbolic();
    let lc = levi_civita(&m);
    let t = torsion_tensor(&m, &phib(&m, &lc));
    let checks = torsion_identities(&m, &t).map_err(|e| e.to_string())?;
    checks.iter().try_for_each(require)?;
    require(&acbm::phib::nabla_xi_phi_check(&m, &lc))?;
    let candidates: [[usize; 3]; 5] = [[0, 1, 2], [4, 0, 1], [0, 4, 1], [4, 0, 0], [0, 1, 4]];
    for (n, original) in checks.iter().enumerate() {
        let caught = candidates.iter().any(|idx| {
            let mut bad = t.clone();
            bad.set(idx, t.get(idx) + &PolyScalar::one(m.params()));
            let c = &torsion_identities(&m, &bad).expect("same model")[n];
            !c.passed() && c.witness.is_some()
        });
        if !caught {
            return Err(format!("mutation not detected by {}", original.name));
        }
    }
    Ok(())
}

fn curvature_identity_suite() -> Outcome {
    let m = symbolic();
    let lc = levi_civita(&m);
    let r = riemann(&m, &lc);
    let ca = r_prime(&m, &phib(&m, &lc)).map_err(|e| e.to_string())?;
    let u = r_prime_u_identity(&m, &r, &lc, &ca).map_err(|e| e.to_string())?;
    require(u.check("horizontal-curvature-form").expect("reported"))?;
    require_all(&kaehler_type_report(&ca.r_prime, &m))?;
    require(&vertical_curvature_check(&m, &r, &lc))
}

fn oracle_pair(m: &AlgebraModel) -> Outcome {
    let lc = levi_civita(m);
    let np = phib(m, &lc);
    let f = fundamental_f(m, &lc);
    let from_f = torsion_from_f(m, &f).map_err(|e| e.to_string())?;
    require(&tensors_equal_check("torsion-commutator-vs-F", &torsion_tensor(m, &np), &from_f))?;
    require(&tensors_equal_check("curvature-commutator-vs-potential", &riemann(m, &np), &gauss_form_curvature(m, &lc, &np)))
}

fn oracle_equivalence() -> Outcome {
    oracle_pair(&symbolic()).map_err(|e| format!("symbolic: {e}"))?;
    for (label, m) in random_models() {
        oracle_pair(&m).map_err(|e| format!("{label}: {e}"))?;
    }
    Ok(())
}

fn cli_contract() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_acbm");
    let run = |args: &[&str]| Command::new(bin).args(args).output().map_err(|e| e.to_string());
    let first = run(&["verify-example", "--format", "json"])?;
    let second = run(&["verify-example", "--format", "json"])?;
    let mut problems = Vec::new();
    if first.stdout != second.stdout || first.stdout.is_empty() {
        problems.push("verify-example output differs between runs".to_string());
    }
    let v: serde_json::Value = serde_json::from_slice(&first.stdout).map_err(|e| e.to_string())?;
    let n = v["report"]["checks"].as_array().map_or(0, Vec::len);
    if n != 8 {
        problems.push(format!("verify-example reported {n} claim checks"));
    }
    if first.status.code() != Some(0) {
        let failing: Vec<String> = v["report"]["checks"]
            .as_array()
            .into_iter()
            .flatten()
            .filter(|c| c["verdict"] == "fail")
            .map(|c| c["name"].as_str().unwrap_or("?").to_string())
            .collect();
        problems.push(format!("verify-example exited {:?} (failing: {})", first.status.code(), failing.join(", ")));
    }

    let mut spec: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(data("ex.json")).unwrap()).map_err(|e| e.to_string())?;
    spec["metric"][0][1] = "1".into();
    let file = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance-corrupt-metric.json");
    std::fs::write(&file, spec.to_string()).map_err(|e| e.to_string())?;
    let out = run(&["validate", "--input", &file.to_string_lossy()])?;
    let err = String::from_utf8_lossy(&out.stderr);
    if out.status.code() != Some(2) || !err.contains("metric[1][2]") {
        problems.push(format!("corrupt metric: exit {:?}, stderr {err:?}", out.status.code()));
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(problems.join("; "))
    }
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("structure validation", structure_validation),
        ("Levi-Civita reproduction", levi_civita_reproduction),
        ("classification", classification),
        ("phiB connection reproduction", phib_reproduction),
        ("torsion reproduction", torsion_reproduction),
        ("flatness", flatness),
        ("parallel torsion", parallel_torsion),
        ("scalar identity", scalar_identity),
        ("naturality property suite", naturality),
        ("torsion identity suite", torsion_identity_suite),
        ("curvature identity suite", curvature_identity_suite),
        ("oracle equivalence", oracle_equivalence),
        ("CLI contract", cli_contract),
    ];
    let mut failed = Vec::new();
    for (n, (name, criterion)) in criteria.iter().enumerate() {
        match criterion() {
            Ok(()) => println!("[PASS] {:>2} {name}", n + 1),
            Err(why) => {
                println!("[FAIL] {:>2} {name}: {why}", n + 1);
                failed.push(n + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
