//! Command-line front end.
//!
//! Exit codes: 0 when every reported check passes, 1 when one fails (the
//! report is still written), 2 on argument, parse or validation errors.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::classify::{classify, ClassReport};
use crate::curvature::{
    r_prime, r_prime_u_identity, r_xi_u3_check, vertical_curvature_check, vertical_curvature_derivative_check,
};
use crate::error::Result;
use crate::example::{verify_paper_claims, verify_random_instances, ExampleParams};
use crate::manifold_file::{parse_manifold, FileError};
use crate::model::{
    curvature_symmetries, fundamental_f, jacobi_check, levi_civita, levi_civita_properties, riemann,
    scalar_curvatures, validate_structure, AlgebraModel,
};
use crate::phib::{
    naturality_report, phib, phib_u_form, potential_q, potential_q_u_form, potential_report, torsion,
    torsion_tensor, u1_torsion_properties, u3_torsion_properties,
};
use crate::report::{tensor_zero_check, tensors_equal_check, Check, NamedValue, Report};
use crate::scalar::{parse_rational, Rational};

#[derive(Debug, Parser)]
#[command(name = "acbm", version, about = "Exact analysis of almost contact B-metric Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the structure axioms and the Jacobi identity.
    Validate(InputArgs),
    /// Decide F0, U, U1, U2, U3 and the F4/F5/F6 sub-label.
    Classify(InputArgs),
    /// Connection coefficients with their defining properties.
    Connection(ConnectionArgs),
    /// Torsion tensor, torsion forms and torsion classes.
    Torsion(ConnectionArgs),
    /// Curvature tensor and the curvature identities that apply.
    Curvature(ConnectionArgs),
    /// Check every stated property of the built-in five-dimensional example.
    VerifyExample(ExampleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConnectionKind {
    Lc,
    Phib,
}

#[derive(Debug, Args)]
struct CommonArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Bind a parameter to a rational, e.g. `--bind l1=1/2`. Repeatable.
    #[arg(long = "bind", value_name = "NAME=RATIONAL", value_parser = parse_binding)]
    bindings: Vec<(String, Rational)>,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Manifold description (JSON).
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args)]
struct ConnectionArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = ConnectionKind::Phib)]
    connection: ConnectionKind,
}

#[derive(Debug, Args)]
struct ExampleArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Also check fully bound instances drawn from this seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of random instances checked with `--seed`.
    #[arg(long, default_value_t = 100, requires = "seed")]
    count: usize,
}

fn parse_binding(text: &str) -> std::result::Result<(String, Rational), String> {
    let (name, value) = text.split_once('=').ok_or_else(|| format!("expected NAME=RATIONAL, got `{text}`"))?;
    let value = parse_rational(value).map_err(|e| e.to_string())?;
    Ok((name.trim().to_string(), value))
}

/// What `run` produced: the exit code and the two output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Serialize)]
struct Output {
    command: &'static str,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    bindings: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    classification: Option<ClassReport>,
    report: Report,
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let format = match &cli.command {
        Command::Validate(a) | Command::Classify(a) => a.common.format,
        Command::Connection(a) | Command::Torsion(a) | Command::Curvature(a) => a.input.common.format,
        Command::VerifyExample(a) => a.common.format,
    };
    match dispatch(cli.command) {
        Ok(out) => {
            let code = if out.report.all_passed() { 0 } else { 1 };
            Outcome { code, stdout: render(&out, format), stderr: String::new() }
        }
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn render(out: &Output, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(out).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            if !out.bindings.is_empty() {
                let b: Vec<String> = out.bindings.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let _ = writeln!(s, "bindings: {}", b.join(" "));
            }
            if let Some(c) = &out.classification {
                let _ = writeln!(
                    s,
                    "F0={} U={} U1={} U2={} U3={} sub-label={}",
                    c.f0, c.u, c.u1, c.u2, c.u3, c.sub_label
                );
                for f in &c.failed_identities {
                    let _ = writeln!(s, "  {} fails at {:?}: {}", f.name, f.witness, f.residual);
                }
                for n in &c.notes {
                    let _ = writeln!(s, "note: {n}");
                }
            }
            s.push_str(&out.report.render_text());
            s
        }
    }
}

fn bindings_map(bindings: &[(String, Rational)]) -> Result<BTreeMap<String, Rational>> {
    let mut map = BTreeMap::new();
    for (name, value) in bindings {
        if map.insert(name.clone(), value.clone()).is_some_and(|old| &old != value) {
            return Err(FileError::Field {
                field: "--bind".into(),
                msg: format!("parameter `{name}` bound twice"),
            }
            .into());
        }
    }
    Ok(map)
}

fn load(args: &InputArgs) -> Result<(AlgebraModel, BTreeMap<String, Rational>)> {
    let text = std::fs::read_to_string(&args.input).map_err(|e| FileError::Field {
        field: "--input".into(),
        msg: format!("{}: {e}", args.input.display()),
    })?;
    let m = parse_manifold(&text)?;
    let bindings = bindings_map(&args.common.bindings)?;
    let m = if bindings.is_empty() {
        m
    } else {
        m.bind(&bindings).map_err(|e| FileError::Field { field: "--bind".into(), msg: e.to_string() })?
    };
    Ok((m, bindings))
}

fn output(command: &'static str, bindings: &BTreeMap<String, Rational>, report: Report) -> Output {
    Output {
        command,
        bindings: bindings.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
        classification: None,
        report,
    }
}

fn dispatch(command: Command) -> Result<Output> {
    match command {
        Command::Validate(a) => {
            let (m, b) = load(&a)?;
            let mut rep = Report::new("structure");
            rep.absorb("", validate_structure(&m));
            rep.absorb("", jacobi_check(&m));
            Ok(output("validate", &b, rep))
        }
        Command::Classify(a) => {
            let (m, b) = load(&a)?;
            let class = classify(&m)?;
            let mut rep = Report::new("classification");
            rep.push(Check::from_bool(
                "class-lattice-consistent",
                class.lattice_consistent(),
                "class flags violate U3 => U1 and U2, U1 or U2 => U, F0 => all",
            ));
            let mut out = output("classify", &b, rep);
            out.classification = Some(class);
            Ok(out)
        }
        Command::Connection(a) => {
            let (m, b) = load(&a.input)?;
            Ok(output("connection", &b, connection_report(&m, a.connection)?))
        }
        Command::Torsion(a) => {
            let (m, b) = load(&a.input)?;
            Ok(output("torsion", &b, torsion_report(&m, a.connection)?))
        }
        Command::Curvature(a) => {
            let (m, b) = load(&a.input)?;
            Ok(output("curvature", &b, curvature_report(&m, a.connection)?))
        }
        Command::VerifyExample(a) => {
            let b = bindings_map(&a.common.bindings)?;
            let p = ExampleParams::from_bindings(&b)
                .map_err(|e| FileError::Field { field: "--bind".into(), msg: e.to_string() })?;
            let mut rep = verify_paper_claims(&p)?;
            if let Some(seed) = a.seed {
                let random = verify_random_instances(seed, a.count)?;
                rep.note(random.title.clone());
                rep.absorb("random-", random);
            }
            Ok(output("verify-example", &b, rep))
        }
    }
}

fn flag(rep: &mut Report, name: &str, value: bool) {
    rep.values.push(NamedValue { name: name.to_string(), value: value.to_string() });
}

fn connection_report(m: &AlgebraModel, kind: ConnectionKind) -> Result<Report> {
    let lc = levi_civita(m);
    match kind {
        ConnectionKind::Lc => {
            let mut rep = Report::new("Levi-Civita connection");
            rep.absorb("", levi_civita_properties(m, &lc));
            rep.table("gamma", lc.gamma());
            Ok(rep)
        }
        ConnectionKind::Phib => {
            let np = phib(m, &lc);
            let f = fundamental_f(m, &lc);
            let q = potential_q(m, &lc, &np);
            let mut rep = Report::new("phiB connection");
            rep.absorb("", naturality_report(m, &np));
            rep.absorb("", potential_report(m, &q, &f)?);
            if classify(m)?.u {
                rep.push(tensors_equal_check("u-form-agrees", phib_u_form(m, &lc)?.gamma(), np.gamma()));
                rep.push(tensors_equal_check("u-potential-agrees", &potential_q_u_form(m, &f)?, &q));
            }
            rep.table("gamma", np.gamma());
            rep.table("Q", &q);
            Ok(rep)
        }
    }
}

fn torsion_report(m: &AlgebraModel, kind: ConnectionKind) -> Result<Report> {
    let lc = levi_civita(m);
    match kind {
        ConnectionKind::Lc => {
            let t = torsion_tensor(m, &lc);
            let mut rep = Report::new("Levi-Civita torsion");
            rep.push(tensor_zero_check("torsion-vanishes", &t));
            rep.table("T", &t);
            Ok(rep)
        }
        ConnectionKind::Phib => {
            let np = phib(m, &lc);
            let ta = torsion(m, &np)?;
            let class = classify(m)?;
            let mut rep = Report::new("phiB torsion");
            rep.checks.extend(ta.form_checks.iter().cloned());
            if class.u1 {
                let q = potential_q(m, &lc, &np);
                rep.absorb("", u1_torsion_properties(m, &q, &ta.torsion)?);
            }
            if class.u1 || class.u2 {
                let u3 = u3_torsion_properties(m, &lc, &ta.torsion)?;
                rep.checks.extend(u3.checks.into_iter().filter(|c| rep.check(&c.name).is_none()).collect::<Vec<_>>());
                rep.notes.extend(u3.notes);
            }
            for v in &ta.class_verdicts {
                flag(&mut rep, v.name.as_str(), v.passed());
            }
            rep.table("T", &ta.torsion);
            rep.table("t", &ta.forms.t);
            rep.table("t*", &ta.forms.t_star);
            rep.table("t^", &ta.forms.t_hat);
            Ok(rep)
        }
    }
}

fn curvature_report(m: &AlgebraModel, kind: ConnectionKind) -> Result<Report> {
    let lc = levi_civita(m);
    let r = riemann(m, &lc);
    let class = classify(m)?;
    match kind {
        ConnectionKind::Lc => {
            let sc = scalar_curvatures(m, &lc, &r)?;
            let mut rep = Report::new("Levi-Civita curvature");
            rep.absorb("", curvature_symmetries(&r));
            if class.u1 {
                rep.push(vertical_curvature_check(m, &r, &lc));
                rep.push(vertical_curvature_derivative_check(m, &r, &lc));
            }
            rep.value("tau", &sc.tau);
            rep.value("tau*", &sc.tau_star);
            rep.value("norm(nabla xi)^2", &sc.norm_nabla_xi);
            rep.table("R", &r);
            Ok(rep)
        }
        ConnectionKind::Phib => {
            let np = phib(m, &lc);
            let ca = r_prime(m, &np)?;
            let mut rep = Report::new("phiB curvature");
            if class.u {
                rep.absorb("", r_prime_u_identity(m, &r, &lc, &ca)?);
            }
            if class.u3 {
                rep.absorb("", r_xi_u3_check(m, &r, &lc)?);
            } else if class.u1 {
                rep.push(vertical_curvature_check(m, &r, &lc));
                rep.push(vertical_curvature_derivative_check(m, &r, &lc));
            }
            if !class.u {
                rep.value("tau'", &ca.tau_prime);
            }
            rep.value("tau'*", &ca.tau_prime_star);
            flag(&mut rep, "curvature-antisymmetry", ca.kaehler.curvature_antisymmetry);
            flag(&mut rep, "first-bianchi", ca.kaehler.first_bianchi);
            flag(&mut rep, "phi-anti-invariance", ca.kaehler.phi_anti_invariance);
            rep.table("R'", &ca.r_prime);
            Ok(rep)
        }
    }
}
