//! Command-line surface: validation, structural analysis, derivation
//! solvers, theorem verification, triple-homomorphism decomposition.
//!
//! Exit codes: 0 = success / all applicable claims hold, 1 = a mathematical
//! check failed, 2 = input error, 3 = theorem hypotheses unmet. Reports are
//! deterministic byte streams; `--json` emits the same report the text
//! renderer shows.

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use superkit::catalog;
use superkit::derivations::{
    derivation_space, inner_derivation_space, triple_derivation_space, verify_theorem_one,
};
use superkit::document;
use superkit::endspace::GradedEndSpace;
use superkit::triplehom::{
    classify_linear_map, decompose_triple_hom, triple_hom_witness, TripleHomVerdict,
};
use superkit::{Decomposition, Error, FieldSpec, LieSuperalgebra, Matrix, Subspace};

const EXIT_OK: u8 = 0;
const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_HYPOTHESES: u8 = 3;

#[derive(Parser)]
#[command(name = "superkit")]
#[command(about = "Exact structure-constant computations for Lie superalgebras")]
#[command(version)]
struct Cli {
    /// Emit the report as JSON (the text renderer shows the same data)
    #[arg(long, global = true)]
    json: bool,

    /// Reinterpret input scalars over another field (q, f3, f5, ...);
    /// only faithful coercions are accepted
    #[arg(long, global = true, value_name = "FIELD")]
    field_override: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the graded axioms of an algebra file
    Validate { path: PathBuf },
    /// Dimensions, center, perfectness, and the ideal decomposition
    Analyze { path: PathBuf },
    /// Solve for the derivation space (or triple derivations with --triple)
    Der {
        path: PathBuf,
        /// Solve the triple-derivation system instead of the Leibniz system
        #[arg(long)]
        triple: bool,
    },
    /// Verify the two derivation-theorem claims with hypothesis checks
    Theorem1 { path: PathBuf },
    /// Test and classify a linear map as a triple homomorphism
    Hom {
        map: PathBuf,
        /// Algebra file for the domain
        #[arg(long)]
        domain: PathBuf,
        /// Algebra file for the codomain
        #[arg(long)]
        codomain: PathBuf,
        /// Run the full decomposition pipeline and embed its report
        #[arg(long)]
        decompose: bool,
    },
    /// Write a catalog algebra (e.g. "sl2(q)", "abelian(2|1,f5)", "osp12")
    Builtin {
        spec: String,
        /// Output path; stdout when omitted
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct InputDigest {
    path: String,
    sha256: String,
}

#[derive(Serialize)]
struct CheckLine {
    name: String,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
}

impl CheckLine {
    fn pass(name: &str) -> CheckLine {
        CheckLine {
            name: name.to_string(),
            status: "pass",
            witness: None,
        }
    }

    fn fail(name: &str, witness: impl Into<String>) -> CheckLine {
        CheckLine {
            name: name.to_string(),
            status: "fail",
            witness: Some(witness.into()),
        }
    }

    fn not_applicable(name: &str, witness: impl Into<String>) -> CheckLine {
        CheckLine {
            name: name.to_string(),
            status: "not_applicable",
            witness: Some(witness.into()),
        }
    }

    fn of(name: &str, passed: bool, witness: impl Into<String>) -> CheckLine {
        if passed {
            CheckLine::pass(name)
        } else {
            CheckLine::fail(name, witness)
        }
    }
}

#[derive(Serialize)]
struct Report {
    command: String,
    inputs: Vec<InputDigest>,
    dimensions: BTreeMap<String, u64>,
    checks: Vec<CheckLine>,
    verdicts: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "serde_json::Map::is_empty")]
    payload: serde_json::Map<String, Value>,
}

impl Report {
    fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            inputs: Vec::new(),
            dimensions: BTreeMap::new(),
            checks: Vec::new(),
            verdicts: BTreeMap::new(),
            payload: serde_json::Map::new(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        for i in &self.inputs {
            let _ = writeln!(out, "input: {} sha256={}", i.path, i.sha256);
        }
        if !self.dimensions.is_empty() {
            let _ = writeln!(out, "dimensions:");
            for (k, v) in &self.dimensions {
                let _ = writeln!(out, "  {k} = {v}");
            }
        }
        for c in &self.checks {
            match &c.witness {
                Some(w) => {
                    let _ = writeln!(out, "check {}: {} ({w})", c.name, c.status);
                }
                None => {
                    let _ = writeln!(out, "check {}: {}", c.name, c.status);
                }
            }
        }
        for (k, v) in &self.verdicts {
            let _ = writeln!(out, "verdict {k}: {v}");
        }
        if !self.payload.is_empty() {
            let _ = writeln!(out, "payload:");
            let pretty = serde_json::to_string_pretty(&self.payload).expect("payload serializes");
            for line in pretty.lines() {
                let _ = writeln!(out, "  {line}");
            }
        }
        out
    }
}

/// A terminating outcome: message to stderr plus an exit code, optionally
/// with a report that should still be shown.
struct Failure {
    exit: u8,
    message: String,
    report: Option<Box<Report>>,
}

impl Failure {
    fn input(message: impl Into<String>) -> Failure {
        Failure {
            exit: EXIT_INPUT,
            message: message.into(),
            report: None,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    let outcome = run(cli);
    match outcome {
        Ok((report, exit)) => {
            emit(&report, json);
            ExitCode::from(exit)
        }
        Err(failure) => {
            if let Some(report) = &failure.report {
                emit(report, json);
            }
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.exit)
        }
    }
}

fn emit(report: &Report, json: bool) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(report).expect("report serializes")
        );
    } else {
        print!("{}", report.render_text());
    }
}

fn run(cli: Cli) -> Result<(Report, u8), Failure> {
    let override_field = match &cli.field_override {
        None => None,
        Some(token) => Some(
            catalog::parse_field(token)
                .map_err(|e| Failure::input(format!("--field-override: {e}")))?,
        ),
    };
    match &cli.command {
        Command::Validate { path } => cmd_validate(path, override_field),
        Command::Analyze { path } => cmd_analyze(path, override_field),
        Command::Der { path, triple } => cmd_der(path, *triple, override_field),
        Command::Theorem1 { path } => cmd_theorem1(path, override_field),
        Command::Hom {
            map,
            domain,
            codomain,
            decompose,
        } => cmd_hom(map, domain, codomain, *decompose, override_field),
        Command::Builtin { spec, output } => cmd_builtin(spec, output.as_deref()),
    }
}

fn max_dim() -> Result<usize, Failure> {
    match std::env::var("SUPERKIT_MAX_DIM") {
        Err(_) => Ok(16),
        Ok(raw) => raw
            .parse()
            .map_err(|_| Failure::input(format!("SUPERKIT_MAX_DIM={raw:?} is not a number"))),
    }
}

fn digest_of(path: &Path, bytes: &[u8]) -> InputDigest {
    let hash = Sha256::digest(bytes);
    let mut hex = String::with_capacity(64);
    for b in hash {
        let _ = write!(hex, "{b:02x}");
    }
    InputDigest {
        path: path.display().to_string(),
        sha256: hex,
    }
}

fn read_file(path: &Path) -> Result<(String, InputDigest), Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    let digest = digest_of(path, &bytes);
    let text = String::from_utf8(bytes)
        .map_err(|_| Failure::input(format!("{} is not UTF-8", path.display())))?;
    Ok((text, digest))
}

/// Loads and fully checks an algebra file, producing a failure with the
/// violation report embedded when the axioms do not hold.
fn load_algebra(
    path: &Path,
    override_field: Option<FieldSpec>,
) -> Result<(LieSuperalgebra, InputDigest), Failure> {
    let (text, digest) = read_file(path)?;
    let doc = document::parse_algebra_document(&text)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let cap = max_dim()?;
    if doc.even.len() + doc.odd.len() > cap {
        return Err(Failure::input(format!(
            "{} has dimension {}, above the SUPERKIT_MAX_DIM cap of {cap}",
            path.display(),
            doc.even.len() + doc.odd.len()
        )));
    }
    match document::document_to_algebra_with_field(&doc, override_field) {
        Ok(l) => Ok((l, digest)),
        Err(Error::AxiomViolation { report }) => {
            let names: Vec<&String> = doc.even.iter().chain(doc.odd.iter()).collect();
            let mut rep = Report::new("validate");
            rep.inputs.push(digest);
            append_violations(&mut rep, &report, &names);
            Err(Failure {
                exit: EXIT_CHECK_FAILED,
                message: format!("{} violates the superalgebra axioms", path.display()),
                report: Some(Box::new(rep)),
            })
        }
        Err(e) => Err(Failure::input(format!("{}: {e}", path.display()))),
    }
}

fn append_violations(
    report: &mut Report,
    validation: &superkit::ValidationReport,
    names: &[&String],
) {
    use superkit::ViolationKind;
    let name_of = |i: usize| -> String {
        names
            .get(i)
            .map(|s| s.to_string())
            .unwrap_or_else(|| format!("#{i}"))
    };
    for kind in [
        ViolationKind::ParityCompatibility,
        ViolationKind::SkewSymmetry,
        ViolationKind::Jacobi,
    ] {
        let label = match kind {
            ViolationKind::ParityCompatibility => "parity_compatibility",
            ViolationKind::SkewSymmetry => "skew_symmetry",
            ViolationKind::Jacobi => "jacobi_identity",
        };
        let hits: Vec<String> = validation
            .violations
            .iter()
            .filter(|v| v.kind == kind)
            .map(|v| format!("({},{},{})", name_of(v.i), name_of(v.j), name_of(v.k)))
            .collect();
        if hits.is_empty() {
            report.checks.push(CheckLine::pass(label));
        } else {
            report
                .checks
                .push(CheckLine::fail(label, format!("at {}", hits.join(" "))));
        }
    }
    report.verdicts.insert(
        "valid".into(),
        if validation.is_valid() { "true" } else { "false" }.into(),
    );
}

fn algebra_dimensions(report: &mut Report, l: &LieSuperalgebra) {
    report.dimensions.insert("dim".into(), l.dim() as u64);
    report.dimensions.insert("dim_even".into(), l.even_dim() as u64);
    report.dimensions.insert("dim_odd".into(), l.odd_dim() as u64);
}

fn cmd_validate(path: &Path, field: Option<FieldSpec>) -> Result<(Report, u8), Failure> {
    let (l, digest) = load_algebra(path, field)?;
    let mut report = Report::new("validate");
    report.inputs.push(digest);
    algebra_dimensions(&mut report, &l);
    let names: Vec<&String> = l.basis_names().iter().collect();
    append_violations(&mut report, &l.validate_structure(), &names);
    Ok((report, EXIT_OK))
}

fn cmd_analyze(path: &Path, field: Option<FieldSpec>) -> Result<(Report, u8), Failure> {
    let (l, digest) = load_algebra(path, field)?;
    let mut report = Report::new("analyze");
    report.inputs.push(digest);
    algebra_dimensions(&mut report, &l);
    let center = l.center();
    let derived = l.derived_subalgebra();
    report
        .dimensions
        .insert("center_dim".into(), center.dim() as u64);
    report
        .dimensions
        .insert("derived_dim".into(), derived.dim() as u64);
    report
        .verdicts
        .insert("perfect".into(), l.is_perfect().to_string());
    report
        .verdicts
        .insert("centerless".into(), center.is_zero().to_string());
    if center.is_zero() {
        match l.decompose_indecomposable() {
            Ok(Decomposition::Ideals { ideals, .. }) => {
                let mut dims: Vec<usize> = ideals.iter().map(Subspace::dim).collect();
                dims.sort_unstable();
                report.verdicts.insert(
                    "decomposition".into(),
                    format!(
                        "{} indecomposable ideal(s) of dims {:?}",
                        ideals.len(),
                        dims
                    ),
                );
                report.payload.insert(
                    "ideal_dims".into(),
                    json!(dims),
                );
            }
            Ok(Decomposition::Undecided) => {
                report
                    .verdicts
                    .insert("decomposition".into(), "undecided".into());
            }
            Err(e) => return Err(Failure::input(e.to_string())),
        }
    } else {
        report.verdicts.insert(
            "decomposition".into(),
            "not_applicable (center is nonzero)".into(),
        );
    }
    Ok((report, EXIT_OK))
}

fn matrix_json(m: &Matrix) -> Value {
    json!((0..m.rows())
        .map(|r| m.row(r).iter().map(|s| s.to_string()).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn endspace_json(space: &GradedEndSpace) -> Value {
    let records: Vec<Value> = space
        .basis_maps()
        .map(|m| {
            json!({
                "parity": m.parity().to_string(),
                "matrix": matrix_json(m.matrix()),
            })
        })
        .collect();
    json!(records)
}

fn subspace_json(s: &Subspace) -> Value {
    matrix_json(s.basis())
}

fn cmd_der(path: &Path, triple: bool, field: Option<FieldSpec>) -> Result<(Report, u8), Failure> {
    let (l, digest) = load_algebra(path, field)?;
    let mut report = Report::new(if triple { "der --triple" } else { "der" });
    report.inputs.push(digest);
    algebra_dimensions(&mut report, &l);
    let space = if triple {
        triple_derivation_space(&l)
    } else {
        derivation_space(&l)
    };
    let inner = inner_derivation_space(&l);
    let label = if triple { "tder" } else { "der" };
    report
        .dimensions
        .insert(format!("{label}_even"), space.even_dim() as u64);
    report
        .dimensions
        .insert(format!("{label}_odd"), space.odd_dim() as u64);
    report
        .dimensions
        .insert("inner_even".into(), inner.even_dim() as u64);
    report
        .dimensions
        .insert("inner_odd".into(), inner.odd_dim() as u64);
    report
        .payload
        .insert("basis".into(), endspace_json(&space));
    Ok((report, EXIT_OK))
}

fn cmd_theorem1(path: &Path, field: Option<FieldSpec>) -> Result<(Report, u8), Failure> {
    let (l, digest) = load_algebra(path, field)?;
    let mut report = Report::new("theorem1");
    report.inputs.push(digest);
    algebra_dimensions(&mut report, &l);
    let outcome = verify_theorem_one(&l);
    report.checks.push(CheckLine::of(
        "hypothesis_has_half",
        outcome.has_half,
        "2 is not invertible in the base field",
    ));
    report.checks.push(CheckLine::of(
        "hypothesis_perfect",
        outcome.perfect,
        "derived subalgebra is proper",
    ));
    report.checks.push(CheckLine::of(
        "hypothesis_centerless",
        outcome.centerless,
        "center is nonzero",
    ));
    for (name, claim, note) in [
        (
            "claim_tder_eq_der",
            outcome.claim_tder_eq_der,
            "TDer(L) = Der(L)",
        ),
        (
            "claim_tder_of_der_eq_ad_der",
            outcome.claim_tder_of_der_eq_ad,
            "TDer(Der L) = ad(Der L)",
        ),
    ] {
        if claim.applicable {
            report
                .checks
                .push(CheckLine::of(name, claim.holds, format!("{note} fails")));
        } else {
            report.checks.push(CheckLine::not_applicable(
                name,
                format!(
                    "hypotheses unmet: {}; evaluated anyway: {note} {}",
                    outcome.failed_hypotheses().join(", "),
                    if claim.holds { "holds" } else { "fails" }
                ),
            ));
        }
    }
    let inner_check_name = "inner_derivations_invariant_under_tder_of_der";
    if outcome.hypotheses_met() {
        report.checks.push(CheckLine::of(
            inner_check_name,
            outcome.inner_invariant_under_tder_of_der,
            "some triple derivation of Der(L) moves ad(L) out of itself",
        ));
    } else {
        report.checks.push(CheckLine::not_applicable(
            inner_check_name,
            format!(
                "hypotheses unmet; evaluated anyway: {}",
                if outcome.inner_invariant_under_tder_of_der {
                    "holds"
                } else {
                    "fails"
                }
            ),
        ));
    }
    for (key, value) in [
        ("der_even", outcome.der.even_dim()),
        ("der_odd", outcome.der.odd_dim()),
        ("tder_even", outcome.tder.even_dim()),
        ("tder_odd", outcome.tder.odd_dim()),
        ("inner_dim", outcome.inner.total_dim()),
        ("der_algebra_dim", outcome.der_algebra.dim()),
        ("tder_of_der_dim", outcome.tder_of_der.total_dim()),
        ("ad_of_der_dim", outcome.ad_of_der.total_dim()),
    ] {
        report.dimensions.insert(key.into(), value as u64);
    }
    let (verdict, exit) = if !outcome.hypotheses_met() {
        ("hypotheses_unmet".to_string(), EXIT_HYPOTHESES)
    } else if outcome.all_applicable_claims_hold() && outcome.inner_invariant_under_tder_of_der {
        ("holds".to_string(), EXIT_OK)
    } else {
        ("refuted_instance".to_string(), EXIT_CHECK_FAILED)
    };
    report.verdicts.insert("theorem1".into(), verdict);
    Ok((report, exit))
}

fn cmd_hom(
    map_path: &Path,
    domain_path: &Path,
    codomain_path: &Path,
    decompose: bool,
    field: Option<FieldSpec>,
) -> Result<(Report, u8), Failure> {
    let (domain, d1) = load_algebra(domain_path, field)?;
    let (codomain, d2) = load_algebra(codomain_path, field)?;
    let (map_text, d0) = read_file(map_path)?;
    let f = document::map_from_json(&map_text, &domain, &codomain)
        .map_err(|e| Failure::input(format!("{}: {e}", map_path.display())))?;
    let mut report = Report::new(if decompose { "hom --decompose" } else { "hom" });
    report.inputs.extend([d0, d1, d2]);
    report
        .dimensions
        .insert("domain_dim".into(), domain.dim() as u64);
    report
        .dimensions
        .insert("codomain_dim".into(), codomain.dim() as u64);

    if !decompose {
        let witness = triple_hom_witness(&f, &domain, &codomain)
            .map_err(|e| Failure::input(e.to_string()))?;
        let class = classify_linear_map(&f, &domain, &codomain)
            .map_err(|e| Failure::input(e.to_string()))?;
        report
            .verdicts
            .insert("classification".into(), class.to_string());
        let exit = match witness {
            None => {
                report.checks.push(CheckLine::pass("is_triple_homomorphism"));
                EXIT_OK
            }
            Some((i, j, k)) => {
                report.checks.push(CheckLine::fail(
                    "is_triple_homomorphism",
                    format!(
                        "violated at ({},{},{})",
                        domain.basis_name(i),
                        domain.basis_name(j),
                        domain.basis_name(k)
                    ),
                ));
                EXIT_CHECK_FAILED
            }
        };
        return Ok((report, exit));
    }

    let pipeline = decompose_triple_hom(&f, &domain, &codomain);
    report
        .verdicts
        .insert("verdict".into(), pipeline.verdict.to_string());
    if !pipeline.diagnostics.is_empty() {
        report
            .verdicts
            .insert("diagnostics".into(), pipeline.diagnostics.join(", "));
    }
    if let Some((i, j, k)) = pipeline.violating_triple {
        report.checks.push(CheckLine::fail(
            "is_triple_homomorphism",
            format!(
                "violated at ({},{},{})",
                domain.basis_name(i),
                domain.basis_name(j),
                domain.basis_name(k)
            ),
        ));
    } else {
        report.checks.push(CheckLine::pass("is_triple_homomorphism"));
    }
    for check in &pipeline.checks {
        report
            .checks
            .push(CheckLine::of(check.name, check.passed, "verification failed"));
    }
    if let Some(env) = &pipeline.enveloping {
        report
            .dimensions
            .insert("enveloping_dim".into(), env.algebra.dim() as u64);
    }
    if let (Some(p), Some(m)) = (&pipeline.m_plus, &pipeline.m_minus) {
        report.dimensions.insert("m_plus_dim".into(), p.dim() as u64);
        report.dimensions.insert("m_minus_dim".into(), m.dim() as u64);
        report.payload.insert("m_plus_basis".into(), subspace_json(p));
        report.payload.insert("m_minus_basis".into(), subspace_json(m));
    }
    if let Some(delta) = &pipeline.delta_f {
        report
            .payload
            .insert("delta_f".into(), matrix_json(delta.matrix()));
    }
    if let Some(f1) = &pipeline.f1 {
        report.payload.insert("f1".into(), matrix_json(f1.matrix()));
    }
    if let Some(f2) = &pipeline.f2 {
        report.payload.insert("f2".into(), matrix_json(f2.matrix()));
    }
    let exit = match pipeline.verdict {
        TripleHomVerdict::NotTripleHom => EXIT_CHECK_FAILED,
        TripleHomVerdict::HypothesisViolated => EXIT_HYPOTHESES,
        _ if !pipeline.all_checks_passed() => EXIT_CHECK_FAILED,
        _ => EXIT_OK,
    };
    Ok((report, exit))
}

fn cmd_builtin(spec: &str, output: Option<&Path>) -> Result<(Report, u8), Failure> {
    let l = catalog::builtin(spec).map_err(|e| Failure::input(e.to_string()))?;
    let text = document::algebra_to_json(&l);
    let mut report = Report::new("builtin");
    algebra_dimensions(&mut report, &l);
    report.verdicts.insert("name".into(), l.name().to_string());
    match output {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?;
            report
                .verdicts
                .insert("written".into(), path.display().to_string());
        }
        None => {
            report.payload.insert(
                "document".into(),
                serde_json::from_str(&text).expect("canonical document"),
            );
        }
    }
    Ok((report, EXIT_OK))
}
