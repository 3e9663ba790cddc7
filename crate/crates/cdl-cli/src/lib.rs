//! Command-line front end: argument parsing, the verification subcommands and
//! report emission.
//!
//! Exit codes: 0 when every check passes, 2 when a verification fails (the
//! report names the failing identity and its residual), 1 on usage or input
//! errors. Reports are JSON documents tagged `"schema": "cdl/1"` and are
//! byte-identical for identical commands.

pub mod acceptance;

use std::fs;
use std::path::PathBuf;

use cdl_dilog::{verify_period_di, vt_check, wedge_check, DilogError, PI2_6};
use cdl_pattern::{run_pattern, MutationWord, PatternRun};
use cdl_quantum::{qcsd_wall_identity, verify_qdi_tropical, verify_qdi_universal, QReport, QcsdCase, QuantumError};
use cdl_scatter::{build_rank2_csd, Rank2Diagram, ScatterError};
use cdl_seed::{DynkinType, ExchangeMatrix};
use cdl_ysystem::{symbolic_half_periodicity, tropical_run, YSystemError, DEFAULT_TERM_BUDGET};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

pub const SCHEMA: &str = "cdl/1";

#[derive(Debug, Parser)]
#[command(name = "cdl", version, about = "Verify cluster dilogarithm identities")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a mutation word and emit the run JSON.
    Mutate(MutateArgs),
    /// Check the period identities of a periodic run numerically and symbolically.
    VerifyDi(VerifyDiArgs),
    /// Certify a bipartite Y-system period.
    Ysystem(YsystemArgs),
    /// Build a rank-2 consistent scattering diagram.
    Csd(CsdArgs),
    /// Check a quantum dilogarithm identity.
    Qdi(QdiArgs),
    /// Run the acceptance suite.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct SeedInput {
    /// Exchange matrix JSON `{"b": [[...]], "delta": [...]}`.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// Mutation directions, 1-indexed.
    #[arg(long, value_delimiter = ',')]
    pub word: Vec<usize>,
    /// Symmetrizer; overrides the one in the matrix file.
    #[arg(long, value_delimiter = ',')]
    pub delta: Vec<i64>,
}

#[derive(Debug, Args)]
pub struct MutateArgs {
    #[command(flatten)]
    pub seed: SeedInput,
}

#[derive(Debug, Args)]
pub struct VerifyDiArgs {
    /// A run JSON as emitted by `mutate`; replaces `--matrix`/`--word`.
    #[arg(long, conflicts_with = "matrix")]
    pub run: Option<PathBuf>,
    #[command(flatten)]
    pub seed: SeedInput,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long = "rng-seed", default_value_t = 0)]
    pub rng_seed: u64,
    /// Also check that the wedge sum vanishes.
    #[arg(long)]
    pub wedge: bool,
    /// Also check the stepwise V(t) relation and its closure.
    #[arg(long)]
    pub vt: bool,
}

#[derive(Debug, Args)]
pub struct YsystemArgs {
    #[arg(long = "X")]
    pub x: String,
    #[arg(long = "Xp")]
    pub xp: String,
    #[arg(long, value_enum, default_value_t = YsystemMode::Tropical)]
    pub mode: YsystemMode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum YsystemMode {
    Tropical,
    Symbolic,
}

#[derive(Debug, Args)]
pub struct CsdArgs {
    #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
    pub delta: Vec<i64>,
    #[arg(long, default_value_t = 12)]
    pub degree: i64,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("target").required(true).args(["type", "case"])))]
pub struct QdiArgs {
    #[arg(long = "type", id = "type", value_enum, ignore_case = true)]
    pub finite: Option<FiniteType>,
    #[arg(long, value_enum, default_value_t = QdiForm::Tropical)]
    pub form: QdiForm,
    #[arg(long, value_enum, ignore_case = true)]
    pub case: Option<QdiCase>,
    #[arg(long, default_value_t = 8)]
    pub degree: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FiniteType {
    A2,
    B2,
    G2,
}

impl FiniteType {
    /// `(δ₂, period)` of the alternating rank-2 run.
    fn data(self) -> (i64, usize) {
        match self {
            FiniteType::A2 => (1, 5),
            FiniteType::B2 => (2, 6),
            FiniteType::G2 => (3, 8),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum QdiForm {
    Tropical,
    Universal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum QdiCase {
    A1affine,
    A2twisted,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Criterion ids to run; all when empty.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<u8>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{identity} failed{}: {detail}", residual.as_ref().map(|r| format!(" (residual {r})")).unwrap_or_default())]
    Verification { identity: String, residual: Option<String>, detail: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification { .. } => 2,
            _ => 1,
        }
    }

    fn failed(identity: &str, residual: Option<String>, detail: impl ToString) -> Self {
        CliError::Verification { identity: identity.to_string(), residual, detail: detail.to_string() }
    }

    fn usage(e: impl ToString) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// A finished command: exit code, JSON report and its text rendering.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub report: Value,
    pub text: String,
}

impl Outcome {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.report).expect("reports serialize") + "\n",
            Format::Text => self.text.clone(),
        }
    }
}

/// Parses `args` (program name first), runs the command and writes the
/// report. Returns the exit code and the rendered report or usage message.
pub fn execute<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            return (code, e.to_string());
        }
    };
    let outcome = run_command(&cli);
    let rendered = outcome.render(cli.format);
    if let Some(path) = &cli.out {
        if let Err(e) = fs::write(path, &rendered) {
            return (1, format!("{}: {e}\n", path.display()));
        }
    }
    (outcome.code, rendered)
}

/// Runs a parsed command.
pub fn run_command(cli: &Cli) -> Outcome {
    let name = command_name(&cli.command);
    let result = match &cli.command {
        Command::Mutate(a) => mutate(a),
        Command::VerifyDi(a) => verify_di(a),
        Command::Ysystem(a) => ysystem(a),
        Command::Csd(a) => csd(a),
        Command::Qdi(a) => qdi(a),
        Command::Selftest(a) => selftest(a),
    };
    let (code, mut report, text) = match result {
        Ok((body, text)) => (0, body, text),
        Err((e, partial)) => {
            let mut body = partial.unwrap_or_else(|| json!({}));
            let failure = match &e {
                CliError::Verification { identity, residual, detail } => {
                    json!({ "identity": identity, "residual": residual, "detail": detail })
                }
                other => json!({ "error": other.to_string() }),
            };
            body["failure"] = failure;
            (e.exit_code(), body, format!("{name}: {e}\n"))
        }
    };
    report["schema"] = json!(SCHEMA);
    report["command"] = json!(name);
    report["passed"] = json!(code == 0);
    Outcome { code, report, text }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Mutate(_) => "mutate",
        Command::VerifyDi(_) => "verify-di",
        Command::Ysystem(_) => "ysystem",
        Command::Csd(_) => "csd",
        Command::Qdi(_) => "qdi",
        Command::Selftest(_) => "selftest",
    }
}

/// Report body and text on success; the error with any partial body on failure.
type CmdResult = Result<(Value, String), (CliError, Option<Value>)>;

fn read_json(path: &PathBuf) -> Result<Value, CliError> {
    let s = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
    serde_json::from_str(&s).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Builds a word from a matrix JSON value and 1-indexed directions.
fn build_word(matrix: &Value, word: &[usize], delta: &[i64]) -> Result<MutationWord, CliError> {
    let (m, file_delta) = ExchangeMatrix::from_json(matrix).map_err(CliError::usage)?;
    if word.is_empty() {
        return Err(CliError::usage("empty mutation word"));
    }
    if let Some(&k) = word.iter().find(|&&k| k == 0 || k > m.rank()) {
        return Err(CliError::usage(format!("direction {k} outside 1..={}", m.rank())));
    }
    let dirs = word.iter().map(|k| k - 1).collect();
    let delta = if delta.is_empty() { file_delta } else { Some(delta.to_vec()) };
    match delta {
        Some(d) => {
            let dec = m.decompose_with(&d).map_err(CliError::usage)?;
            MutationWord::with_decomposition(m, dec, dirs)
        }
        None => MutationWord::new(m, dirs),
    }
    .map_err(CliError::usage)
}

fn seed_run(seed: &SeedInput) -> Result<PatternRun, CliError> {
    let path = seed.matrix.as_ref().ok_or_else(|| CliError::usage("--matrix is required"))?;
    let w = build_word(&read_json(path)?, &seed.word, &seed.delta)?;
    run_pattern(&w).map_err(CliError::usage)
}

fn mutate(a: &MutateArgs) -> CmdResult {
    let run = seed_run(&a.seed).map_err(|e| (e, None))?;
    let period = run.detect_period();
    let text = format!(
        "{} steps, word {:?}, signs {:?}, {}\n",
        run.len(),
        run.word.dirs.iter().map(|k| k + 1).collect::<Vec<_>>(),
        run.eps,
        match &period {
            Some(nu) => format!("periodic with ν = {}", nu.to_json()),
            None => "not periodic".to_string(),
        }
    );
    let mut body = json!({ "run": run.to_json() });
    body["period"] = period.map(|nu| nu.to_json()).unwrap_or(Value::Null);
    Ok((body, text))
}

fn di_error(e: DilogError) -> CliError {
    match e {
        DilogError::ToleranceExceeded { identity, residual, sample } => {
            CliError::failed(identity, Some(format!("{residual:e}")), format!("at sample {sample:?}"))
        }
        DilogError::NonZeroWedge(n) => CliError::failed("wedge sum", None, format!("{n} surviving pairs")),
        DilogError::StepMismatch(s) => CliError::failed("V(t) relation", None, format!("step {s}")),
        DilogError::NotPeriodic => CliError::failed("periodicity", None, e),
        other => CliError::usage(other),
    }
}

fn verify_di(a: &VerifyDiArgs) -> CmdResult {
    let run = match &a.run {
        Some(path) => {
            let v = read_json(path).map_err(|e| (e, None))?;
            // Accept a bare run or a full `mutate` report.
            let v = if v.get("run").is_some() { v["run"].clone() } else { v };
            let word: Vec<usize> = v["word"]
                .as_array()
                .map(|w| w.iter().filter_map(|k| k.as_u64().map(|k| k as usize)).collect())
                .unwrap_or_default();
            let matrix = json!({ "b": v["matrix"], "delta": v["delta"] });
            let w = build_word(&matrix, &word, &a.seed.delta).map_err(|e| (e, None))?;
            run_pattern(&w).map_err(|e| (CliError::usage(e), None))?
        }
        None => seed_run(&a.seed).map_err(|e| (e, None))?,
    };
    if a.samples == 0 || !(a.tol > 0.0) {
        return Err((CliError::usage("--samples and --tol must be positive"), None));
    }
    let nu = run
        .detect_period()
        .ok_or_else(|| (CliError::failed("periodicity", None, "the run does not return to a permuted initial seed"), None))?;
    let rep = verify_period_di(&run, &nu, a.samples, a.tol, a.rng_seed).map_err(|e| (di_error(e), None))?;
    let n = rep.constant_term;
    let mut body = rep.to_json();
    body["nu"] = nu.to_json();
    body["tolerance"] = json!(a.tol);
    body["constant"] = json!(format!("{n}·π²/6"));
    body["constant_rational"] = json!({ "numerator": n, "denominator": 6, "times": "pi^2" });
    body["constant_value"] = json!(n as f64 * PI2_6);
    let mut text = format!(
        "periodic with ν = {}; (N₊, N₋) = ({}, {}); constant {n}·π²/6; worst residual {:.2e} over {} samples\n",
        nu.to_json(),
        rep.weights.n_plus,
        rep.weights.n_minus,
        rep.max_abs_residual.iter().fold(0.0f64, |x, &y| x.max(y)),
        rep.samples
    );
    if a.wedge {
        match wedge_check(&run) {
            Ok(_) => {
                body["wedge"] = json!({ "zero": true });
                text.push_str("wedge sum vanishes\n");
            }
            Err(e) => return Err((di_error(e), Some(body))),
        }
    }
    if a.vt {
        match vt_check(&run) {
            Ok(vt) => {
                body["vt"] = json!({ "steps_checked": vt.steps_checked, "closes": vt.closes });
                text.push_str(&format!("V(t) relation holds at {} steps and closes\n", vt.steps_checked));
            }
            Err(e) => return Err((di_error(e), Some(body))),
        }
    }
    Ok((body, text))
}

fn ysystem_error(e: YSystemError) -> CliError {
    match e {
        YSystemError::Period(_) | YSystemError::Factorization { .. } | YSystemError::BudgetExceeded(_) | YSystemError::QuiverShape => {
            CliError::failed("Y-system periodicity", None, e)
        }
        YSystemError::Dilog(d) => di_error(d),
        other => CliError::usage(other),
    }
}

fn ysystem(a: &YsystemArgs) -> CmdResult {
    let parse = |s: &str| DynkinType::parse(s).ok_or_else(|| (CliError::usage(format!("unknown Dynkin type {s}")), None));
    let (x, xp) = (parse(&a.x)?, parse(&a.xp)?);
    match a.mode {
        YsystemMode::Tropical => {
            let rep = tropical_run(&x, &xp).map_err(|e| (ysystem_error(e), None))?;
            let text = format!(
                "({}, {}): period {}, ν = {}, (ω, ω′) used: {}, (N₊, N₋) = ({}, {})\n",
                x.name(),
                xp.name(),
                rep.period,
                rep.nu.to_json(),
                rep.omega_pair_used,
                rep.weights.n_plus,
                rep.weights.n_minus
            );
            Ok((rep.to_json(), text))
        }
        YsystemMode::Symbolic => {
            let rep = symbolic_half_periodicity(&x, &xp, DEFAULT_TERM_BUDGET).map_err(|e| (ysystem_error(e), None))?;
            let half = x.coxeter_number + xp.coxeter_number;
            let body = json!({
                "X": x.name(),
                "Xp": xp.name(),
                "half_period": half,
                "nu": rep.quiver.omega_pair().to_json(),
                "steps": rep.run.len(),
                "max_terms": rep.max_terms,
            });
            let text = format!(
                "({}, {}): F-polynomial half period {half} certified, largest seed {} terms\n",
                x.name(),
                xp.name(),
                rep.max_terms
            );
            Ok((body, text))
        }
    }
}

fn diagram_text(d: &Rank2Diagram) -> String {
    let mut out = String::new();
    for w in &d.walls {
        let factors: Vec<String> = w.factors.iter().map(|f| format!("[{},{}]^{}", f.n.0[0], f.n.0[1], f.exponent)).collect();
        out.push_str(&format!(
            "{} [{},{}] normal [{},{}]: {}\n",
            if w.full_line { "line" } else { "ray " },
            w.ray[0],
            w.ray[1],
            w.normal.0[0],
            w.normal.0[1],
            factors.join(" ")
        ));
    }
    out
}

fn csd(a: &CsdArgs) -> CmdResult {
    let [d1, d2] = a.delta[..] else {
        return Err((CliError::usage("--delta takes two entries d1,d2"), None));
    };
    let d = build_rank2_csd((d1, d2), a.degree).map_err(|e| match e {
        ScatterError::BadDelta(_) => (CliError::usage(format!("{e}; degree must be positive")), None),
        other => (CliError::failed("consistent diagram", None, other), None),
    })?;
    let mut body = d.to_json();
    body["positive"] = json!(d.is_positive_realization());
    Ok((body, diagram_text(&d)))
}

fn quantum_error(e: QuantumError) -> CliError {
    match e {
        QuantumError::IdentityFails { identity, exponent, residual } => {
            CliError::failed(&identity, Some(residual), format!("first difference at Y^{exponent}"))
        }
        QuantumError::LimitMismatch(_) | QuantumError::NotPeriodic | QuantumError::TruncationLoss => {
            CliError::failed("quantum identity", None, e)
        }
        other => CliError::usage(other),
    }
}

fn qdi(a: &QdiArgs) -> CmdResult {
    if a.degree < 1 {
        return Err((CliError::usage("--degree must be positive"), None));
    }
    let rep: QReport = match (a.finite, a.case) {
        (Some(t), None) => {
            let (d2, len) = t.data();
            let run = MutationWord::alternating(ExchangeMatrix::rank2(1, d2), len)
                .and_then(|w| run_pattern(&w))
                .map_err(|e| (CliError::usage(e), None))?;
            match a.form {
                QdiForm::Tropical => verify_qdi_tropical(&run, a.degree),
                QdiForm::Universal => verify_qdi_universal(&run, a.degree),
            }
        }
        (None, Some(c)) => qcsd_wall_identity(
            match c {
                QdiCase::A1affine => QcsdCase::A1Affine,
                QdiCase::A2twisted => QcsdCase::A2Twisted,
            },
            a.degree,
        ),
        _ => return Err((CliError::usage("give exactly one of --type and --case"), None)),
    }
    .map_err(|e| (quantum_error(e), None))?;
    let text = format!("{} holds at degree {}: {} checks\n", rep.name, rep.degree, rep.checks.len());
    Ok((rep.to_json(), text))
}

fn selftest(a: &SelftestArgs) -> CmdResult {
    let outcomes = acceptance::run_selected(&a.only);
    if outcomes.is_empty() {
        return Err((CliError::usage("no criteria selected"), None));
    }
    let text: String = outcomes.iter().map(|o| o.line() + "\n").collect();
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let body = json!({
        "criteria": outcomes.iter().map(|o| o.to_json()).collect::<Vec<_>>(),
        "total": outcomes.len(),
        "passed_count": passed,
    });
    match outcomes.iter().find(|o| !o.passed) {
        None => Ok((body, text + &format!("{passed}/{} criteria passed\n", outcomes.len()))),
        Some(o) => Err((CliError::failed(&format!("criterion {}: {}", o.id, o.title), None, &o.detail), Some(body))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("cdl").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn defaults() {
        match parse(&["verify-di", "--run", "r.json"]).command {
            Command::VerifyDi(a) => assert_eq!((a.samples, a.tol, a.rng_seed), (100, 1e-9, 0)),
            c => panic!("{c:?}"),
        }
        match parse(&["csd", "--delta", "1,3"]).command {
            Command::Csd(a) => assert_eq!((a.delta, a.degree), (vec![1, 3], 12)),
            c => panic!("{c:?}"),
        }
        match parse(&["qdi", "--type", "G2"]).command {
            Command::Qdi(a) => assert_eq!((a.finite, a.form, a.degree), (Some(FiniteType::G2), QdiForm::Tropical, 8)),
            c => panic!("{c:?}"),
        }
        assert_eq!(parse(&["selftest", "--format", "text"]).format, Format::Text);
    }

    #[test]
    fn run_and_matrix_conflict() {
        assert!(Cli::try_parse_from(["cdl", "verify-di", "--run", "a", "--matrix", "b"]).is_err());
    }

    #[test]
    fn words_are_one_indexed() {
        let m = json!({ "b": [[0, -1], [1, 0]] });
        assert_eq!(build_word(&m, &[1, 2, 1], &[]).unwrap().dirs, vec![0, 1, 0]);
        assert!(matches!(build_word(&m, &[0], &[]), Err(CliError::Usage(_))));
        assert!(matches!(build_word(&m, &[1], &[1, 3]), Err(CliError::Usage(_))));
    }
}
