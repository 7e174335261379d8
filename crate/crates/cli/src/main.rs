//! algint: exact integration functionals over finite-dimensional algebras.
//!
//! Subcommands load algebra files (structure constants as JSON), decide and
//! construct integration measures, verify automorphism/derivation laws, and
//! build tensor-star products for second-kind integration. Reports render as
//! a flat table or, with --json, as schema-1 JSON that is byte-identical for
//! identical inputs.
//!
//! Exit codes: 0 ok, 1 usage or file/parse error, 2 no measure exists,
//! 3 infeasible gauge pins, 4 not an automorphism / not a derivation,
//! 5 internal invariant failure.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use algint_core::algebra::FiniteAlgebra;
use algint_core::catalog;
use algint_core::error::{MeasureError, SymmetryError, TensorError};
use algint_core::expr::eval_expression;
use algint_core::matrix::{matrix_from_json, Matrix};
use algint_core::measure::{find_measure, moment_space, Measure, MeasureFile};
use algint_core::reps::{build_reps, RepReport, RepWitness};
use algint_core::scalar::Scalar;
use algint_core::symmetry::{
    by_parts, check_automorphism, check_derivation, scale_factor, verify_measure_transform,
};
use algint_core::tensor::{build_tensor, second_kind_functional_for};

use report::{digest_bytes, InputDigest, Report};

#[derive(Parser)]
#[command(
    name = "algint",
    version,
    about = "Exact integration functionals over finite-dimensional algebras",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a benchmark algebra file (grassmann N, paragrassmann P, complex,
    /// quaternions, octonions, su2)
    Catalog {
        name: String,
        params: Vec<u32>,
        /// Write the algebra file here instead of stdout
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Structural report: property flags and the multiplication-matrix
    /// identities with counterexample witnesses
    Inspect {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide existence of the integration functional and construct it
    Measure {
        file: PathBuf,
        /// Gauge pin K=P/Q (repeatable), e.g. --pin 0=0 --pin 1=1
        #[arg(long = "pin", value_name = "K=P/Q")]
        pins: Vec<String>,
        /// Write the measure file here
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Integrate an element expression against a saved measure
    Integrate {
        file: PathBuf,
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        element: String,
        #[arg(long)]
        json: bool,
    },
    /// Check a matrix for the automorphism property; with a measure, compute
    /// the scale factor k and verify the transformed functional
    Auto {
        file: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        measure: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Check a matrix for the Leibniz rule; with a measure, test integration
    /// by parts (D mu = 0) and the exponentiated cross-check
    Derivation {
        file: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        measure: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Build the tensor product with a star copy and write it as an algebra
    /// file
    Tensor {
        file: PathBuf,
        /// Adjoin the star copy (required; reserved for other products)
        #[arg(long)]
        star: bool,
        #[arg(short, long)]
        out: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the second-kind functional (moments delta_ij) on a
    /// tensor-star algebra file
    Integrate2 {
        file: PathBuf,
        #[arg(long)]
        element: String,
        #[arg(long)]
        json: bool,
    },
}

struct CliError {
    code: i32,
    message: String,
    findings: Value,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
            findings: json!({}),
        }
    }

    fn with_findings(code: i32, message: impl Into<String>, findings: Value) -> Self {
        CliError {
            code,
            message: message.into(),
            findings,
        }
    }
}

impl From<algint_core::AlgebraError> for CliError {
    fn from(e: algint_core::AlgebraError) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<algint_core::ExprError> for CliError {
    fn from(e: algint_core::ExprError) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<algint_core::CatalogError> for CliError {
    fn from(e: algint_core::CatalogError) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<MeasureError> for CliError {
    fn from(e: MeasureError) -> Self {
        let message = e.to_string();
        match e {
            MeasureError::NoMeasure { certified } => {
                CliError::with_findings(2, message, json!({ "certified": certified }))
            }
            MeasureError::GaugeInfeasible { reason } => {
                CliError::with_findings(3, message, json!({ "reason": reason }))
            }
            MeasureError::Internal(_) => CliError::with_findings(5, message, json!({})),
            _ => CliError::usage(message),
        }
    }
}

impl From<SymmetryError> for CliError {
    fn from(e: SymmetryError) -> Self {
        let message = e.to_string();
        match &e {
            SymmetryError::NotAnAutomorphism { i, j, k, lhs, rhs } => CliError::with_findings(
                4,
                message.clone(),
                json!({
                    "automorphism": false,
                    "witness": { "i": i, "j": j, "k": k, "lhs": lhs, "rhs": rhs }
                }),
            ),
            SymmetryError::NotADerivation { i, j, l, lhs, rhs } => CliError::with_findings(
                4,
                message.clone(),
                json!({
                    "derivation": false,
                    "witness": { "i": i, "j": j, "l": l, "lhs": lhs, "rhs": rhs }
                }),
            ),
            SymmetryError::NotInvertible => CliError::with_findings(4, message, json!({})),
            SymmetryError::Internal(_) => CliError::with_findings(5, message, json!({})),
            _ => CliError::usage(message),
        }
    }
}

impl From<TensorError> for CliError {
    fn from(e: TensorError) -> Self {
        CliError::usage(e.to_string())
    }
}

/// Tracks file reads so every report lists its inputs with content digests.
struct Inputs {
    entries: Vec<InputDigest>,
}

impl Inputs {
    fn new() -> Self {
        Inputs { entries: Vec::new() }
    }

    fn read(&mut self, path: &Path) -> Result<Vec<u8>, CliError> {
        let bytes = std::fs::read(path)
            .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
        self.entries.push(InputDigest {
            path: path.display().to_string(),
            sha256: digest_bytes(&bytes),
        });
        Ok(bytes)
    }

    fn load_algebra(&mut self, path: &Path) -> Result<FiniteAlgebra, CliError> {
        let bytes = self.read(path)?;
        Ok(FiniteAlgebra::from_json(&bytes)?)
    }

    fn load_matrix(&mut self, path: &Path) -> Result<Matrix, CliError> {
        let bytes = self.read(path)?;
        let value: Value = serde_json::from_slice(&bytes)
            .map_err(|e| CliError::usage(format!("invalid matrix JSON in {}: {e}", path.display())))?;
        matrix_from_json(&value).map_err(|e| CliError::usage(e.to_string()))
    }

    fn load_measure_file(&mut self, path: &Path) -> Result<MeasureFile, CliError> {
        let bytes = self.read(path)?;
        serde_json::from_slice(&bytes)
            .map_err(|e| CliError::usage(format!("invalid measure file {}: {e}", path.display())))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprintln!("error: {e}");
            eprintln!("hint: run `algint --help` for the command list");
            return ExitCode::from(1);
        }
    };

    let (command_name, json_flag) = describe(&cli.command);
    let mut inputs = Inputs::new();
    let result = dispatch(cli.command, &mut inputs);
    let (code, findings, message) = match result {
        Ok(RunOutput::Findings(findings)) => (0, findings, None),
        Ok(RunOutput::Raw(text)) => {
            print!("{text}");
            return ExitCode::SUCCESS;
        }
        Err(e) => (e.code, e.findings, Some(e.message)),
    };
    let report = Report::new(
        &command_name,
        inputs.entries.clone(),
        findings,
        code,
        message.as_deref(),
    );
    if json_flag {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.to_table());
    }
    if let Some(msg) = message {
        eprintln!("error: {msg}");
    }
    ExitCode::from(code.clamp(0, 255) as u8)
}

fn describe(command: &Command) -> (String, bool) {
    match command {
        Command::Catalog { json, .. } => ("catalog".to_string(), *json),
        Command::Inspect { json, .. } => ("inspect".to_string(), *json),
        Command::Measure { json, .. } => ("measure".to_string(), *json),
        Command::Integrate { json, .. } => ("integrate".to_string(), *json),
        Command::Auto { json, .. } => ("auto".to_string(), *json),
        Command::Derivation { json, .. } => ("derivation".to_string(), *json),
        Command::Tensor { json, .. } => ("tensor".to_string(), *json),
        Command::Integrate2 { json, .. } => ("integrate2".to_string(), *json),
    }
}

enum RunOutput {
    Findings(Value),
    /// verbatim payload (the catalog file when no -o is given)
    Raw(String),
}

fn dispatch(command: Command, inputs: &mut Inputs) -> Result<RunOutput, CliError> {
    match command {
        Command::Catalog { name, params, out, .. } => cmd_catalog(&name, &params, out.as_deref()),
        Command::Inspect { file, .. } => cmd_inspect(inputs, &file),
        Command::Measure { file, pins, out, .. } => cmd_measure(inputs, &file, &pins, out.as_deref()),
        Command::Integrate { file, measure, element, .. } => {
            cmd_integrate(inputs, &file, &measure, &element)
        }
        Command::Auto { file, matrix, measure, .. } => {
            cmd_auto(inputs, &file, &matrix, measure.as_deref())
        }
        Command::Derivation { file, matrix, measure, .. } => {
            cmd_derivation(inputs, &file, &matrix, measure.as_deref())
        }
        Command::Tensor { file, star, out, .. } => cmd_tensor(inputs, &file, star, &out),
        Command::Integrate2 { file, element, .. } => cmd_integrate2(inputs, &file, &element),
    }
}

fn cmd_catalog(name: &str, params: &[u32], out: Option<&Path>) -> Result<RunOutput, CliError> {
    let algebra = catalog::build(name, params)?;
    let payload = algebra.to_canonical_json();
    match out {
        Some(path) => {
            std::fs::write(path, &payload)
                .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))?;
            Ok(RunOutput::Findings(json!({
                "name": algebra.name(),
                "dim": algebra.dim(),
                "digest": algebra.digest(),
                "written": path.display().to_string(),
            })))
        }
        None => Ok(RunOutput::Raw(payload)),
    }
}

fn cmd_inspect(inputs: &mut Inputs, file: &Path) -> Result<RunOutput, CliError> {
    let algebra = inputs.load_algebra(file)?;
    let reps = build_reps(&algebra);
    let report = reps.check_identities().map_err(CliError::from)?;
    Ok(RunOutput::Findings(json!({
        "name": algebra.name(),
        "dim": algebra.dim(),
        "digest": algebra.digest(),
        "identityIndex": algebra.identity_index(),
        "abelian": algebra.is_abelian(),
        "associative": algebra.is_associative(),
        "repIdentities": {
            "a": report.transpose_relation,
            "b": report.x_homomorphism,
            "c": report.pi_homomorphism,
            "d": report.commutation,
        },
        "witnesses": witnesses_json(&report),
    })))
}

fn witnesses_json(report: &RepReport) -> Value {
    let render = |w: &Option<RepWitness>| -> Value {
        match w {
            None => Value::Null,
            Some(w) => json!({
                "i": w.i,
                "j": w.j,
                "row": w.row,
                "col": w.col,
                "lhs": w.lhs,
                "rhs": w.rhs,
            }),
        }
    };
    json!({
        "a": render(&report.witness_a),
        "b": render(&report.witness_b),
        "c": render(&report.witness_c),
        "d": render(&report.witness_d),
    })
}

fn parse_pins(pins: &[String]) -> Result<Vec<(usize, Scalar)>, CliError> {
    pins.iter()
        .map(|raw| {
            let (idx, value) = raw
                .split_once('=')
                .ok_or_else(|| CliError::usage(format!("pin {raw:?} is not of the form K=P/Q")))?;
            let index: usize = idx
                .trim()
                .parse()
                .map_err(|_| CliError::usage(format!("pin index {idx:?} is not an integer")))?;
            let scalar: Scalar = value
                .trim()
                .parse()
                .map_err(|e| CliError::usage(format!("pin value {value:?}: {e}")))?;
            Ok((index, scalar))
        })
        .collect()
}

fn matrix_json(m: &Matrix) -> Value {
    serde_json::to_value(m.to_row_vecs()).expect("matrix renders")
}

fn cmd_measure(
    inputs: &mut Inputs,
    file: &Path,
    pins: &[String],
    out: Option<&Path>,
) -> Result<RunOutput, CliError> {
    let algebra = inputs.load_algebra(file)?;
    let pins = parse_pins(pins)?;
    let space = moment_space(&algebra);
    let measure = find_measure(&algebra, &pins)?;
    if let Some(path) = out {
        let mut text =
            serde_json::to_string_pretty(&measure.to_file()).expect("measure file renders");
        text.push('\n');
        std::fs::write(path, text)
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(RunOutput::Findings(json!({
        "algebra": algebra.name(),
        "freeDim": space.free_dim(),
        "mu": measure.mu(),
        "M": matrix_json(measure.m()),
        "C": matrix_json(measure.c()),
        "gauge": measure.gauge(),
        "completeness": measure.verify_completeness().passed(),
    })))
}

fn cmd_integrate(
    inputs: &mut Inputs,
    file: &Path,
    measure_path: &Path,
    element: &str,
) -> Result<RunOutput, CliError> {
    let algebra = inputs.load_algebra(file)?;
    let measure_file = inputs.load_measure_file(measure_path)?;
    let measure = Measure::load(&algebra, &measure_file)?;
    let e = eval_expression(&algebra, element)?;
    let value = measure.integrate(&e)?;
    Ok(RunOutput::Findings(json!({
        "element": e.coeffs(),
        "value": value.to_canonical_string(),
    })))
}

fn cmd_auto(
    inputs: &mut Inputs,
    file: &Path,
    matrix: &Path,
    measure_path: Option<&Path>,
) -> Result<RunOutput, CliError> {
    let algebra = inputs.load_algebra(file)?;
    let s = inputs.load_matrix(matrix)?;
    let mut auto = check_automorphism(&algebra, s)?;
    let mut findings = serde_json::Map::new();
    findings.insert("automorphism".to_string(), json!(true));
    if let Some(path) = measure_path {
        let measure_file = inputs.load_measure_file(path)?;
        let measure = Measure::load(&algebra, &measure_file)?;
        match scale_factor(&mut auto, &measure) {
            Ok(k) => {
                findings.insert("k".to_string(), json!(k.to_canonical_string()));
                let transform = verify_measure_transform(&auto, &measure)?;
                findings.insert(
                    "transform".to_string(),
                    json!({
                        "muPrimed": transform.mu_primed,
                        "inMomentSpace": transform.in_moment_space,
                        "nonsingular": transform.nonsingular,
                        "completeness": transform
                            .completeness
                            .as_ref()
                            .map(|c| c.passed()),
                        "passed": transform.passed(),
                    }),
                );
            }
            Err(SymmetryError::NotScalar { t }) => {
                // a legitimate verdict, not an error: the k relation holds
                // only for scalar T (the paper's simple-algebra case)
                findings.insert("k".to_string(), Value::Null);
                findings.insert("notScalarT".to_string(), json!(t));
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(RunOutput::Findings(Value::Object(findings)))
}

fn cmd_derivation(
    inputs: &mut Inputs,
    file: &Path,
    matrix: &Path,
    measure_path: Option<&Path>,
) -> Result<RunOutput, CliError> {
    let algebra = inputs.load_algebra(file)?;
    let d = inputs.load_matrix(matrix)?;
    let derivation = check_derivation(&algebra, d)?;
    let mut findings = serde_json::Map::new();
    findings.insert("derivation".to_string(), json!(true));
    if let Some(path) = measure_path {
        let measure_file = inputs.load_measure_file(path)?;
        let measure = Measure::load(&algebra, &measure_file)?;
        let report = by_parts(&measure, &derivation)?;
        findings.insert(
            "byParts".to_string(),
            json!({
                "dMu": report.d_mu,
                "holds": report.holds,
                "nilpotent": report.nilpotent,
                "exponentiated": report.exponentiated.as_ref().map(|e| json!({
                    "automorphism": e.automorphism,
                    "k": e.k.as_ref().map(|k| k.to_canonical_string()),
                    "consistent": e.consistent,
                })),
            }),
        );
    }
    Ok(RunOutput::Findings(Value::Object(findings)))
}

fn cmd_tensor(
    inputs: &mut Inputs,
    file: &Path,
    star: bool,
    out: &Path,
) -> Result<RunOutput, CliError> {
    if !star {
        return Err(CliError::usage(
            "tensor currently only builds the star product; pass --star",
        ));
    }
    let algebra = inputs.load_algebra(file)?;
    let t = build_tensor(&algebra);
    let payload = t.product().to_canonical_json();
    std::fs::write(out, &payload)
        .map_err(|e| CliError::usage(format!("cannot write {}: {e}", out.display())))?;
    Ok(RunOutput::Findings(json!({
        "base": algebra.name(),
        "baseDim": algebra.dim(),
        "productDim": t.product().dim(),
        "digest": t.product().digest(),
        "written": out.display().to_string(),
    })))
}

fn cmd_integrate2(inputs: &mut Inputs, file: &Path, element: &str) -> Result<RunOutput, CliError> {
    let algebra = inputs.load_algebra(file)?;
    let functional = second_kind_functional_for(&algebra)?;
    let e = eval_expression(&algebra, element)?;
    let value = functional.integrate(&e).map_err(CliError::from)?;
    Ok(RunOutput::Findings(json!({
        "baseDim": functional.base_dim(),
        "element": e.coeffs(),
        "value": value.to_canonical_string(),
    })))
}
