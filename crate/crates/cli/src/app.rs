//! Command definitions and dispatch.
//!
//! Exit status: 0 success or verdict true, 1 verdict false, 2 input error,
//! 3 genericity or degradation failure.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use linesing_core::lenumbers::{
    analyze, AnalysisConfig, AnalysisExtras, LeError, LineSingularityInput, Parametrization,
};
use linesing_core::morse::{
    check_trace_constraints, equality_criterion, euler_relation, theorem_3_3, validate_monodromy, MorseError, MorseSes,
};
use linesing_core::mvcat::{
    dual_triangle, is_isomorphic, punctured_hypercohomology, siersma_sum_test, stalk_cohomology, IsoOutcome, MvError,
    MvTriangle, TriangleViolation, DEFAULT_ISO_TRIALS,
};
use linesing_core::polyalg::{MPoly, PolyError};
use linesing_core::Field;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::format::{
    matrix_rows, parse_field, to_json, FormatError, MatrixFile, MonodromyFile, MorseSesFile, ParametrizationFile, Rows,
    TriangleFile, SCHEMA_VERSION,
};
use crate::parse::{identifiers, parse_polynomial, ParseError};
use crate::report::{
    AnalyzeReport, Certificate, ErrorReport, IsoReport, MonodromyCheck, Morphism, MorseReport, Obstruction,
    ObstructionReport, Stalk, TextReport, TriangleReport,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERDICT_FALSE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_DEGRADED: u8 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "linesing",
    version,
    about = "Lê numbers, M-V triangles and Morse obstructions for line singularities"
)]
pub struct Cli {
    /// Coefficient field for matrix files: q or fp:<prime>.
    #[arg(long, global = true, value_parser = parse_field_arg)]
    pub field: Option<Field>,
    /// Seed for every random choice (slice samples, isomorphism search).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_field_arg(s: &str) -> Result<Field, String> {
    parse_field(s).map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Milnor and Lê numbers of a polynomial whose critical locus is an axis.
    Analyze {
        /// The polynomial, e.g. "y^2 - x^3 - t^2*x^2".
        polynomial: String,
        /// Variable whose axis is the critical line.
        #[arg(long)]
        axis: String,
        /// Slicing linear form; only the axis variable itself is supported.
        #[arg(long)]
        linear_form: Option<String>,
        /// Comma-separated variable list (default: the axis, then the other
        /// variables sorted).
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
        /// Fixed staircase truncation degree (default: 16, 32, 64 in turn).
        #[arg(long)]
        truncation: Option<usize>,
        /// Generic slices sampled for λ¹ (at least 3).
        #[arg(long, default_value_t = 3)]
        samples: usize,
        /// Internal monodromy ν as a matrix file.
        #[arg(long)]
        nu: Option<PathBuf>,
        /// Morse sequence file; requires --monodromy.
        #[arg(long, requires = "monodromy")]
        morse: Option<PathBuf>,
        /// Monodromy file for --morse.
        #[arg(long, requires = "morse")]
        monodromy: Option<PathBuf>,
        /// Polar-curve parametrization file, for curves the monomial
        /// factor removal cannot handle.
        #[arg(long)]
        parametrization: Option<PathBuf>,
    },
    /// Validate a triangle file and report its stalk cohomology.
    TriangleCheck { triangle: PathBuf },
    /// Print the dual (transposed) triangle as a triangle file.
    Dual { triangle: PathBuf },
    /// Search for an isomorphism between two triangles.
    Isomorphic {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ISO_TRIALS)]
        trials: usize,
    },
    /// Validate a Morse sequence file, optionally with its monodromy.
    MorseCheck {
        ses: PathBuf,
        #[arg(long)]
        monodromy: Option<PathBuf>,
    },
    /// Cohomology bounds and trace obstruction from Morse data and monodromy.
    Obstruction { ses: PathBuf, monodromy: PathBuf },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analyze { .. } => "analyze",
            Command::TriangleCheck { .. } => "triangle-check",
            Command::Dual { .. } => "dual",
            Command::Isomorphic { .. } => "isomorphic",
            Command::MorseCheck { .. } => "morse-check",
            Command::Obstruction { .. } => "obstruction",
        }
    }
}

/// What a command prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: u8,
    pub stdout: String,
    pub stderr: String,
}

/// A failure with its exit status and, for axiom violations, the residual.
#[derive(Debug)]
pub struct Failure {
    pub status: u8,
    pub message: String,
    pub residual: Option<Rows>,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure {
            status: EXIT_INPUT,
            message: message.to_string(),
            residual: None,
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::input(e)
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::input(format!("polynomial: {e}"))
    }
}

impl From<MvError> for Failure {
    fn from(e: MvError) -> Self {
        let residual = match &e {
            MvError::InvalidTriangle(TriangleViolation::VariationIdentity { residual }) => Some(matrix_rows(residual)),
            _ => None,
        };
        let status = if matches!(e, MvError::Internal(_)) {
            EXIT_DEGRADED
        } else {
            EXIT_INPUT
        };
        Failure {
            status,
            message: e.to_string(),
            residual,
        }
    }
}

impl From<MorseError> for Failure {
    fn from(e: MorseError) -> Self {
        let residual = match &e {
            MorseError::Commuting { residual, .. } => Some(matrix_rows(residual)),
            MorseError::Triangle {
                source: MvError::InvalidTriangle(TriangleViolation::VariationIdentity { residual }),
                ..
            } => Some(matrix_rows(residual)),
            _ => None,
        };
        let status = if matches!(e, MorseError::Internal(_)) {
            EXIT_DEGRADED
        } else {
            EXIT_INPUT
        };
        Failure {
            status,
            message: e.to_string(),
            residual,
        }
    }
}

impl From<LeError> for Failure {
    fn from(e: LeError) -> Self {
        match e {
            LeError::Morse(m) => m.into(),
            e => Failure {
                status: if e.is_degradation() { EXIT_DEGRADED } else { EXIT_INPUT },
                message: e.to_string(),
                residual: None,
            },
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {}", path.display(), FormatError::Json(e))))
}

fn load_triangle(path: &Path, field: Option<Field>) -> Result<MvTriangle, Failure> {
    let raw = load::<TriangleFile>(path)?
        .raw(field)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    Ok(MvTriangle::new(raw.nu, raw.gamma, raw.delta)?)
}

fn load_ses(path: &Path, field: Option<Field>) -> Result<MorseSes, Failure> {
    let data = load::<MorseSesFile>(path)?
        .data(field)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    Ok(MorseSes::build(data)?)
}

fn load_monodromy(path: &Path, field: Option<Field>) -> Result<linesing_core::morse::MonodromyAction, Failure> {
    load::<MonodromyFile>(path)?
        .action(field)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

/// A report plus the exit status it implies.
struct Rendered {
    status: u8,
    json: String,
    text: String,
}

fn rendered<T: Serialize + TextReport>(status: u8, report: &T) -> Rendered {
    Rendered {
        status,
        json: to_json(report),
        text: report.text(),
    }
}

/// Runs a parsed command.
pub fn run(cli: &Cli) -> Outcome {
    let name = cli.command.name();
    match dispatch(cli) {
        Ok(r) => Outcome {
            status: r.status,
            stdout: match cli.format {
                Format::Json => r.json,
                Format::Text => r.text,
            },
            stderr: String::new(),
        },
        Err(f) => {
            let report = ErrorReport {
                schema_version: SCHEMA_VERSION,
                command: name.into(),
                status: f.status,
                error: f.message,
                residual: f.residual,
            };
            let text = report.text();
            Outcome {
                status: f.status,
                stdout: match cli.format {
                    Format::Json => to_json(&report),
                    Format::Text => String::new(),
                },
                stderr: text,
            }
        }
    }
}

/// Parses `args` (including the program name) and runs them.
pub fn run_args<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let status = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    status,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    status,
                    stdout: text,
                    stderr: String::new(),
                }
            }
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Rendered, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let field = cli.field;
    match &cli.command {
        Command::Analyze {
            polynomial,
            axis,
            linear_form,
            vars,
            truncation,
            samples,
            nu,
            morse,
            monodromy,
            parametrization,
        } => {
            let vars = match vars {
                Some(v) => v.clone(),
                None => default_vars(polynomial, axis)?,
            };
            let var_refs: Vec<&str> = vars.iter().map(String::as_str).collect();
            let f = parse_polynomial(polynomial, &var_refs)?;
            let form = linear_form.clone().unwrap_or_else(|| axis.clone());
            let inp = LineSingularityInput::new(f, axis, &form)?;
            let cfg = AnalysisConfig {
                truncation: *truncation,
                slice_samples: (*samples).max(3),
                ..AnalysisConfig::default()
            };
            let mut extras = AnalysisExtras::default();
            if let Some(p) = nu {
                let file: MatrixFile = load(p)?;
                extras.nu = Some(
                    file.matrix(field)
                        .map_err(|e| Failure::input(format!("{}: {e}", p.display())))?,
                );
            }
            if let (Some(s), Some(m)) = (morse, monodromy) {
                extras.morse = Some((load_ses(s, field)?, load_monodromy(m, field)?));
            }
            if let Some(p) = parametrization {
                extras.parametrization = Some(load_parametrization(p, &inp)?);
            }
            let report = analyze(&inp, &cfg, &extras, &mut rng)?;
            let out = AnalyzeReport::new(&report, &form, cli.seed, *truncation);
            let witnessed = out
                .obstruction
                .as_ref()
                .is_some_and(|o| o.contradiction_witness.is_some());
            let status = if out.hypothesis_3_3 && !witnessed {
                EXIT_OK
            } else {
                EXIT_VERDICT_FALSE
            };
            Ok(rendered(status, &out))
        }
        Command::TriangleCheck { triangle } => {
            let t = load_triangle(triangle, field)?;
            let report = TriangleReport {
                schema_version: SCHEMA_VERSION,
                command: "triangle-check".into(),
                field: t.field().to_string(),
                dim_v: t.dim_v(),
                dim_w: t.dim_w(),
                valid: true,
                stalk: Stalk::from(stalk_cohomology(&t)),
                punctured: punctured_hypercohomology(&t)?,
                split_sum: siersma_sum_test(&t, &mut rng)?,
            };
            Ok(rendered(EXIT_OK, &report))
        }
        Command::Dual { triangle } => {
            let t = load_triangle(triangle, field)?;
            let file = TriangleFile::from_triangle(&dual_triangle(&t));
            let text = format!(
                "dual over {}: ν = {}, γ = {}, δ = {}\n",
                t.field(),
                dual_triangle(&t).nu(),
                dual_triangle(&t).gamma(),
                dual_triangle(&t).delta()
            );
            Ok(Rendered {
                status: EXIT_OK,
                json: to_json(&file),
                text,
            })
        }
        Command::Isomorphic { left, right, trials } => {
            let a = load_triangle(left, field)?;
            let b = load_triangle(right, field)?;
            let outcome = is_isomorphic(&a, &b, &mut rng, *trials)?;
            let (status, report) = match &outcome {
                IsoOutcome::Isomorphic(m) => (
                    EXIT_OK,
                    IsoReport {
                        schema_version: SCHEMA_VERSION,
                        command: "isomorphic".into(),
                        field: a.field().to_string(),
                        isomorphic: true,
                        witness: Some(Morphism::from(m)),
                        certificate: None,
                    },
                ),
                IsoOutcome::NotIsomorphic(c) => (
                    if c.is_proof() {
                        EXIT_VERDICT_FALSE
                    } else {
                        EXIT_DEGRADED
                    },
                    IsoReport {
                        schema_version: SCHEMA_VERSION,
                        command: "isomorphic".into(),
                        field: a.field().to_string(),
                        isomorphic: false,
                        witness: None,
                        certificate: Some(Certificate::from(c)),
                    },
                ),
            };
            Ok(rendered(status, &report))
        }
        Command::MorseCheck { ses, monodromy } => {
            let s = load_ses(ses, field)?;
            let mono = match monodromy {
                None => None,
                Some(p) => {
                    let t = load_monodromy(p, field)?;
                    validate_monodromy(&s, &t)?;
                    Some(MonodromyCheck {
                        n: t.n,
                        equivariant_and_invertible: true,
                        trace_constraints: check_trace_constraints(&t)?,
                    })
                }
            };
            let r = s.right_triangle();
            let report = MorseReport {
                schema_version: SCHEMA_VERSION,
                command: "morse-check".into(),
                field: s.field().to_string(),
                mu0: s.mu0(),
                lambda1: s.lambda1(),
                lambda0: s.lambda0(),
                zeta: s.zeta(),
                gamma: matrix_rows(s.gamma()),
                stalk: Stalk::from(stalk_cohomology(&r)),
                equality_criterion: equality_criterion(&s)?,
                euler_relation: euler_relation(&s),
                monodromy: mono,
            };
            Ok(rendered(EXIT_OK, &report))
        }
        Command::Obstruction { ses, monodromy } => {
            let s = load_ses(ses, field)?;
            let t = load_monodromy(monodromy, field)?;
            let v = theorem_3_3(&s, &t)?;
            let verdict = Obstruction::from(&v);
            let status = if verdict.contradiction_witness.is_some() {
                EXIT_VERDICT_FALSE
            } else {
                EXIT_OK
            };
            let report = ObstructionReport {
                schema_version: SCHEMA_VERSION,
                command: "obstruction".into(),
                field: s.field().to_string(),
                n: t.n,
                mu0: s.mu0(),
                lambda1: s.lambda1(),
                lambda0: s.lambda0(),
                verdict,
            };
            Ok(rendered(status, &report))
        }
    }
}

/// The axis first, then the remaining identifiers sorted.
fn default_vars(polynomial: &str, axis: &str) -> Result<Vec<String>, Failure> {
    let mut rest: Vec<String> = identifiers(polynomial)?.into_iter().filter(|v| v != axis).collect();
    rest.sort();
    let mut vars = vec![axis.to_string()];
    vars.extend(rest);
    if vars.len() != 3 {
        return Err(Failure::input(format!(
            "expected three variables including the axis, found {:?}; pass --vars",
            vars
        )));
    }
    Ok(vars)
}

fn load_parametrization(path: &Path, inp: &LineSingularityInput) -> Result<Parametrization, Failure> {
    let file: ParametrizationFile = load(path)?;
    file.check()
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let vars: Vec<&str> = inp.f().vars();
    let parse = |text: &str, which: &str| -> Result<MPoly, Failure> {
        let p =
            parse_polynomial(text, &vars).map_err(|e| Failure::input(format!("{}: {which}: {e}", path.display())))?;
        if p.support_vars().iter().any(|&i| i != 0) {
            return Err(Failure::input(format!(
                "{}: {which} must be a polynomial in the axis variable {} only",
                path.display(),
                inp.axis()
            )));
        }
        Ok(p)
    };
    Ok(Parametrization {
        u: parse(&file.u, "u")?,
        v: parse(&file.v, "v")?,
        truncation: file.truncation,
    })
}

impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Self {
        LeError::from(e).into()
    }
}
