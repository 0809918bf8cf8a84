//! The `chanrev` command line.
//!
//! [`run`] does all the work and returns the process exit code, so the
//! binary is a one-liner and the commands can be driven in-process.
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 2 | usage or parse error |
//! | 3 | invalid channel |
//! | 4 | reversal precondition failed (not unital, singular invariant state, wrong Kraus count, ...) |
//! | 5 | a fluctuation-relation residual exceeded the tolerance |

pub mod files;
pub mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::channel::QuantumChannel;
use crate::error::Error;
use crate::numkernel::ComplexMatrix;
use crate::reversal::{essential_map, reverse, ReversalMethod};
use crate::thermo::{crooks_from_table, jarzynski_from_table, transition_table, MeasurementPair, DEFAULT_BIN_TOL};
use crate::zoo::{self, Pauli, PauliChannelSpec};

use files::{FileError, FILE_TOL};
use report::{CheckReport, InfoReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVALID_CHANNEL: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;
pub const EXIT_RESIDUAL: i32 = 5;

/// Default threshold for the fluctuation-relation tripwire.
pub const RESIDUAL_TOL: f64 = 1e-8;

#[derive(Parser, Debug)]
#[command(
    name = "chanrev",
    version,
    about = "Time reversal of quantum channels and fluctuation-relation checks",
    after_help = "Exit codes: 0 success, 2 parse/usage, 3 invalid channel, 4 reversal precondition, 5 residual tripwire."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum MethodArg {
    Essential,
    Dual,
    Crooks,
    TwoKraus,
    Environmental,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ZooName {
    Pauli,
    Decaying,
    Depolarizing,
    Unitary,
    Random,
}

#[derive(clap::Args, Debug)]
struct MethodChoice {
    /// Reversal construction.
    #[arg(long, value_enum)]
    method: MethodArg,
    /// Index of the leading Kraus operator for `two-kraus`.
    #[arg(long, default_value_t = 0)]
    leading: usize,
}

impl MethodChoice {
    fn method(&self) -> ReversalMethod {
        match self.method {
            MethodArg::Essential => ReversalMethod::Essential,
            MethodArg::Dual => ReversalMethod::DualBistochastic,
            MethodArg::Crooks => ReversalMethod::Crooks,
            MethodArg::TwoKraus => ReversalMethod::TwoKraus { leading: self.leading },
            MethodArg::Environmental => ReversalMethod::Environmental,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension, canonical weights, predicates and invariant state.
    Info {
        file: PathBuf,
        /// Trace-preservation tolerance when reading the file.
        #[arg(long, default_value_t = FILE_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Write the reversed channel.
    Reverse {
        file: PathBuf,
        #[command(flatten)]
        method: MethodChoice,
        /// Output file (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Trace-preservation tolerance when reading the file.
        #[arg(long, default_value_t = FILE_TOL)]
        tol: f64,
    },
    /// Transition tables, entropy production, Jarzynski and Crooks residuals.
    Check {
        file: PathBuf,
        #[command(flatten)]
        method: MethodChoice,
        /// Initial observable file (default diag(0, 1, ..., N-1)).
        #[arg(long)]
        hi: Option<PathBuf>,
        /// Final observable file (default diag(0, 1, ..., N-1)).
        #[arg(long)]
        hf: Option<PathBuf>,
        /// Inverse temperature.
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        /// Trace-preservation tolerance when reading the file.
        #[arg(long, default_value_t = FILE_TOL)]
        tol: f64,
        /// Jarzynski and Crooks residuals at or above this fail with exit 5.
        #[arg(long, default_value_t = RESIDUAL_TOL)]
        residual_tol: f64,
        /// Work values closer than this share a Crooks bin.
        #[arg(long, default_value_t = DEFAULT_BIN_TOL)]
        bin_tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Write a named channel.
    Zoo {
        #[arg(value_enum)]
        name: ZooName,
        /// Decay probability (decaying) or four probabilities (pauli).
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        p: Vec<f64>,
        /// Pauli operators attached to the probabilities, e.g. X,I,Z,Y.
        #[arg(long, value_delimiter = ',')]
        ops: Option<Vec<String>>,
        /// Dimension (depolarizing, unitary, random).
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Number of Kraus operators (random).
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Coordinates of a Pauli channel in the probability tetrahedron.
    Simplex {
        /// Four probabilities.
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        p: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        ops: Option<Vec<String>>,
        #[arg(long, default_value_t = 3)]
        decimals: usize,
        /// Coordinates of the essential map instead of the channel.
        #[arg(long)]
        essential: bool,
        #[arg(long)]
        json: bool,
    },
}

/// A failed command: exit code plus message for stderr.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotUnital { .. }
        | Error::SingularState { .. }
        | Error::WrongKrausCount { .. }
        | Error::LeadingIndexOutOfRange { .. }
        | Error::NonUniqueFixedPoint { .. } => EXIT_PRECONDITION,
        Error::NotTracePreserving { .. }
        | Error::NotPositive { .. }
        | Error::NotUnitary { .. }
        | Error::InvalidMatrix(_)
        | Error::DimensionMismatch { .. } => EXIT_INVALID_CHANNEL,
        _ => EXIT_PARSE,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let message = match &e {
            Error::NotUnital { .. } => format!("precondition failed, channel must be unital: {e}"),
            Error::SingularState { .. } => format!("precondition failed: {e}"),
            Error::WrongKrausCount { .. } | Error::LeadingIndexOutOfRange { .. } => {
                format!("precondition failed: {e}")
            }
            _ => e.to_string(),
        };
        Self {
            code: exit_code(&e),
            message,
        }
    }
}

impl From<FileError> for Failure {
    fn from(e: FileError) -> Self {
        match e {
            FileError::Parse(msg) => Failure::parse(format!("parse error: {msg}")),
            FileError::Invalid(err) => Self {
                code: EXIT_INVALID_CHANNEL,
                message: format!("invalid channel: {err}"),
            },
        }
    }
}

fn emit(text: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::parse(format!("cannot write {}: {e}", path.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::parse(format!("cannot write output: {e}"))),
    }
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report values serialize");
    s.push('\n');
    s
}

fn pauli_spec(p: &[f64], ops: Option<&[String]>) -> Result<PauliChannelSpec, Failure> {
    let probs: [f64; 4] = p
        .try_into()
        .map_err(|_| Failure::parse(format!("--p needs four probabilities, got {}", p.len())))?;
    let ops = match ops {
        None => zoo::STANDARD_PAULI_ORDER,
        Some(names) => {
            let parsed = names
                .iter()
                .map(|s| s.parse::<Pauli>())
                .collect::<Result<Vec<_>, _>>()?;
            parsed
                .try_into()
                .map_err(|_| Failure::parse("--ops needs four operators"))?
        }
    };
    Ok(PauliChannelSpec::new(probs, ops)?)
}

fn zoo_channel(
    name: ZooName,
    p: &[f64],
    ops: Option<&[String]>,
    n: usize,
    k: usize,
    seed: u64,
) -> Result<QuantumChannel, Failure> {
    Ok(match name {
        ZooName::Pauli => zoo::pauli_channel(&pauli_spec(p, ops)?),
        ZooName::Decaying => match p {
            [p] => zoo::decaying_channel(*p)?,
            _ => return Err(Failure::parse("decaying needs a single --p")),
        },
        ZooName::Depolarizing => zoo::depolarizing_channel(n)?,
        ZooName::Unitary => zoo::unitary_channel(&zoo::random_unitary(n, seed)?)?,
        ZooName::Random => zoo::random_channel(n, k, seed)?,
    })
}

fn observable(path: Option<&Path>, n: usize) -> Result<ComplexMatrix, Failure> {
    match path {
        Some(p) => Ok(files::read_observable(p)?),
        None => Ok(ComplexMatrix::from_real_diag(&(0..n).map(|i| i as f64).collect::<Vec<_>>())),
    }
}

fn rounded(x: f64, decimals: usize) -> String {
    let s = format!("{x:.decimals$}");
    // "-0.000" reads oddly for a coordinate on a face of the simplex.
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Info { file, tol, json } => {
            let phi = files::read_channel(&file, tol)?;
            let report = InfoReport::new(&phi)?;
            let text = if json { json_text(&report.to_json()) } else { report.to_text() };
            emit(&text, None, out)?;
            Ok(EXIT_OK)
        }
        Command::Reverse {
            file,
            method,
            output,
            tol,
        } => {
            let phi = files::read_channel(&file, tol)?;
            let rev = reverse(&phi, method.method())?;
            emit(&files::format_channel(&rev), output.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Check {
            file,
            method,
            hi,
            hf,
            beta,
            tol,
            residual_tol,
            bin_tol,
            json,
        } => {
            let phi = files::read_channel(&file, tol)?;
            let n = phi.dim();
            let hi = observable(hi.as_deref(), n)?;
            let hf = observable(hf.as_deref(), n)?;
            let pair = MeasurementPair::new(&hi, &hf, beta)?;
            let method = method.method();
            let rev = reverse(&phi, method)?;
            let table = transition_table(&phi, &rev, &pair)?;
            let report = CheckReport {
                method,
                beta,
                jarzynski: jarzynski_from_table(&table, &pair),
                crooks: crooks_from_table(&table, &pair, bin_tol),
                table,
            };
            let text = if json { json_text(&report.to_json()) } else { report.to_text() };
            emit(&text, None, out)?;
            let worst = report.max_residual();
            if worst >= residual_tol {
                return Err(Failure {
                    code: EXIT_RESIDUAL,
                    message: format!("fluctuation-relation residual {worst:e} is not below {residual_tol:e}"),
                });
            }
            Ok(EXIT_OK)
        }
        Command::Zoo {
            name,
            p,
            ops,
            n,
            k,
            seed,
            output,
        } => {
            let phi = zoo_channel(name, &p, ops.as_deref(), n, k, seed)?;
            emit(&files::format_channel(&phi), output.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Simplex {
            p,
            ops,
            decimals,
            essential,
            json,
        } => {
            let spec = pauli_spec(&p, ops.as_deref())?;
            let coords = if essential {
                let dec = essential_map(&zoo::pauli_channel(&spec))?;
                zoo::weights_simplex_coordinates(zoo::pauli_weights(&dec.essential)?)
            } else {
                zoo::pauli_simplex_coordinates(&spec)
            };
            let shown: Vec<String> = coords.iter().map(|&x| rounded(x, decimals)).collect();
            let text = if json {
                format!("{{\"coordinates\": [{}]}}\n", shown.join(", "))
            } else {
                format!("{}\n", shown.join(" "))
            };
            emit(&text, None, out)?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_PARSE
                }
            };
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
