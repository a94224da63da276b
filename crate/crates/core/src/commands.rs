//! The `tripartite` command-line tool.
//!
//! Exit codes: 0 success or all relations pass, 1 verification failure,
//! 2 usage or parse error, 3 I/O error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::figure::{figure_csv, figure_svg, scatter, FigureId};
use crate::io::{self, FormatError, RunMetadata};
use crate::linalg::C64;
use crate::states::SamplerConfig;
use crate::tolerance::{Tolerances, THEOREM};
use crate::{measures, relations, DEFAULT_SAMPLES, DEFAULT_SEED};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "tripartite",
    version,
    about = "Resource measures of three-qubit pure states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print every measure of one state as JSON.
    Measure(MeasureArgs),
    /// Write measures of a Haar ensemble as CSV.
    Sample(SampleArgs),
    /// Check all relations on a Haar ensemble; exit 1 on any failure.
    Verify(VerifyArgs),
    /// Write scatter CSV and SVG for one figure.
    Figure(FigureArgs),
}

#[derive(Debug, Args)]
pub struct EnsembleArgs {
    /// Number of Haar samples.
    #[arg(long = "n", default_value_t = DEFAULT_SAMPLES)]
    pub n: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    /// State file, JSON or eight "re im" lines.
    #[arg(conflicts_with = "amps", required_unless_present = "amps")]
    pub file: Option<PathBuf>,
    /// Inline amplitudes: 16 comma-separated reals re0,im0,...,re7,im7.
    #[arg(long, allow_hyphen_values = true)]
    pub amps: Option<String>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
    /// Output CSV path; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
    #[arg(long, default_value_t = THEOREM, allow_hyphen_values = true)]
    pub tol: f64,
    /// Also write the JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// Figure id, F1 to F5.
    #[arg(long)]
    pub which: FigureId,
    /// Number of Haar samples; 0 draws only the boundary curves.
    #[arg(long = "n", default_value_t = DEFAULT_SAMPLES)]
    pub n: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Scatter CSV path; defaults to `<which>.csv`.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// SVG path; defaults to `<which>.svg`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A failed command: the message goes to standard error.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Self {
            code: if e.is_io() { EXIT_IO } else { EXIT_USAGE },
            message: e.to_string(),
        }
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| FormatError::io(path, e).into())
}

fn parse_inline(text: &str) -> Result<crate::PureState3, Failure> {
    let values = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::usage(format!("--amps: {e}")))?;
    if values.len() != 16 {
        return Err(Failure::usage(format!(
            "--amps: expected 16 numbers, found {}",
            values.len()
        )));
    }
    let amps: [C64; 8] = std::array::from_fn(|i| C64::new(values[2 * i], values[2 * i + 1]));
    Ok(crate::make_state(amps)?.state)
}

fn measure(args: &MeasureArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let state = match (&args.file, &args.amps) {
        (Some(path), _) => io::read_state(path)?,
        (None, Some(text)) => parse_inline(text)?,
        (None, None) => return Err(Failure::usage("a state file or --amps is required")),
    };
    let p = measures::profile(&state)?;
    writeln!(out, "{}", io::profile_to_json(&p))
        .map_err(|e| FormatError::io(Path::new("<stdout>"), e))?;
    Ok(EXIT_OK)
}

fn sample(args: &SampleArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let config = SamplerConfig::new(args.ensemble.seed, args.ensemble.n)?;
    let profiles = io::ensemble_profiles(config)?;
    let meta = RunMetadata::new(config.seed(), config.count() as u64, Tolerances::default());
    let mut buf = Vec::new();
    io::write_samples_csv(&mut buf, &meta, &profiles).expect("write to memory");
    match &args.out {
        Some(path) => write_file(path, &buf)?,
        None => out
            .write_all(&buf)
            .map_err(|e| FormatError::io(Path::new("<stdout>"), e))?,
    }
    Ok(EXIT_OK)
}

fn verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    if !(args.tol > 0.0 && args.tol.is_finite()) {
        return Err(Failure::usage(format!(
            "--tol must be positive, got {}",
            args.tol
        )));
    }
    let config = SamplerConfig::new(args.ensemble.seed, args.ensemble.n)?;
    let report = relations::verify_ensemble(config, args.tol)?;
    let tolerances = Tolerances {
        theorem: args.tol,
        ..Tolerances::default()
    };
    let meta = RunMetadata::new(config.seed(), config.count() as u64, tolerances).with_timestamp();
    let json = serde_json::to_string_pretty(&io::report_to_json(&report, &meta))
        .expect("report serializes");
    if let Some(path) = &args.out {
        write_file(path, json.as_bytes())?;
    }
    writeln!(out, "{json}").map_err(|e| FormatError::io(Path::new("<stdout>"), e))?;
    Ok(exit_code(&report))
}

/// Exit status of a verification run, a function of the pass flags only.
pub fn exit_code(report: &relations::TheoremReport) -> i32 {
    if report.pass() {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

fn figure(args: &FigureArgs) -> Result<i32, Failure> {
    let profiles = if args.n == 0 {
        Vec::new()
    } else {
        io::ensemble_profiles(SamplerConfig::new(args.seed, args.n)?)?
    };
    let points = scatter(args.which, &profiles);
    let meta = RunMetadata::new(args.seed, args.n as u64, Tolerances::default());
    let name = args.which.short_name();
    let csv_path = args
        .csv
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{name}.csv")));
    let svg_path = args
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{name}.svg")));
    let svg = figure_svg(args.which, &points, &meta)?;
    write_file(&csv_path, figure_csv(args.which, &points, &meta).as_bytes())?;
    write_file(&svg_path, svg.as_bytes())?;
    Ok(EXIT_OK)
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    match &cli.command {
        Command::Measure(a) => measure(a, out),
        Command::Sample(a) => sample(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Figure(a) => figure(a),
    }
}

/// Parses `args` (program name first), runs the command, and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("tripartite").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn measure_inline() {
        let (code, out, _) = run_args(&["measure", "--amps", "1,0,0,0,0,0,0,0,0,0,0,0,0,0,1,0"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!((v["gmc"].as_f64().unwrap() - 1.0).abs() < 1e-12);
        assert!((v["fill"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&["measure", "--amps", "1,2"]).0, EXIT_USAGE);
        let zeros = vec!["0"; 16].join(",");
        assert_eq!(run_args(&["measure", "--amps", &zeros]).0, EXIT_USAGE);
        assert_eq!(run_args(&["measure"]).0, EXIT_USAGE);
        assert_eq!(
            run_args(&["verify", "--n", "10", "--tol", "0"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            run_args(&["verify", "--n", "10", "--tol", "-1e-9"]).0,
            EXIT_USAGE
        );
        assert_eq!(run_args(&["verify", "--n", "0"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["figure", "--which", "F9"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["bogus"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn missing_file_is_io_error() {
        let (code, out, err) = run_args(&["measure", "/nonexistent/state.json"]);
        assert_eq!(code, EXIT_IO);
        assert!(out.is_empty());
        assert!(err.contains("/nonexistent/state.json"));
    }

    #[test]
    fn verify_small_ensemble() {
        let (code, out, _) = run_args(&["verify", "--n", "500", "--seed", "3"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["pass"], true);
        assert_eq!(v["relations"].as_array().unwrap().len(), 14);
        assert!(v["metadata"]["timestamp"].is_string());
    }
}
