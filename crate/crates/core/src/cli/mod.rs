//! Command-line front end: `simulate`, `verify` and `presets`.
//!
//! Exit codes: 0 success, 1 bad arguments or input, 2 step floor reached,
//! 3 immersion lost, 4 a verification check failed.

/// `println!` that ignores a closed stdout (e.g. output piped into `head`).
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

mod manifest;
mod presets;
mod simulate;
mod verify;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use manifest::{FileEntry, RunManifest, RunSource};

pub const EXIT_OK: i32 = 0;
pub const EXIT_BAD_ARGS: i32 = 1;
pub const EXIT_STEP_FLOOR: i32 = 2;
pub const EXIT_IMMERSION_LOST: i32 = 3;
pub const EXIT_CHECK_FAILED: i32 = 4;

/// Environment variable capping the number of concurrent sweep runs.
pub const THREADS_ENV: &str = "ICF_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "icflow",
    version,
    about = "Gradient flow of the L2 norm of the curvature derivative for closed plane curves"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the flow and write diagnostics, a manifest, a checkpoint and optional SVG frames.
    Simulate(SimulateArgs),
    /// Run the inequality and rigidity checks on a curve, a preset or a finished run.
    Verify(VerifyArgs),
    /// List presets or sample one to a file.
    Presets(PresetsArgs),
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Preset as `id:key=value,...`; repeat for a sweep (one subdirectory per run).
    #[arg(long, required_unless_present = "input", conflicts_with = "input")]
    pub preset: Vec<String>,
    /// Curve file (.json or .csv).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Flow configuration JSON; missing fields take their defaults.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, default_value = "out")]
    pub out_dir: PathBuf,
    /// Overrides `t_end` from the configuration.
    #[arg(long)]
    pub t_end: Option<f64>,
    /// Write an SVG frame every this many snapshots (0 disables frames).
    #[arg(long, default_value_t = 0)]
    pub frame_stride: usize,
    /// Record wall-clock start and end times in the manifest (breaks byte-for-byte reproducibility).
    #[arg(long)]
    pub record_wall_time: bool,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct VerifyTarget {
    #[arg(long)]
    pub preset: Option<String>,
    /// Curve file (.json or .csv).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Output directory of a `simulate` run.
    #[arg(long)]
    pub run: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub target: VerifyTarget,
    /// Emit the reports as JSON instead of a table.
    #[arg(long)]
    pub json: bool,
    /// Smallness threshold on `L^3 E` for the gap and monotonicity checks
    /// (default: the run's configured value, else the flow default).
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Band for `|log(L(t)/L(0))|`.
    #[arg(long, default_value_t = crate::validate::LENGTH_BAND)]
    pub band: f64,
}

#[derive(Debug, Args)]
pub struct PresetsArgs {
    /// Sample this preset (`id:key=value,...,n=N`) instead of listing.
    #[arg(long)]
    pub emit: Option<String>,
    /// Output file for `--emit` (.json or .csv); stdout JSON when absent.
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_BAD_ARGS
            } else {
                EXIT_OK
            };
        }
    };
    match cli.command {
        Command::Simulate(a) => simulate::simulate(&a),
        Command::Verify(a) => verify::verify(&a),
        Command::Presets(a) => presets::presets(&a),
    }
}

/// Entry point for the binary.
pub fn main_from_env() -> i32 {
    run_cli(std::env::args_os())
}

fn fail(msg: impl std::fmt::Display) -> i32 {
    eprintln!("error: {msg}");
    EXIT_BAD_ARGS
}
