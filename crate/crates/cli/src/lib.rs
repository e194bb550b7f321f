//! `fading-stats`: tabulates product/ratio statistics and the outage and
//! secrecy metrics to CSV, and checks them against Monte Carlo.

pub mod commands;
pub mod config;
pub mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::path::PathBuf;

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_ACCURACY: i32 = 3;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("accuracy error: {0}")]
    Accuracy(String),
    #[error("I/O error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Accuracy(_) => EXIT_ACCURACY,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl From<fading_core::Error> for CliError {
    fn from(e: fading_core::Error) -> Self {
        use fading_core::Error as E;
        match e {
            E::Parameter(_) | E::Domain(_) | E::MomentUndefined { .. } => {
                CliError::Config(e.to_string())
            }
            E::Accuracy { .. } | E::Degenerate(_) | E::Numerical(_) => {
                CliError::Accuracy(e.to_string())
            }
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "fading-stats",
    version,
    about = "Product and ratio statistics of alpha-kappa-mu shadowed fading"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// TOML run configuration.
    #[arg(long)]
    pub config: PathBuf,
    /// CSV output path.
    #[arg(long)]
    pub out: PathBuf,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Overrides the series and quadrature tolerances.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum What {
    Product,
    Ratio,
    Irs,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, value_enum, default_value = "product")]
    pub what: What,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Density of X1*X2 over the grid.
    PdfProduct(Common),
    /// CDF of X1*X2 over the grid.
    CdfProduct(Common),
    /// Density of X1/X2 over the grid.
    PdfRatio(Common),
    /// CDF of X1/X2 over the grid.
    CdfRatio(Common),
    /// Product and ratio moments for the grid of orders.
    Moments(Common),
    /// Gamma and Beta-prime surrogate parameters.
    ApproxFit(Common),
    /// Cascaded-link outage over a threshold grid.
    OpCascade(Common),
    /// Amount of fading of the cascaded link.
    Af(Common),
    /// Secrecy outage over a grid of eavesdropper means.
    Sop(Common),
    /// Probability of positive secrecy capacity over a grid of eavesdropper means.
    Spsc(Common),
    /// IRS-assisted outage over a threshold grid.
    IrsOp(Common),
    /// Monte Carlo check of the analytic CDF or outage curve.
    Validate(ValidateArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::PdfProduct(_) => "pdf-product",
            Command::CdfProduct(_) => "cdf-product",
            Command::PdfRatio(_) => "pdf-ratio",
            Command::CdfRatio(_) => "cdf-ratio",
            Command::Moments(_) => "moments",
            Command::ApproxFit(_) => "approx-fit",
            Command::OpCascade(_) => "op-cascade",
            Command::Af(_) => "af",
            Command::Sop(_) => "sop",
            Command::Spsc(_) => "spsc",
            Command::IrsOp(_) => "irs-op",
            Command::Validate(_) => "validate",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::PdfProduct(c)
            | Command::CdfProduct(c)
            | Command::PdfRatio(c)
            | Command::CdfRatio(c)
            | Command::Moments(c)
            | Command::ApproxFit(c)
            | Command::OpCascade(c)
            | Command::Af(c)
            | Command::Sop(c)
            | Command::Spsc(c)
            | Command::IrsOp(c) => c,
            Command::Validate(v) => &v.common,
        }
    }
}

/// Hash over the config bytes and every flag that changes the numbers.
fn config_hash(cmd: &Command, text: &[u8]) -> String {
    let mut bytes = text.to_vec();
    let c = cmd.common();
    bytes.extend_from_slice(format!("\0tol={:?}", c.tol).as_bytes());
    if let Command::Validate(v) = cmd {
        bytes.extend_from_slice(
            format!(
                "\0seed={:?}\0trials={:?}\0what={:?}",
                v.seed, v.trials, v.what
            )
            .as_bytes(),
        );
    }
    output::hash_hex(&bytes)
}

fn execute(cmd: &Command) -> Result<String, CliError> {
    let c = cmd.common();
    let text = std::fs::read(&c.config)
        .map_err(|e| CliError::Io(format!("{}: {e}", c.config.display())))?;
    let cfg = config::RunConfig::parse(
        std::str::from_utf8(&text)
            .map_err(|_| CliError::Config("config is not valid UTF-8".into()))?,
    )?;
    if let Some(t) = c.tol {
        if !(t > 0.0 && t < 1.0) {
            return Err(CliError::Config(format!("--tol must be in (0,1), got {t}")));
        }
    }
    let jobs = match c.jobs {
        Some(0) => return Err(CliError::Config("--jobs must be >= 1".into())),
        Some(n) => n,
        None => std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Io(format!("thread pool: {e}")))?;
    let table = pool.install(|| commands::run_command(cmd, &cfg))?;
    let csv = table.render(cmd.name(), &config_hash(cmd, &text));
    output::write_atomic(&c.out, &csv)?;
    Ok(format!(
        "{}: wrote {} rows to {}; max abs_err_est {:.3e}",
        cmd.name(),
        table.rows.len(),
        c.out.display(),
        table.max_abs_err
    ))
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(summary) => {
            println!("{summary}");
            EXIT_OK
        }
        Err(e) => {
            eprintln!("fading-stats {}: {e}", cli.command.name());
            e.exit_code()
        }
    }
}
