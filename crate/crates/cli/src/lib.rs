//! `thetacalc` command-line frontend.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

mod cmd;
pub mod config;
pub mod error;
pub mod output;

use config::{CliConfig, Overrides, BUDGET_ENV};
use error::{CliError, EXIT_OK, EXIT_USAGE};
use output::Format;

const EXIT_CODES: &str = "\
Exit codes:
  0   success
  1   internal arithmetic check failed (non-rational or non-integral value)
  2   domain error (ranges, divisibility, parity, malformed input)
  3   term budget exceeded
  64  usage error (unknown subcommand or bad arguments)";

#[derive(Debug, Parser)]
#[command(name = "thetacalc", version, about = "Exact invariants of theta and strange dualities", after_help = EXIT_CODES)]
struct Cli {
    /// TOML config file
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Maximum number of subset terms or matrix rows
    #[arg(long, global = true)]
    term_budget: Option<u64>,
    /// Digits for the float oracle
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Neron-Severi lattice (preset or config-defined)
    #[arg(long, global = true)]
    lattice: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Verlinde numbers v_{r,k} in genus g
    Verlinde(VerlindeArgs),
    /// Mukai pairings and Euler characteristics of theta bundles
    Mukai {
        #[command(subcommand)]
        op: MukaiOp,
    },
    /// Duality pairings on exterior and symmetric powers
    Duality {
        #[command(subcommand)]
        op: DualityOp,
    },
    /// Theta classes on an elliptic K3 surface
    Elliptic {
        #[command(subcommand)]
        op: EllipticOp,
    },
}

#[derive(Debug, Args)]
pub(crate) struct VerlindeArgs {
    #[arg(allow_hyphen_values = true)]
    r: i64,
    #[arg(allow_hyphen_values = true)]
    k: i64,
    #[arg(allow_hyphen_values = true)]
    g: i64,
    /// Also report ((r+k)^g / r^g) v_{r,k}
    #[arg(long)]
    modified: bool,
    /// Compare v_{r,k} k^g with v_{k,r} r^g
    #[arg(long)]
    check_symmetry: bool,
    /// Evaluate the same sum in fixed-point arithmetic
    #[arg(long)]
    float_oracle: bool,
}

#[derive(Debug, Args)]
pub(crate) struct VectorPair {
    /// Mukai vector `v0,c1_1,..,c1_n,v4`
    #[arg(long, allow_hyphen_values = true)]
    v: String,
    #[arg(long, allow_hyphen_values = true)]
    w: String,
}

#[derive(Debug, Subcommand)]
pub(crate) enum MukaiOp {
    /// <v,w> and chi(v (x) w)
    Pair(VectorPair),
    /// C(d_v + d_w, d_v)
    ChiK3(VectorPair),
    /// Euler characteristics on an abelian surface
    ChiAbelian {
        #[command(flatten)]
        pair: VectorPair,
        #[arg(long, default_value = "s2")]
        variant: String,
    },
    /// Cohomological Fourier-Mukai transform
    Fm {
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
    /// Hypotheses of the theta-duality conjecture
    Conjecture {
        #[command(flatten)]
        pair: VectorPair,
        /// Polarization `h_1,..,h_n`
        #[arg(long = "H", allow_hyphen_values = true)]
        h: String,
        /// c1(v) is effective (needed for rank 0)
        #[arg(long)]
        effective_v: bool,
        #[arg(long)]
        effective_w: bool,
    },
}

#[derive(Debug, Subcommand)]
pub(crate) enum DualityOp {
    /// Lambda^k V (x) Lambda^(n-k) V -> Lambda^n V
    Wedge {
        #[arg(allow_hyphen_values = true)]
        n: i64,
        #[arg(allow_hyphen_values = true)]
        k: i64,
        /// Write the sparse matrix as JSON triplets
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Sym^n W (x) Sym^n W^dual -> Q
    Sym {
        #[arg(allow_hyphen_values = true)]
        wdim: i64,
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    /// Whether a section vanishes on Z u W
    ThetaVanishes {
        #[arg(long)]
        points: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub(crate) enum EllipticOp {
    /// Twist (r, sigma + k f, p) to point part 1 - r
    Normalize {
        #[arg(allow_hyphen_values = true)]
        r: i64,
        #[arg(allow_hyphen_values = true)]
        k: i64,
        #[arg(allow_hyphen_values = true)]
        p: i64,
    },
    Nu(Quad),
    ThetaClass(Quad),
    Dims(Quad),
}

#[derive(Debug, Args)]
pub(crate) struct Quad {
    #[arg(allow_hyphen_values = true)]
    r: i64,
    #[arg(allow_hyphen_values = true)]
    s: i64,
    #[arg(allow_hyphen_values = true)]
    a: i64,
    #[arg(allow_hyphen_values = true)]
    b: i64,
}

/// Runs with the process environment and standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env = std::env::var(BUDGET_ENV).ok();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, env.as_deref(), &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(
    args: I,
    env_budget: Option<&str>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind as K;
            return match e.kind() {
                K::DisplayHelp | K::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let flags = Overrides {
        config: cli.config.clone(),
        format: cli.format,
        term_budget: cli.term_budget,
        precision: cli.precision,
        lattice: cli.lattice.clone(),
    };
    let result = CliConfig::resolve(&flags, env_budget).and_then(|cfg| {
        let report = dispatch(&cli.command, &cfg)?;
        report.render(cfg.output_format)
    });
    match result {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: &Command, cfg: &CliConfig) -> Result<output::Report, CliError> {
    match command {
        Command::Verlinde(a) => cmd::verlinde::run(a, cfg),
        Command::Mukai { op } => cmd::mukai::run(op, cfg),
        Command::Duality { op } => cmd::duality::run(op, cfg),
        Command::Elliptic { op } => cmd::elliptic::run(op, cfg),
    }
}
