//! Command-line front end: `eig`, `roots`, and `bench` over JSON files.
//!
//! Exit codes: 0 when every requested index verified, 1 when any
//! verification failed, 2 on input/parse errors. `CONEEIG_THREADS` caps the
//! worker threads used for independent indices and matrices.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use coneig::certificate::{cmd_bench, cmd_eig, cmd_roots, EigOptions, OutputFormat};
use coneig::{BenchConfig, SearchConfig, SolverConfig, VerifyConfig};

#[derive(Parser)]
#[command(
    name = "coneig",
    version,
    about = "Rigorous eigenpair and polynomial-root enclosures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify eigenpair enclosures for a square matrix file
    Eig {
        /// JSON file: {"n": N, "entries": [[{"re": .., "im": ..}, ..], ..]};
        /// string entries are hulled as exact decimals
        matrix_file: PathBuf,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Certify complex polynomial roots from a coefficient file
    Roots {
        /// JSON array of coefficients, constant term first
        poly_file: PathBuf,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Verify batches of seeded random matrices and report epsilon quartiles
    Bench {
        /// Number of matrices
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Matrix dimension
        #[arg(long, default_value_t = 5)]
        size: usize,
        /// Entries are drawn uniformly from [-range, range]
        #[arg(long, default_value_t = 1.0)]
        range: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        search: SearchFlags,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
}

#[derive(Args)]
struct CommonFlags {
    /// Verify a single zero-based index instead of all of them
    #[arg(long, conflicts_with = "all")]
    k: Option<usize>,
    /// Verify every index (the default)
    #[arg(long)]
    all: bool,
    #[command(flatten)]
    search: SearchFlags,
    /// Seed for the eigensolver's inverse-iteration starts
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Args)]
struct SearchFlags {
    /// First epsilon tried by the search
    #[arg(long)]
    eps_start: Option<f64>,
    /// Smallest epsilon the descent may reach
    #[arg(long)]
    eps_min: Option<f64>,
    /// Largest epsilon the ascent may try
    #[arg(long)]
    eps_max: Option<f64>,
    /// Grid ratio per descent step (0 < factor < 1)
    #[arg(long)]
    factor: Option<f64>,
    /// Bisect between the last passing and first failing epsilon
    #[arg(long)]
    refine: bool,
    /// Intersect the Rayleigh value box with the shifted-diagonal box
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    tighten_value: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Text => OutputFormat::Text,
        }
    }
}

fn thread_cap() -> usize {
    let available = std::thread::available_parallelism()
        .map(std::num::NonZeroUsize::get)
        .unwrap_or(1);
    match std::env::var("CONEEIG_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
    {
        Some(cap) if cap >= 1 => available.min(cap),
        _ => available,
    }
}

fn build_search(flags: &SearchFlags) -> Result<SearchConfig, String> {
    let mut cfg = SearchConfig::default();
    if let Some(v) = flags.eps_start {
        cfg.eps_start = v;
    }
    if let Some(v) = flags.eps_min {
        cfg.eps_min = v;
    }
    if let Some(v) = flags.eps_max {
        cfg.eps_max = v;
    }
    if let Some(v) = flags.factor {
        cfg.factor = v;
    }
    cfg.refine = flags.refine;
    cfg.tighten_value = flags.tighten_value;
    if !(cfg.eps_min > 0.0 && cfg.eps_min <= cfg.eps_start && cfg.eps_start <= cfg.eps_max) {
        return Err("epsilon flags must satisfy 0 < eps-min <= eps-start <= eps-max".to_string());
    }
    if !(cfg.factor > 0.0 && cfg.factor < 1.0) {
        return Err("--factor must lie strictly between 0 and 1".to_string());
    }
    Ok(cfg)
}

fn build_verify(flags: &SearchFlags, seed: u64) -> Result<VerifyConfig, String> {
    Ok(VerifyConfig {
        solver: SolverConfig {
            seed,
            ..SolverConfig::default()
        },
        search: build_search(flags)?,
        threads: thread_cap(),
    })
}

fn read_input(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(all_verified) => {
            if all_verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Eig {
            matrix_file,
            common,
        } => {
            let input = read_input(&matrix_file)?;
            let opts = EigOptions {
                k: common.k,
                format: common.format.into(),
                verify: build_verify(&common.search, common.seed)?,
            };
            let out = cmd_eig(&input, &opts).map_err(|e| e.to_string())?;
            print!("{}", out.rendered);
            Ok(out.all_verified)
        }
        Command::Roots { poly_file, common } => {
            let input = read_input(&poly_file)?;
            let opts = EigOptions {
                k: common.k,
                format: common.format.into(),
                verify: build_verify(&common.search, common.seed)?,
            };
            let out = cmd_roots(&input, &opts).map_err(|e| e.to_string())?;
            print!("{}", out.rendered);
            Ok(out.all_verified)
        }
        Command::Bench {
            count,
            size,
            range,
            seed,
            search,
            format,
        } => {
            if size == 0 {
                return Err("--size must be at least 1".to_string());
            }
            if !(range > 0.0 && range.is_finite()) {
                return Err("--range must be a positive finite number".to_string());
            }
            let cfg = BenchConfig {
                count,
                size,
                range,
                seed,
                verify: VerifyConfig {
                    solver: SolverConfig {
                        seed,
                        ..SolverConfig::default()
                    },
                    search: build_search(&search)?,
                    threads: thread_cap(),
                },
            };
            let (rendered, _report) = cmd_bench(&cfg, format.into());
            print!("{rendered}");
            Ok(true)
        }
    }
}
