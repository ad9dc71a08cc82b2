//! `zfnet`: batch experiments for zonal function networks.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::Partial;

#[derive(Parser, Debug)]
#[command(name = "zfnet", version, about = "Zonal function networks on the sphere")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Flags accepted by every subcommand. A `--config` file supplies defaults
/// for any setting; flags take precedence.
#[derive(Args, Debug, Clone)]
struct Shared {
    /// JSON config file with any of the settings below.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Sphere dimension (`S^q` sits in R^{q+1}).
    #[arg(long)]
    q: Option<usize>,
    /// Activation exponent: φ(t) = |t|^{2γ+1}.
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    /// Cutoff smoothness S (must exceed q + 1).
    #[arg(long)]
    smoothness: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Exactness residual tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Shared {
    fn partial(&self) -> Partial {
        Partial {
            q: self.q,
            gamma: self.gamma,
            smoothness: self.smoothness,
            seed: self.seed,
            tol: self.tol,
            out: self.out.clone(),
            ..Partial::default()
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate φ̂(2ℓ) against its closed-form magnitude.
    Coeffs {
        #[command(flatten)]
        shared: Shared,
        /// Largest half-degree ℓ.
        #[arg(long)]
        max_index: Option<usize>,
    },
    /// Compute quadrature weights for a points file.
    Quadrature {
        #[command(flatten)]
        shared: Shared,
        /// Points CSV: q+1 coordinates per row.
        #[arg(long)]
        points: PathBuf,
        /// Polynomial order of exactness.
        #[arg(long, conflicts_with = "search", required_unless_present = "search")]
        order: Option<usize>,
        /// Find the largest order that passes the tolerance.
        #[arg(long)]
        search: bool,
        /// Random probes for the residual (default scales with the order).
        #[arg(long)]
        probes: Option<usize>,
        /// Cap radius for the regularity estimate (default 1/order).
        #[arg(long)]
        cap_radius: Option<f64>,
    },
    /// Build a network from samples and centers and report the error at the sample sites.
    Build {
        #[command(flatten)]
        shared: Shared,
        /// Samples CSV: q+1 coordinates then the value.
        #[arg(long)]
        samples: PathBuf,
        /// Centers CSV.
        #[arg(long)]
        centers: PathBuf,
        /// Bandwidth N; both rules must be exact to order 4N.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        probes: Option<usize>,
    },
    /// Error and coefficient size across dyadic levels for a density target.
    RateStudy {
        #[command(flatten)]
        shared: Shared,
        /// Comma-separated levels n (bandwidth 2^n).
        #[arg(long, value_delimiter = ',')]
        levels: Option<Vec<usize>>,
        #[arg(long)]
        grid_size: Option<usize>,
        #[arg(long)]
        oversampling: Option<f64>,
        /// Order of the product rule that discretizes the target.
        #[arg(long)]
        target_order: Option<usize>,
        #[arg(long)]
        probes: Option<usize>,
    },
    /// Tabulate the low-pass, localized and D_φ kernels against the angle.
    KernelProfile {
        #[command(flatten)]
        shared: Shared,
        #[arg(long)]
        n: Option<usize>,
        /// Number of angles in [0, π].
        #[arg(long)]
        points: Option<usize>,
    },
    /// Rotate sites and centers together and compare the two networks.
    RotateCheck {
        #[command(flatten)]
        shared: Shared,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        grid_size: Option<usize>,
    },
    /// Write a point set, optionally with samples of a built-in target.
    Generate {
        #[command(flatten)]
        shared: Shared,
        #[arg(long, default_value = "fibonacci-s2")]
        kind: String,
        #[arg(long)]
        count: usize,
        /// Append the antipode of every point.
        #[arg(long)]
        symmetric: bool,
        /// Target sampled at the points: one, smooth or density.
        #[arg(long)]
        target: Option<String>,
    },
}

impl Command {
    fn settings(&self) -> (&Shared, Partial) {
        match self {
            Command::Coeffs { shared, max_index } => (
                shared,
                Partial {
                    max_index: *max_index,
                    ..shared.partial()
                },
            ),
            Command::Quadrature { shared, .. } | Command::Generate { shared, .. } => (shared, shared.partial()),
            Command::Build { shared, n, probes, .. } => (
                shared,
                Partial {
                    n: *n,
                    probes: *probes,
                    ..shared.partial()
                },
            ),
            Command::RateStudy {
                shared,
                levels,
                grid_size,
                oversampling,
                target_order,
                probes,
            } => (
                shared,
                Partial {
                    levels: levels.clone(),
                    grid_size: *grid_size,
                    oversampling: *oversampling,
                    target_order: *target_order,
                    probes: *probes,
                    ..shared.partial()
                },
            ),
            Command::KernelProfile { shared, n, points } => (
                shared,
                Partial {
                    n: *n,
                    profile_points: *points,
                    ..shared.partial()
                },
            ),
            Command::RotateCheck {
                shared,
                n,
                trials,
                grid_size,
            } => (
                shared,
                Partial {
                    n: *n,
                    trials: *trials,
                    grid_size: *grid_size,
                    ..shared.partial()
                },
            ),
        }
    }
}

/// Why a command stopped; each kind has its own exit code.
#[derive(Debug)]
pub enum Failure {
    Config(String),
    Core(zfnet::Error),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        use zfnet::Error as E;
        match self {
            Failure::Config(_) => 3,
            Failure::Core(e) => match e {
                E::Infeasible { .. } => 2,
                E::Numeric(_) | E::Degenerate(_) | E::Degree { .. } | E::Length { .. } | E::OutOfBounds { .. } => 4,
                _ => 3,
            },
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Config(msg) => write!(f, "config error: {msg}"),
            Failure::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<zfnet::Error> for Failure {
    fn from(e: zfnet::Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Core(e.into())
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let (shared, flags) = cli.command.settings();
    let base = match &shared.config {
        Some(path) => Partial::load(path)?,
        None => Partial::default(),
    };
    let config = base.overlay(flags).resolve()?;
    std::fs::create_dir_all(&config.out)?;
    match cli.command {
        Command::Coeffs { .. } => commands::coeffs(&config),
        Command::Quadrature {
            points,
            order,
            search,
            probes,
            cap_radius,
            ..
        } => {
            let order = if search { None } else { order };
            commands::quadrature(&config, &points, order, probes, cap_radius)
        }
        Command::Build { samples, centers, .. } => commands::build(&config, &samples, &centers),
        Command::RateStudy { .. } => commands::rate_study(&config),
        Command::KernelProfile { .. } => commands::kernel_profile(&config),
        Command::RotateCheck { .. } => commands::rotate_check(&config),
        Command::Generate {
            kind,
            count,
            symmetric,
            target,
            ..
        } => commands::generate(&config, &kind, count, symmetric, target.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("zfnet: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
