//! Command-line front end for building, decomposing, and solving
//! minisuperspace Wheeler-DeWitt Hamiltonians on qubit grids.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::RunConfig;

/// Configuration problems exit with code 2, numerical or I/O failures
/// during a run with code 3.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Run(String),
}

impl From<qcosmo::Error> for CliError {
    fn from(err: qcosmo::Error) -> Self {
        use qcosmo::Error;
        match err {
            Error::UnknownModel(_)
            | Error::UnknownBasis(_)
            | Error::MissingParameter(_)
            | Error::InvalidGrid { .. }
            | Error::TooManyQubits { .. } => CliError::Config(err.to_string()),
            _ => CliError::Run(err.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Run(err.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::Run(err.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "qcosmo",
    version,
    about = "Discretize minisuperspace Wheeler-DeWitt Hamiltonians on qubit \
             grids and solve them exactly or variationally"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a model Hamiltonian into weighted Pauli strings
    Decompose {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Diagonalize a model exactly and write its full spectrum
    Exact {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Minimize a model's energy with the variational quantum eigensolver
    Vqe {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        solver: SolverArgs,
        /// JSON Pauli-term file to solve instead of a built-in model
        /// (a bare term array or a decompose output)
        #[arg(long, value_name = "FILE")]
        hamiltonian: Option<PathBuf>,
    },
    /// Solve all four published cosmological models and write the
    /// comparison report against the published values
    Paper {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        solver: SolverArgs,
        /// Sweep one parameter over start:end:step, solving exactly at
        /// each value, instead of writing the comparison report
        #[arg(long, num_args = 2, value_names = ["PARAM", "RANGE"])]
        sweep: Option<Vec<String>>,
    },
}

#[derive(Args, Default)]
struct CommonArgs {
    /// Model to build (oscillator1d, oscillator2d, bianchi-ix,
    /// higher-derivative, string-dilaton, kaluza-klein, z-test)
    #[arg(long)]
    model: Option<String>,
    /// JSON config file; its keys mirror these flags and flags win
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Output directory (default: $QCOSMO_OUT_DIR, else the current dir)
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Grid points per minisuperspace dimension, a power of two
    #[arg(long)]
    num_points: Option<usize>,
    /// Grid spacing (default: sqrt(2 pi) / num_points)
    #[arg(long)]
    spacing: Option<f64>,
    /// Grid offset in units of the spacing
    #[arg(long)]
    offset: Option<f64>,
    /// Regulator added to denominators of inverse-power potentials
    #[arg(long)]
    epsilon: Option<f64>,
    /// Cosmological constant
    #[arg(long)]
    lambda: Option<f64>,
    /// Ordering-ambiguity constant of the Bianchi IX model
    #[arg(long)]
    gamma: Option<f64>,
    /// Coupling of the higher-derivative model
    #[arg(long)]
    beta_tilde: Option<f64>,
    /// Spatial curvature of the Kaluza-Klein model
    #[arg(long)]
    curvature: Option<f64>,
    /// Lapse prefactor
    #[arg(long)]
    lapse: Option<f64>,
    /// Fill unset physical parameters from the published set
    #[arg(long)]
    paper_params: bool,
    /// Pauli table basis: 'table' matches the published decomposition
    /// tables, 'plain' keeps the literal discretization
    #[arg(long)]
    basis: Option<String>,
    /// Drop Pauli coefficients with magnitude below this threshold
    #[arg(long)]
    prune_threshold: Option<f64>,
    /// Master seed for all pseudo-randomness
    #[arg(long)]
    seed: Option<u64>,
    /// Constraint check: an eigenvalue counts as zero below this magnitude
    #[arg(long)]
    zero_threshold: Option<f64>,
}

#[derive(Args, Default)]
struct SolverArgs {
    /// Entangling layers in the ansatz
    #[arg(long)]
    depth: Option<usize>,
    /// Entangling pattern: 'full' or 'linear'
    #[arg(long)]
    entanglement: Option<String>,
    /// SPSA iterations per trial
    #[arg(long)]
    iterations: Option<usize>,
    /// SPSA step-size scale (ignored while calibration is on)
    #[arg(long)]
    spsa_a: Option<f64>,
    /// SPSA perturbation scale
    #[arg(long)]
    spsa_c: Option<f64>,
    /// SPSA step-size decay exponent
    #[arg(long)]
    spsa_alpha: Option<f64>,
    /// SPSA perturbation decay exponent
    #[arg(long)]
    spsa_gamma: Option<f64>,
    /// SPSA stability constant (default: 0.01 * iterations)
    #[arg(long)]
    spsa_stability: Option<f64>,
    /// Skip the first-iteration calibration of the step size
    #[arg(long)]
    no_calibrate: bool,
    /// Independent restarts from random initial parameters
    #[arg(long)]
    trials: Option<usize>,
}

fn resolve(common: &CommonArgs, solver: Option<&SolverArgs>) -> Result<RunConfig, CliError> {
    let mut config = match &common.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    if let Some(v) = &common.model {
        config.model = v.clone();
    }
    if let Some(v) = &common.out {
        config.out_dir = Some(v.to_string_lossy().into_owned());
    }
    if let Some(v) = common.num_points {
        config.num_points = v;
    }
    if let Some(v) = common.spacing {
        config.spacing = Some(v);
    }
    if let Some(v) = common.offset {
        config.offset = v;
    }
    if let Some(v) = common.epsilon {
        config.epsilon = v;
    }
    if let Some(v) = common.lambda {
        config.lambda = Some(v);
    }
    if let Some(v) = common.gamma {
        config.gamma = Some(v);
    }
    if let Some(v) = common.beta_tilde {
        config.beta_tilde = Some(v);
    }
    if let Some(v) = common.curvature {
        config.curvature = Some(v);
    }
    if let Some(v) = common.lapse {
        config.lapse = v;
    }
    if common.paper_params {
        config.paper_params = true;
    }
    if let Some(v) = &common.basis {
        config.basis = v.clone();
    }
    if let Some(v) = common.prune_threshold {
        config.prune_threshold = v;
    }
    if let Some(v) = common.seed {
        config.seed = v;
    }
    if let Some(v) = common.zero_threshold {
        config.zero_threshold = v;
    }
    if let Some(solver) = solver {
        if let Some(v) = solver.depth {
            config.depth = v;
        }
        if let Some(v) = &solver.entanglement {
            config.entanglement = v.clone();
        }
        if let Some(v) = solver.iterations {
            config.iterations = v;
        }
        if let Some(v) = solver.spsa_a {
            config.spsa_a = v;
        }
        if let Some(v) = solver.spsa_c {
            config.spsa_c = v;
        }
        if let Some(v) = solver.spsa_alpha {
            config.spsa_alpha = v;
        }
        if let Some(v) = solver.spsa_gamma {
            config.spsa_gamma = v;
        }
        if let Some(v) = solver.spsa_stability {
            config.spsa_stability = Some(v);
        }
        if solver.no_calibrate {
            config.calibrate = false;
        }
        if let Some(v) = solver.trials {
            config.trials = v;
        }
    }
    Ok(config)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Decompose { common } => {
            let config = resolve(common, None)?;
            commands::cmd_decompose(&config)
        }
        Command::Exact { common } => {
            let config = resolve(common, None)?;
            commands::cmd_exact(&config)
        }
        Command::Vqe {
            common,
            solver,
            hamiltonian,
        } => {
            let config = resolve(common, Some(solver))?;
            commands::cmd_vqe(&config, hamiltonian.as_deref())
        }
        Command::Paper {
            common,
            solver,
            sweep,
        } => {
            let config = resolve(common, Some(solver))?;
            let sweep = sweep
                .as_ref()
                .map(|pair| (pair[0].as_str(), pair[1].as_str()));
            commands::cmd_paper(&config, sweep)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Run(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
    }
}
