use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cmspin::Execution;
use cmspin_cli::config::ConfigError;
use cmspin_cli::{load, run, Format, RunError, Scenario, ScenarioConfig, Sizes};

#[derive(Parser)]
#[command(
    name = "cmspin",
    version,
    about = "Spin lattice flow on the roots of unity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues of the discrete half-wave operator.
    Spectrum(Common),
    /// Integrate one trajectory and record diagnostics.
    Simulate(Common),
    /// Convergence rate against a high-N reference run.
    Converge(Common),
    /// Vanishing-viscosity sweep at fixed N.
    Viscosity(Common),
    /// Sup-in-time aliasing error norm over a list of N.
    Errorsweep(Common),
    /// Weak-form residuals for low-degree test functions.
    Weaktest(Common),
}

#[derive(Args)]
struct Common {
    /// TOML scenario file; defaults are used when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (overrides the config).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Seed for the random data families.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for per-N jobs; 1 runs sequentially.
    #[arg(long)]
    threads: Option<usize>,
    /// Lattice sizes, comma separated (overrides the config).
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<usize>>,
    /// Print the resolved config as TOML and exit.
    #[arg(long)]
    print_config: bool,
}

impl Command {
    fn split(self) -> (Scenario, Common) {
        match self {
            Command::Spectrum(c) => (Scenario::Spectrum, c),
            Command::Simulate(c) => (Scenario::Simulate, c),
            Command::Converge(c) => (Scenario::Converge, c),
            Command::Viscosity(c) => (Scenario::Viscosity, c),
            Command::Errorsweep(c) => (Scenario::Errorsweep, c),
            Command::Weaktest(c) => (Scenario::Weaktest, c),
        }
    }
}

fn execute(scenario: Scenario, args: Common) -> Result<(), RunError> {
    let mut config = match &args.config {
        Some(path) => load(path)?,
        None => ScenarioConfig::default_for(scenario),
    };
    if config.scenario != scenario {
        return Err(ConfigError(format!(
            "config is for scenario `{}` but subcommand `{scenario}` was given",
            config.scenario
        ))
        .into());
    }
    if let Some(dir) = args.out {
        config.output.dir = dir;
    }
    if let Some(f) = args.format {
        config.output.format = f;
    }
    if let Some(seed) = args.seed {
        config.apply_seed(seed);
    }
    if let Some(n) = args.n {
        config.n = match n.as_slice() {
            [one] => Sizes::One(*one),
            _ => Sizes::Many(n),
        };
    }
    if args.print_config {
        print!("{}", config.emit());
        return Ok(());
    }
    let exec = match args.threads {
        Some(0) => return Err(ConfigError("--threads must be >= 1".into()).into()),
        Some(1) => Execution::Sequential,
        Some(t) => {
            cmspin::par::init_threads(t).map_err(ConfigError)?;
            Execution::Parallel
        }
        None => Execution::Parallel,
    };
    for path in run(&config, exec)? {
        println!("{}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let (scenario, args) = Cli::parse().command.split();
    match execute(scenario, args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}
