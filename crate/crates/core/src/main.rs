use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cellmatch::harness::{self, Grid, Selection};
use cellmatch::scenario::{generate_scenario, load_config, Config, LoadSign};
use cellmatch::{solve, ContextGame, Result};

#[derive(Parser)]
#[command(
    version,
    about = "Context-aware user association for pico/macro networks"
)]
struct Cli {
    /// TOML configuration; built-in defaults otherwise.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Override the base RNG seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Override the handover-failure admission threshold.
    #[arg(long, global = true)]
    hf_threshold: Option<f64>,

    /// Reward spare capacity in the user load term instead of penalising it.
    #[arg(long, global = true)]
    prose_load_sign: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Both,
    Matching,
    MaxSinr,
}

impl From<AlgorithmArg> for Selection {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Both => Selection::Both,
            AlgorithmArg::Matching => Selection::Matching,
            AlgorithmArg::MaxSinr => Selection::MaxSinr,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo sweep over network sizes; writes one CSV row per run.
    Run {
        #[arg(long, value_delimiter = ',')]
        users: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',')]
        picos: Option<Vec<usize>>,
        #[arg(long)]
        runs: Option<usize>,
        #[arg(long, value_enum, default_value = "both")]
        algorithm: AlgorithmArg,
        /// Output CSV; stdout if omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Relative gain of matching over max-SINR from a `run` CSV.
    Gain { input: PathBuf },
    /// Dump one generated scenario as CSV.
    Scenario {
        #[arg(long)]
        users: Option<usize>,
        #[arg(long)]
        picos: Option<usize>,
    },
    /// Solve one scenario and print the final matching as CSV.
    Solve {
        #[arg(long)]
        users: Option<usize>,
        #[arg(long)]
        picos: Option<usize>,
    },
}

fn config(cli: &Cli) -> Result<Config> {
    let mut config = match &cli.config {
        Some(path) => load_config(&std::fs::read_to_string(path)?)?,
        None => Config::default(),
    };
    if let Some(seed) = cli.seed {
        config.rng_seed = seed;
    }
    if let Some(t) = cli.hf_threshold {
        config.hf_threshold = t;
    }
    if cli.prose_load_sign {
        config.load_sign = LoadSign::Prose;
    }
    config.validate()?;
    Ok(config)
}

fn run(cli: &Cli) -> Result<()> {
    let config = config(cli)?;
    let mut stdout = std::io::stdout().lock();
    match &cli.command {
        Command::Run {
            users,
            picos,
            runs,
            algorithm,
            output,
        } => {
            let grid = Grid {
                users: users.clone().unwrap_or(vec![config.num_users]),
                picos: picos.clone().unwrap_or(vec![config.num_picocells]),
            };
            let runs = runs.unwrap_or(config.monte_carlo_runs);
            let records = harness::run_experiment(&config, &grid, runs, (*algorithm).into())?;
            match output {
                Some(path) => harness::emit_csv(&records, path)?,
                None => harness::write_csv(&records, &mut stdout)?,
            }
        }
        Command::Gain { input } => {
            let rows = harness::summarize_gain(&harness::read_csv(input)?)?;
            let mut w = csv::Writer::from_writer(&mut stdout);
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        Command::Scenario { users, picos } => {
            let sized = config.with_size(
                users.unwrap_or(config.num_users),
                picos.unwrap_or(config.num_picocells),
            );
            let scenario = generate_scenario(&sized, config.rng_seed)?;
            stdout.write_all(scenario.to_csv().as_bytes())?;
        }
        Command::Solve { users, picos } => {
            let sized = config.with_size(
                users.unwrap_or(config.num_users),
                picos.unwrap_or(config.num_picocells),
            );
            let scenario = generate_scenario(&sized, config.rng_seed)?;
            let game = ContextGame::new(&scenario);
            let result = solve(&game, config.max_outer)?;
            eprintln!(
                "outcome={:?} outer_iterations={} iterations_per_user={:.3}",
                result.outcome,
                result.outer_iterations,
                result.iterations_per_user()
            );
            stdout.write_all(result.matching.to_csv(&game).as_bytes())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
