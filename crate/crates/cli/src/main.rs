use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use statest_cli::config::parse_assignment;
use statest_cli::{run_experiment, CliError, ConfigFile, Experiment, Overrides, RunConfig};

#[derive(Parser)]
#[command(name = "statest", version, about = "Seeded statistical estimation experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Base seed; replicate r uses seed + r.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of replicates.
    #[arg(long, global = true)]
    replicates: Option<usize>,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Config file with `key = value` sections.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override one experiment key, e.g. `--set n=2048`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    set: Vec<String>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Thresholding on a large orthogonal design, risk against threshold.
    Denoise,
    /// Cosine-basis least squares, optimal risk against n.
    BiasVariance,
    /// ISTA against AMP, iterations to reach the LASSO solution.
    Lasso,
    /// Noiseless phase boundary from the minimax risk.
    PhaseDiagram,
    /// Planted clique recovery sweep, or recovery on an edge-list graph.
    Clique,
}

impl Command {
    fn experiment(self) -> Experiment {
        match self {
            Command::Denoise => Experiment::Denoise,
            Command::BiasVariance => Experiment::BiasVariance,
            Command::Lasso => Experiment::LassoCompare,
            Command::PhaseDiagram => Experiment::SePhaseDiagram,
            Command::Clique => Experiment::CliqueSweep,
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let g = cli.global;
    let file = match &g.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.clone(), source: e })?;
            ConfigFile::parse(&text)?
        }
        None => ConfigFile::default(),
    };
    let set = g.set.iter().map(|s| parse_assignment(s)).collect::<Result<Vec<_>, _>>()?;
    let ov = Overrides { set, seed: g.seed, replicates: g.replicates, jobs: g.jobs, out: g.out };
    let cfg = RunConfig::build(cli.command.experiment(), &file, &ov)?;
    let out = run_experiment(&cfg)?;
    for f in &out.failures {
        eprintln!("failure: {f}");
    }
    eprintln!(
        "wrote {} rows to {}",
        out.table.rows().len(),
        cfg.output_dir.join(format!("{}.csv", cfg.experiment.name())).display()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("statest: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
