use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use robustnet::cli::{self, CliError};
use robustnet::percolation::RemovalSchedule;
use std::path::PathBuf;
use std::process::ExitCode;

/// Robustness analysis and Pareto-front optimization of block-model
/// network ensembles.
#[derive(Parser)]
#[command(name = "robustnet", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScheduleArg {
    Random,
    Targeted,
}

impl From<ScheduleArg> for RemovalSchedule {
    fn from(arg: ScheduleArg) -> Self {
        match arg {
            ScheduleArg::Random => RemovalSchedule::Random,
            ScheduleArg::Targeted => RemovalSchedule::Targeted,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the giant-component curve and robustness of a model.
    Robustness {
        /// Model file (JSON with fields B, n, e).
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum, default_value = "random")]
        schedule: ScheduleArg,
        /// Quadrature grid size (odd).
        #[arg(long, default_value_t = 201)]
        grid: usize,
        /// Output directory for s_curve.csv.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run the evolutionary optimizer described by a configuration file.
    Optimize {
        #[arg(long)]
        config: PathBuf,
        /// Continue from the checkpoint in the run directory.
        #[arg(long)]
        resume: bool,
    },
    /// Reduce a model to its minimal block structure.
    Reduce {
        #[arg(long)]
        model: PathBuf,
        /// Entropy merge threshold in nats per node.
        #[arg(long, default_value_t = 0.025)]
        epsilon: f64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Validate a model against finite-network Monte-Carlo sampling.
    Validate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum, default_value = "random")]
        schedule: ScheduleArg,
        /// Sampled network size.
        #[arg(long, default_value_t = 100_000)]
        nodes: usize,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 51)]
        grid: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Export per-front structure tables from a completed run directory.
    FrontReport {
        /// Run directory (out_dir/run/<seed>).
        #[arg(long)]
        run: PathBuf,
        #[arg(long, default_value_t = 0.025)]
        epsilon: f64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Robustness {
            model,
            schedule,
            grid,
            out,
        } => {
            let r = cli::cmd_robustness(&model, schedule.into(), grid, &out)?;
            println!("R={r}");
        }
        Command::Optimize { config, resume } => {
            let run_dir = cli::cmd_optimize(&config, resume)?;
            println!("run directory: {}", run_dir.display());
        }
        Command::Reduce {
            model,
            epsilon,
            out,
        } => {
            let (report, drift) = cli::cmd_reduce(&model, epsilon, &out)?;
            println!(
                "reduced {} -> {} blocks ({} merges, {} dropped)",
                report.original_blocks,
                report.reduced_blocks,
                report.merges.len(),
                report.dropped.len()
            );
            println!("robustness drift: targeted {}, random {}", drift.0, drift.1);
        }
        Command::Validate {
            model,
            schedule,
            nodes,
            trials,
            grid,
            seed,
            out,
        } => {
            let result = cli::cmd_validate(
                &model,
                schedule.into(),
                nodes,
                trials,
                grid,
                seed,
                &out,
            )?;
            println!(
                "R_analytic={} R_mc={} stderr={}",
                result.r_analytic, result.r_mc, result.r_std_error
            );
        }
        Command::FrontReport { run, epsilon, out } => {
            cli::cmd_front_report(&run, epsilon, &out)?;
            println!("reports written to {}", out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are successes; anything else is a
            // usage error with exit code 1.
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{err}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{err}");
                    ExitCode::from(1)
                }
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
