use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use lotflow_cli::{
    cmd_bench, cmd_gen, cmd_solve, exit_code, init_thread_pool, sweep, sweep_csv, BenchOptions, Engine, Scheme,
    SweepKind,
};
use lotflow_core::Error;

#[derive(Parser)]
#[command(name = "lotflow", version, about = "Capital-constrained lot sizing: heuristic, exact oracle and benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance file; writes trajectory.csv and diagnostics.json.
    Solve {
        #[arg(long, value_enum, default_value = "frh")]
        engine: Engine,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Largest horizon the oracle will enumerate.
        #[arg(long = "max-T", default_value_t = 8)]
        max_t: usize,
    },
    /// Objective across own capital or across interest rates on the illustration instance.
    Sweep {
        #[arg(long, value_enum)]
        kind: SweepKind,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a generation scheme's full grid.
    Bench {
        #[arg(long, value_enum)]
        scheme: Scheme,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Also solve exactly where the horizon allows.
        #[arg(long)]
        oracle: bool,
        #[arg(long = "oracle-max-T", default_value_t = 8)]
        oracle_max_t: usize,
        /// Only the first N grid entries.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write instance JSON files.
    Gen {
        #[arg(long, value_enum)]
        scheme: Scheme,
        /// Every grid entry instead of a single one.
        #[arg(long)]
        grid: bool,
        /// Grid entry to write without --grid.
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Solve {
            engine,
            input,
            out,
            max_t,
        } => {
            let sol = cmd_solve(&input, engine, &out, max_t)?;
            println!("objective {}", sol.objective);
            println!("lp_count {}", sol.lp_count);
        }
        Command::Sweep { kind, out } => {
            let s = sweep(kind)?;
            let text = sweep_csv(&s)?;
            if let Some(parent) = out.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(&out, &text)?;
            print!("{text}");
        }
        Command::Bench {
            scheme,
            seed,
            oracle,
            oracle_max_t,
            limit,
            out,
        } => {
            let report = cmd_bench(
                scheme,
                &BenchOptions {
                    seed,
                    oracle,
                    oracle_max_t,
                    limit,
                },
            );
            report.write_dir(&out)?;
            println!("grid_size {}", report.grid_size);
            println!("rows {}", report.rows.len());
            if let Some(all) = report.pivots.first() {
                println!("failures {}", all.failures);
                if let (Some(mean), Some(max)) = (all.mean_deviation, all.max_deviation) {
                    println!("mean_deviation_pct {:.2}", mean * 100.0);
                    println!("max_deviation_pct {:.2}", max * 100.0);
                }
            }
        }
        Command::Gen {
            scheme,
            grid,
            index,
            seed,
            out,
        } => {
            let files = cmd_gen(scheme, grid, index, seed, &out)?;
            println!("wrote {} files to {}", files.len(), out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    init_thread_pool();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err) as u8)
        }
    }
}
