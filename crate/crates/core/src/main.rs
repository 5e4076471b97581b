use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use distdyn::dynamics::compare_growth;
use distdyn::io::{emit_trajectory, format_number, parse_scenario, ParsedScenario};
use distdyn::tolerance::DEFAULT_TOL;
use distdyn::verify::{appendix_examples, run_all, VerifyOptions, DEFAULT_SAMPLES, DEFAULT_SEED};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "distdyn",
    version,
    about = "Two-class distribution and capital accumulation simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a scenario file and write its trajectory as CSV.
    Run {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a contract scenario with and without the contract.
    Compare {
        #[arg(long)]
        scenario: PathBuf,
        /// Writes <prefix>_unconstrained.csv and <prefix>_contract.csv.
        #[arg(long)]
        out_prefix: PathBuf,
    },
    /// Run the seeded identity and property suite.
    Verify {
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, env = "DISTDYN_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Reproduce the two worked restriction examples.
    Appendix,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: e.to_string(),
    }
}

fn load(path: &Path) -> Result<ParsedScenario, Failure> {
    let bytes = fs::read(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse_scenario(&bytes).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_csv(traj: &distdyn::dynamics::Trajectory, path: &Path) -> Result<(), Failure> {
    let file = File::create(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    emit_trajectory(traj, BufWriter::new(file))
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(())
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

fn execute(command: Command) -> Result<(), Failure> {
    match command {
        Command::Run { scenario, out } => {
            let traj = load(&scenario)?.simulate().map_err(usage)?;
            write_csv(&traj, &out)
        }
        Command::Compare {
            scenario,
            out_prefix,
        } => {
            let ParsedScenario::Scenario(config) = load(&scenario)? else {
                return Err(usage(
                    "compare needs a `scenario` document, not `proportional`",
                ));
            };
            let cmp = compare_growth(&config).map_err(usage)?;
            write_csv(
                &cmp.unconstrained,
                &with_suffix(&out_prefix, "_unconstrained.csv"),
            )?;
            write_csv(&cmp.contract, &with_suffix(&out_prefix, "_contract.csv"))?;
            println!(
                "K_unconstrained(T)={},K_contract(T)={},cumulative_US={}",
                format_number(cmp.unconstrained_capital()),
                format_number(cmp.contract_capital()),
                format_number(cmp.cumulative_unsaved()),
            );
            Ok(())
        }
        Command::Verify { samples, seed, tol } => {
            if !(tol.is_finite() && tol > 0.0) {
                return Err(usage("--tol must be a positive number"));
            }
            let report = run_all(&VerifyOptions { samples, seed, tol });
            for check in &report.checks {
                println!("{check}");
            }
            if report.all_passed() {
                Ok(())
            } else {
                Err(Failure {
                    code: EXIT_FAILED,
                    message: "verification failed".into(),
                })
            }
        }
        Command::Appendix => {
            let examples = appendix_examples();
            for ex in &examples {
                print!("{ex}");
            }
            if examples.iter().all(|ex| ex.matches()) {
                Ok(())
            } else {
                Err(Failure {
                    code: EXIT_FAILED,
                    message: "appendix mismatch".into(),
                })
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
