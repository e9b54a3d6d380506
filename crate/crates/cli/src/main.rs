use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nashorder_cli::{run, run_corpus, Analysis, Options, Problem, RunConfig};

/// Nash multiplicity sequences, orders of contact and elimination orders
/// of hypersurface singularities.
#[derive(Parser)]
#[command(name = "nashorder", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Args)]
struct Flags {
    /// Truncation order of arcs and series.
    #[arg(long, global = true, value_name = "N")]
    precision: Option<usize>,
    /// Maximum number of blow-ups in a Nash sequence.
    #[arg(long, global = true, value_name = "N")]
    max_steps: Option<usize>,
    /// Seed of the random arc sampler.
    #[arg(long, global = true, value_name = "S")]
    seed: Option<u64>,
    /// Number of random arcs sampled by `verify`.
    #[arg(long, global = true, value_name = "N")]
    budget: Option<usize>,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Include the blow-up trace of every Nash sequence.
    #[arg(long, global = true)]
    trace: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Nash multiplicity sequence and persistence of each arc.
    Nash { file: PathBuf },
    /// Order of contact of each arc with the differential Rees algebra of X.
    Contact { file: PathBuf },
    /// Elimination order at the center.
    #[command(name = "ord-d")]
    OrdD { file: PathBuf },
    /// Checks that the minimum of the normalized contact over sampled arcs is ord_d.
    Verify { file: PathBuf },
    /// Every analysis listed in the problem file.
    Run { file: PathBuf },
    /// Runs the bundled problems whose names match GLOB.
    Corpus {
        #[arg(default_value = "*")]
        glob: String,
    },
}

fn load(path: &Path) -> Result<Problem, String> {
    let source = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Problem::parse(&source).map_err(|e| format!("{}:{e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let flags = &cli.flags;
    let options = Options {
        precision: flags.precision,
        max_steps: flags.max_steps,
        seed: flags.seed,
        budget: flags.budget,
        exponent_bound: None,
    };
    let (file, analyses) = match cli.command {
        Command::Corpus { glob } => {
            let cfg = RunConfig {
                analyses: None,
                options,
                trace: flags.trace,
            };
            return match run_corpus(&glob, &cfg) {
                Ok(summary) => {
                    if flags.json {
                        println!(
                            "{}",
                            serde_json::to_string_pretty(&summary).expect("summaries serialize")
                        );
                    } else {
                        print!("{}", summary.to_text());
                    }
                    if let Some(w) = &summary.warning {
                        eprintln!("warning: {w}");
                    }
                    ExitCode::from(summary.exit_code() as u8)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            };
        }
        Command::Nash { file } => (file, Some(vec![Analysis::Nash])),
        Command::Contact { file } => (file, Some(vec![Analysis::Contact])),
        Command::OrdD { file } => (file, Some(vec![Analysis::OrdD])),
        Command::Verify { file } => (file, Some(vec![Analysis::Verify])),
        Command::Run { file } => (file, None),
    };
    let problem = match load(&file) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cfg = RunConfig {
        analyses,
        options,
        trace: flags.trace,
    };
    let report = run(&problem, &cfg);
    if flags.json {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    ExitCode::from(report.exit_code() as u8)
}
