use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use liaison::script::{exit_code, reproduce_paper, run_script, Options};

#[derive(Parser)]
#[command(name = "liaison", version, about = "Perfect linkage of Cohen-Macaulay modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// Seed for randomized searches.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// One JSON record per statement.
    #[arg(long)]
    json: bool,
    /// Resolution length used to detect projective dimension.
    #[arg(long)]
    steps: Option<usize>,
    /// Truncation level for oracle operations.
    #[arg(long)]
    trunc: Option<u32>,
    /// Include wall-clock timings in JSON records.
    #[arg(long)]
    timing: bool,
}

impl Common {
    fn options(&self) -> Options {
        Options { seed: self.seed, json: self.json, steps: self.steps, trunc: self.trunc, timing: self.timing }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Execute a script file.
    Run {
        script: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Regenerate the built-in table of examples and compare.
    Reproduce {
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { script, common } => {
            let options = common.options();
            let report = run_script(&script, &options);
            print!("{}", report.stdout(&options));
            if let Some(e) = &report.error {
                eprintln!("error: {e}");
            }
            ExitCode::from(report.status as u8)
        }
        Command::Reproduce { common } => {
            let options = common.options();
            match reproduce_paper(&options) {
                Ok(report) => {
                    print!("{}", report.render(options.json));
                    ExitCode::from(if report.all_pass() { 0 } else { 1 })
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(exit_code(&e) as u8)
                }
            }
        }
    }
}
