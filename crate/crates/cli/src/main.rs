use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::Parser;
use wallcross::algebra::BracketMode;
use wallcross::scenario::{run, Command, Scenario};
use wallcross::{Error, Rational};

/// Exact wall-crossing computations on a scenario file.
#[derive(Parser, Debug)]
#[command(name = "wallcross", version)]
struct Args {
    /// Scenario file.
    #[arg(long)]
    scenario: PathBuf,
    /// One of cone, product, factorize, cross, walls, multilink, twist, selftest.
    #[arg(long)]
    command: String,
    /// Override the truncation cutoff, as an integer or p/q.
    #[arg(long)]
    lambda: Option<String>,
    /// Override the bracket: plain or twisted.
    #[arg(long)]
    mode: Option<String>,
}

fn execute(args: &Args) -> Result<String, Error> {
    let command = Command::from_str(&args.command)?;
    let text = std::fs::read_to_string(&args.scenario)
        .map_err(|e| Error::Parse { line: 0, message: format!("{}: {e}", args.scenario.display()) })?;
    let mut scenario = Scenario::parse(&text)?;
    if let Some(l) = &args.lambda {
        let cutoff = Rational::from_str(l.trim())
            .map_err(|_| Error::Parse { line: 0, message: format!("malformed --lambda `{l}`") })?;
        scenario = scenario.with_cutoff(cutoff)?;
    }
    if let Some(m) = &args.mode {
        let mode = BracketMode::from_str(m).map_err(|message| Error::Parse { line: 0, message })?;
        scenario = scenario.with_mode(mode);
    }
    run(command, &scenario)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}: {e}", e.code());
            ExitCode::from(e.exit_status() as u8)
        }
    }
}
