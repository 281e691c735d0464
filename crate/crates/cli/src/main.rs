use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use hadamard_star::Budget;
use hadamard_star_cli::{execute, JobContext, JobRegistry};

/// Exact computations with Hadamard products and star configurations.
///
/// Reads a JSON payload (from --in or stdin) and writes a JSON report.
/// With the command `run` the input is a job document
/// `{"command": ..., "payload": ...}`; `list` prints the available commands.
#[derive(Parser)]
#[command(name = "hadstar", version)]
struct Args {
    /// classify, construct-line, construct-hyperplane, power, verify-star,
    /// plot-data, run or list
    command: String,
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    #[arg(long = "out", value_name = "FILE")]
    output: Option<PathBuf>,
    /// Cap on subsets enumerated by combinatorial checks.
    #[arg(long, value_name = "N")]
    budget: Option<u64>,
    #[arg(long)]
    pretty: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let registry = JobRegistry::with_builtin();

    if args.command == "list" {
        for job in registry.jobs() {
            println!("{:<22}{}", job.name(), job.summary());
        }
        return ExitCode::SUCCESS;
    }

    let input = match &args.input {
        Some(path) => fs::read_to_string(path),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map(|_| s)
        }
    };
    let input = match input {
        Ok(s) => s,
        Err(e) => {
            eprintln!("hadstar: cannot read input: {e}");
            return ExitCode::from(2);
        }
    };

    let ctx = JobContext {
        budget: args.budget.map(Budget::uniform).unwrap_or_default(),
    };
    let command = (args.command != "run").then_some(args.command.as_str());
    let (text, status) = execute(&registry, command, &input, &ctx, args.pretty);

    let written = match &args.output {
        Some(path) => fs::write(path, &text),
        None => io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("hadstar: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(status as u8)
}
