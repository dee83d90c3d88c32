mod args;
mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::{CliError, Options, Outcome};
use report::Format;

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let opts = Options {
        max_dim: cli.max_dim,
        allow_uncertified: cli.allow_uncertified,
    };
    match &cli.command {
        Command::Predict(a) => commands::cmd_predict(a),
        Command::Oracle(a) => commands::cmd_oracle(a, &opts),
        Command::VerifyTheorem1(a) => commands::cmd_verify_theorem1(a, &opts),
        Command::Prop2Scan(a) => commands::cmd_prop2_scan(a, &opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: cannot start {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(outcome) => {
            let format = if cli.table {
                Format::Table
            } else {
                Format::Json
            };
            let text = report::render(&format, &outcome.reports, &outcome.summary);
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
