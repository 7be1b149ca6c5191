use std::io::Write;
use std::process::ExitCode;

use bintri_cli::{run, Cli, CliError};
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // bad arguments are validation errors; exit 2 is reserved for failed checks
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(CliError::CheckFailed(text)) => {
            print!("{text}");
            let _ = std::io::stdout().flush();
            eprintln!("bintri: one or more checks failed");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("bintri: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
