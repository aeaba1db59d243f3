use std::process::ExitCode;

use clap::Parser;
use edms_cli::{run_and_write, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run_and_write(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("edms: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
