use std::io;
use std::process::ExitCode;

use clap::Parser;
use cmc_cli::config::Cli;
use cmc_cli::error::EXIT_CONFIG;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // help and version requests are not errors
            return if e.use_stderr() { ExitCode::from(EXIT_CONFIG as u8) } else { ExitCode::SUCCESS };
        }
    };
    match cmc_cli::run(&cli, &mut io::stderr()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("cmc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
