use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use paley_cli::{envelope, exit_code, run, Cli, RunConfig};

fn main() -> ExitCode {
    let config = RunConfig::from_cli(Cli::parse());
    match run(&config) {
        Ok(envelopes) => {
            let stdout = io::stdout().lock();
            if let Err(e) = envelope::write_all(stdout, &envelopes, config.opts.format) {
                let _ = writeln!(io::stderr(), "paley: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(exit_code(&envelopes) as u8)
        }
        Err(e) => {
            eprintln!("paley: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
