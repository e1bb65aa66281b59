use std::process::ExitCode;

use clap::Parser;
use trapwell::args::Cli;
use trapwell::run;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("trapwell: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
