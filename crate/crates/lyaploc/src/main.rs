use std::process::ExitCode;

use clap::Parser;
use lyaploc::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = execute(&cli, std::env::args().collect());
    print!("{}", report.to_json());
    if let Some(err) = &report.error {
        eprintln!("lyaploc: {}", err.message);
    }
    ExitCode::from(report.exit_code as u8)
}
