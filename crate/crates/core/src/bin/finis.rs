use std::process::ExitCode;

use clap::Parser;
use finis::cli::{exit_code, render_text, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli);
    match &result {
        Ok(report) if cli.json => println!("{}", report.to_json()),
        Ok(report) => print!("{}", render_text(report)),
        Err(e) => eprintln!("error: {e}"),
    }
    ExitCode::from(exit_code(&result) as u8)
}
