use std::process::ExitCode;

use clap::Parser;
use coltrs::cli::{run, Cli};

fn main() -> ExitCode {
    let arguments: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    ExitCode::from(run(cli, arguments) as u8)
}
