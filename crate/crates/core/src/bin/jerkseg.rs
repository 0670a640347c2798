use std::process::ExitCode;

use clap::Parser;
use jerkseg::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = run(cli, &mut std::io::stdin().lock(), &mut std::io::stdout().lock(), &mut std::io::stderr());
    ExitCode::from(code as u8)
}
