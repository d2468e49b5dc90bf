use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use agcode_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out) {
        Ok(code) => {
            let _ = out.flush();
            ExitCode::from(code)
        }
        Err(e) => {
            let _ = out.flush();
            eprintln!("agcode: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
