use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use pnasync::app::{run, Cli, EXIT_ERROR};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out) {
        Ok(code) => {
            let _ = out.flush();
            ExitCode::from(code)
        }
        Err(e) => {
            let _ = out.flush();
            if cli.json {
                eprintln!("{}", e.to_json());
            } else {
                eprintln!("error: {e}");
                eprintln!("{}", e.to_json());
            }
            ExitCode::from(EXIT_ERROR)
        }
    }
}
