use clap::Parser;

use qsw_cli::app::{run, Cli, RunError};

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(_) => {}
        Err(RunError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            std::process::exit(2);
        }
        Err(RunError::Domain(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
    }
}
