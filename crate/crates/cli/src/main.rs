mod args;
mod commands;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let result = match &cli.command {
        Command::Build(a) => commands::build(a),
        Command::Estimate(a) => commands::estimate(a),
        Command::Simulate(a) => commands::simulate(a),
        Command::Coverage(a) => commands::coverage(a),
        Command::Bench(a) => commands::bench(a),
        Command::Schemes(a) => commands::schemes(a),
    };
    if let Err(f) = result {
        eprintln!("error: {}", f.message);
        std::process::exit(f.code);
    }
}
