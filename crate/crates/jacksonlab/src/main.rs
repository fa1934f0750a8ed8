use std::process::ExitCode;

use clap::Parser;
use jacksonlab::config::Cli;
use jacksonlab::RunConfig;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // clap exits 2 on usage errors and 0 for --help / --version
        Err(e) => e.exit(),
    };
    match RunConfig::from_cli(cli).and_then(|c| jacksonlab::run(&c)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("jacksonlab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
