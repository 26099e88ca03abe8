//! `coriolis`: command-line front end for the rotating-frame toolkit.
//!
//! Exit codes: 0 on success, 1 when the artifact cannot be written,
//! 2 for usage or validation errors, 3 when an iterative solver fails
//! to converge (the message carries the worst residual).

mod output;
mod run;

use clap::Parser;

fn main() {
    let cli = match run::Cli::try_parse() {
        Ok(cli) => cli,
        // clap exits 2 on usage errors and 0 for --help/--version.
        Err(e) => e.exit(),
    };
    if let Err(e) = run::execute(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
