//! `sortedge`: command-line front end of the sortedge library.
//!
//! Exit codes: 0 success, 1 failed checks, 2 usage error, 3 numeric or I/O
//! failure.

mod args;
mod config;
mod error;
mod run;

use clap::Parser;
use std::process::exit;

fn main() {
    let argv = match config::merge(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("{e}");
            exit(e.exit_code());
        }
    };
    let cli = args::Cli::try_parse_from(argv).unwrap_or_else(|e| e.exit());
    let ctx = run::Ctx {
        out_dir: cli.out_dir,
        exec: sortedge::exec::configure_jobs(cli.jobs),
    };
    match run::run(&cli.command, &ctx) {
        Ok(run::Outcome::Passed) => {}
        Ok(run::Outcome::Failed) => {
            eprintln!(
                "checks failed; see {}",
                ctx.out_dir.join("summary.json").display()
            );
            exit(error::EXIT_ASSERTION);
        }
        Err(e) => {
            eprintln!("{e}");
            exit(e.exit_code());
        }
    }
}
