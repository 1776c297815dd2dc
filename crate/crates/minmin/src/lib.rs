//! Command-line front end and file formats for `minmin-core`.

pub mod cli;
pub mod commands;
pub mod error;
pub mod output;
pub mod params;
pub mod report;
pub mod sampling;

use std::time::Instant;

use cli::Cli;
use commands::Outcome;
use error::CliResult;

/// Runs the parsed command. With `--timing` the wall time is appended to
/// the report; otherwise it only goes to the log.
pub fn execute(cli: &Cli) -> CliResult<Outcome> {
    let start = Instant::now();
    let mut outcome = commands::run(&cli.command)?;
    let secs = start.elapsed().as_secs_f64();
    log::info!("wall time {secs:.3} s");
    if cli.command.common().timing {
        outcome.report.section("timing").set("wall_time_s", format!("{secs:.3}"));
    }
    Ok(outcome)
}
