mod ansatz;
mod mesh;
mod ode;
mod oracle;
mod verify;

pub use ansatz::cmd_ansatz;
pub use mesh::cmd_mesh;
pub use ode::cmd_ode;
pub use oracle::cmd_oracle_compare;
pub use verify::cmd_verify;

use crate::cli::{Command, CommonArgs};
use crate::error::{CliError, CliResult};
use crate::report::{Report, Section};

/// A finished command: its report and whether every check passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Report,
    pub passed: bool,
}

pub fn run(command: &Command) -> CliResult<Outcome> {
    match command {
        Command::Verify(a) => cmd_verify(a),
        Command::Ode(a) => cmd_ode(a),
        Command::Ansatz(a) => cmd_ansatz(a),
        Command::Mesh(a) => cmd_mesh(a),
        Command::OracleCompare(a) => cmd_oracle_compare(a),
    }
}

/// Starts a report with the `[config]` section; the seed is always echoed.
fn config_section<'a>(report: &'a mut Report, command: &str, common: &CommonArgs) -> &'a mut Section {
    let s = report.section("config");
    s.set("command", command).set("seed", common.seed).set("workers", common.workers);
    s
}

fn positive(name: &str, v: f64) -> CliResult<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(CliError::Config(format!("{name} must be positive, got {v}")))
    }
}

fn at_least(name: &str, v: usize, min: usize) -> CliResult<()> {
    if v >= min {
        Ok(())
    } else {
        Err(CliError::Config(format!("{name} must be at least {min}, got {v}")))
    }
}

fn check_m(m: u32) -> CliResult<()> {
    if m >= 1 {
        Ok(())
    } else {
        Err(CliError::Config("m must be a positive integer".into()))
    }
}

fn check_common(c: &CommonArgs) -> CliResult<()> {
    at_least("workers", c.workers, 1)
}

/// Parses a comma-separated list of 1-based indices into 0-based ones.
fn parse_axes(name: &str, text: &str, count: usize, bound: usize) -> CliResult<Vec<usize>> {
    let axes = text
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Config(format!("{name}: expected {count} comma-separated indices, got {text:?}")))?;
    if axes.len() != count || axes.iter().any(|&a| a == 0 || a > bound) {
        return Err(CliError::Config(format!(
            "{name}: expected {count} indices between 1 and {bound}, got {text:?}"
        )));
    }
    let mut sorted = axes.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != count {
        return Err(CliError::Config(format!("{name}: indices must be distinct")));
    }
    Ok(axes.into_iter().map(|a| a - 1).collect())
}
