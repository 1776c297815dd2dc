use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use minmin::cli::Cli;
use minmin::output::write_file;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("MINMIN_LOG", "warn")).init();
    let cli = Cli::parse();
    let outcome = match minmin::execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let text = outcome.report.render();
    match &cli.command.common().report {
        Some(path) => {
            if let Err(e) = write_file(path, &text) {
                eprintln!("error: {e}");
                return ExitCode::from(e.exit_code() as u8);
            }
        }
        None => {
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(2);
            }
        }
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
