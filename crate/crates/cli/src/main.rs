mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;
use mcls_core::Error;

use args::{Cli, Command};

/// Exit status for each error class.
fn exit_code(err: &Error) -> u8 {
    match err {
        Error::InvalidInput(_) => 2,
        Error::Io(_) | Error::File { .. } | Error::Parse { .. } | Error::Json(_) => 3,
        Error::DimensionMismatch { .. } => 4,
        Error::Divergence { .. } | Error::Numerical(_) => 5,
        Error::ContourCollapse { .. } | Error::EmptyForeground { .. } => 6,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    let result = match &cli.command {
        Command::Segment(a) => commands::segment_cmd(a),
        Command::Synth(a) => commands::synth_cmd(a),
        Command::Eval(a) => match commands::eval_cmd(a) {
            Ok(true) => return ExitCode::from(3),
            Ok(false) => Ok(()),
            Err(e) => Err(e),
        },
        Command::Sweep(a) => commands::sweep_cmd(a),
        Command::Ablate(a) => commands::ablate_cmd(a),
        Command::Uncertainty(a) => commands::uncertainty_cmd(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
