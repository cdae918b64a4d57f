mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Outcome;

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let f = cli.format;
    match &cli.command {
        Command::Coeffs { family, n, method } => commands::coeffs(*family, *n, *method, f),
        Command::Largen { target, order, method, compare } => commands::largen(*target, *order, *method, *compare, f),
        Command::Mc { p, n, dim, group, samples, matrices, sigmas } => {
            commands::mc(*p, *n, *dim, *group, *samples, matrices.as_deref(), *sigmas, cli.seed, f)
        }
        Command::Tensor { i, j, k, l, dim, group, samples, sigmas } => {
            commands::tensor(i, j, k, l, *dim, *group, *samples, *sigmas, cli.seed, f)
        }
        Command::Verify { suite, samples } => commands::verify(*suite, *samples, cli.seed, f),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {}", format!("{e:#}").replace('\n', " "));
            return ExitCode::from(2);
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &outcome.body),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(outcome.body.as_bytes())
        }
    };
    if let Err(e) = written {
        eprintln!("error: writing output: {e}");
        return ExitCode::from(2);
    }
    if outcome.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
