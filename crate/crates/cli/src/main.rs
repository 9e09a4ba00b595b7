use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use log::LevelFilter;
use projcad::{CadOptions, Error, Method};
use projcad_cli::{examples, exit_code, parse_input, render, warning_message, Format, EXIT_INPUT};

#[derive(Parser)]
#[command(name = "projcad", version, about = "Cylindrical algebraic decomposition by projection and lifting")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose R^n for the polynomials in a problem file.
    Compute {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "mccallum", value_parser = parse_method)]
        method: Method,
        /// Make the final lift order-invariant as well.
        #[arg(long)]
        final_oi: bool,
        /// Abort (exit 2) instead of warning when the input is not well-oriented.
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value = "text")]
        output: Format,
        /// 0 silent, 1 per level, 2 per cell, 3 projection sets.
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=3))]
        info: u8,
    },
    /// Run built-in examples and compare with the expected outcomes.
    Examples {
        #[arg(default_value = "all")]
        name: String,
    },
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn init_logging(info: u8) {
    let level = match info {
        0 => LevelFilter::Off,
        1 => LevelFilter::Info,
        2 => LevelFilter::Debug,
        _ => LevelFilter::Trace,
    };
    env_logger::Builder::new()
        .filter_module("projcad", level)
        .format_timestamp(None)
        .format_target(false)
        .init();
}

fn compute(input: PathBuf, opts: CadOptions, output: Format) -> Result<(), Error> {
    let text = std::fs::read_to_string(&input)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", input.display())))?;
    let problem = parse_input(&text)?;
    let cad = projcad_cli::compute(&problem, opts).inspect_err(|e| {
        if let Error::NotWellOriented { index, poly } = e {
            eprintln!(
                "error: input not well-oriented: {} vanishes identically over the positive-dimensional cell {index:?}",
                problem.order.fmt_poly(poly)
            );
        }
    })?;
    for w in &cad.warnings {
        eprintln!("{}", warning_message(&cad, &w.index, &w.poly));
    }
    print!("{}", render(&cad, output)?);
    Ok(())
}

fn main() -> ExitCode {
    // clap's own usage-error status is 2, which is reserved here
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INPUT as u8) } else { ExitCode::SUCCESS };
        }
    };
    match cli.command {
        Command::Compute {
            input,
            method,
            final_oi,
            strict,
            output,
            info,
        } => {
            init_logging(info);
            let opts = CadOptions { method, final_oi, strict };
            match compute(input, opts, output) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    if !matches!(e, Error::NotWellOriented { .. }) {
                        eprintln!("error: {e}");
                    }
                    ExitCode::from(exit_code(&e) as u8)
                }
            }
        }
        Command::Examples { name } => {
            let chosen: Vec<&examples::Example> = if name == "all" {
                examples::EXAMPLES.iter().collect()
            } else if let Some(e) = examples::find(&name) {
                vec![e]
            } else {
                let names: Vec<&str> = examples::EXAMPLES.iter().map(|e| e.name).collect();
                eprintln!("error: unknown example `{name}` (known: {}, all)", names.join(", "));
                return ExitCode::from(EXIT_INPUT as u8);
            };
            let mut outcomes = Vec::new();
            for e in chosen {
                match examples::run(e) {
                    Ok(o) => outcomes.push(o),
                    Err(err) => {
                        eprintln!("error: {}: {err}", e.name);
                        return ExitCode::from(EXIT_INPUT as u8);
                    }
                }
            }
            print!("{}", examples::table(&outcomes));
            if outcomes.iter().all(|o| o.passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
