//! `freiman`: Freiman checks for cover ideals of bipartite graphs.

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use freiman_cli::{commands, report};
use freiman_core::{Limits, DEFAULT_ENUMERATION_BOUND, DEFAULT_MAX_VERTICES};
use serde::Serialize;

/// Exit code for failures other than a negative or inconclusive answer.
const ERROR_EXIT: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "freiman", version, about = "Freiman checks for cover ideals of bipartite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Largest total vertex count (2n) for cover enumeration.
    #[arg(long, default_value_t = DEFAULT_MAX_VERTICES, global = true)]
    max_vertices: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify one graph; exit 0 Freiman, 1 not Freiman, 2 hypotheses unmet.
    Check { path: PathBuf },
    /// Compare structural and direct verdicts on every graph up to `max_n` pairs.
    Enumerate {
        max_n: usize,
        /// Raise the largest admissible `max_n`.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
        enumeration_bound: usize,
    },
    /// Print a power of the cover ideal in the exchange format.
    Ideal {
        path: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        power: u32,
    },
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) {
    let out = match format {
        Format::Text => text(),
        Format::Structured => serde_json::to_string_pretty(value).expect("reports serialize") + "\n",
    };
    // a closed pipe (`| head`) is not an error worth reporting
    let _ = io::stdout().lock().write_all(out.as_bytes());
}

fn run(cli: Cli) -> Result<u8, commands::CliError> {
    let mut limits = Limits { max_vertices: cli.max_vertices, ..Limits::default() };
    match cli.command {
        Command::Check { path } => {
            let r = commands::check(&path, &limits)?;
            emit(cli.format, &r, || report::to_text(&r));
            Ok(r.exit_code())
        }
        Command::Enumerate { max_n, enumeration_bound } => {
            limits.enumeration_bound = enumeration_bound;
            let summary = commands::enumerate(max_n, &limits)?;
            emit(cli.format, &summary, || report::to_text(&summary));
            for g in &summary.disagreements {
                eprint!("disagreement:\n{g}");
            }
            Ok(summary.exit_code())
        }
        Command::Ideal { path, power } => {
            let listing = commands::power(&path, power, &limits)?;
            let text = listing.to_text()?;
            emit(cli.format, &listing, || text);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // clap would use 2, which here means "hypotheses unmet"
            return ExitCode::from(if e.use_stderr() { ERROR_EXIT } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(ERROR_EXIT)
        }
    }
}
