//! `provwidgets`: offline analysis of exported `.provjson` sessions.
//!
//! Exit codes: 0 success, 1 data error (unreadable or invalid input), 2 usage error.

mod render;

use std::fs;
use std::io::{self, Write};
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use provwidgets_core::session::{self, SessionDocument};
use provwidgets_core::Timestamp;

#[derive(Debug, Parser)]
#[command(
    name = "provwidgets",
    version,
    about = "Analyze exported widget provenance sessions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Per-widget frequency and recency bins.
    Summarize {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Per-widget temporal traces.
    Trace {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Widget states in effect at a point in time.
    Replay {
        file: PathBuf,
        /// Epoch milliseconds.
        #[arg(long)]
        at: u64,
        #[arg(long)]
        json: bool,
    },
    /// Combine sessions from several users into one document.
    Merge {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a session against the schema.
    Validate { file: PathBuf },
    /// Keep only the most recent entries of every widget.
    Truncate {
        file: PathBuf,
        #[arg(long)]
        keep: NonZeroUsize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug)]
struct DataError(String);

fn load(path: &Path) -> Result<SessionDocument, DataError> {
    let text =
        fs::read_to_string(path).map_err(|e| DataError(format!("{}: {e}", path.display())))?;
    session::deserialize(&text).map_err(|e| DataError(format!("{}: {e}", path.display())))
}

fn emit(text: String, output: Option<&Path>) -> Result<String, DataError> {
    match output {
        Some(path) => {
            fs::write(path, format!("{text}\n"))
                .map_err(|e| DataError(format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn run(command: Command) -> Result<String, DataError> {
    match command {
        Command::Summarize { file, json } => {
            let doc = load(&file)?;
            Ok(if json {
                session::export_aggregates(&doc)
            } else {
                render::summary_table(&doc)
            })
        }
        Command::Trace { file, json } => {
            let doc = load(&file)?;
            Ok(if json {
                render::traces_json(&doc)
            } else {
                render::trace_text(&doc)
            })
        }
        Command::Replay { file, at, json } => {
            let doc = load(&file)?;
            Ok(render::replay(&doc, Timestamp(at), json))
        }
        Command::Merge { files, output } => {
            let docs = files
                .iter()
                .map(|f| load(f))
                .collect::<Result<Vec<_>, _>>()?;
            let merged = session::merge(&docs).map_err(|e| DataError(e.to_string()))?;
            emit(session::serialize(&merged), output.as_deref())
        }
        Command::Validate { file } => {
            let doc = load(&file)?;
            let entries: usize = doc.widgets.values().map(|w| w.log.len()).sum();
            Ok(format!(
                "{}: ok ({} widgets, {entries} entries)",
                file.display(),
                doc.widgets.len()
            ))
        }
        Command::Truncate { file, keep, output } => {
            let doc = load(&file)?;
            emit(
                session::serialize(&session::truncate(&doc, keep)),
                output.as_deref(),
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            if !out.is_empty() {
                // A closed pipe (`| head`) is not an error.
                let _ = writeln!(io::stdout().lock(), "{out}");
            }
            ExitCode::SUCCESS
        }
        Err(DataError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
