//! CSV emission and the manifest line.

use std::io::Write;

use zfr_core::numeric::fmt_f64;

use crate::config::Settings;
use crate::CliError;

/// One output cell.
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(Option<bool>),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            // adding +0.0 maps -0.0 to 0.0
            Cell::Num(x) => fmt_f64(*x + 0.0),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(Some(b)) => b.to_string(),
            Cell::Bool(None) => String::new(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(Some(b))
    }
}

pub enum Artifact {
    Table { header: Vec<&'static str>, rows: Vec<Vec<Cell>> },
    Text(String),
}

fn io(e: impl std::fmt::Display) -> CliError {
    CliError::Io(e.to_string())
}

fn render(artifact: &Artifact) -> Result<Vec<u8>, CliError> {
    match artifact {
        Artifact::Text(s) => Ok(s.clone().into_bytes()),
        Artifact::Table { header, rows } => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::CRLF)
                .from_writer(Vec::new());
            w.write_record(header).map_err(io)?;
            for row in rows {
                w.write_record(row.iter().map(Cell::render)).map_err(io)?;
            }
            w.into_inner().map_err(io)
        }
    }
}

/// Writes the artifact to `--out` (or standard output) and the manifest line
/// to standard error and, with `--out`, to `<out>.manifest`.
pub fn emit(command: &str, settings: &Settings, artifact: &Artifact) -> Result<(), CliError> {
    let bytes = render(artifact)?;
    let manifest = format!(
        "zfr {} command={} config={} seed={}\n",
        env!("CARGO_PKG_VERSION"),
        command,
        settings.hash(command),
        settings.seed.map_or("none".to_string(), |s| s.to_string())
    );
    match &settings.out {
        Some(path) => {
            std::fs::write(path, &bytes).map_err(|e| io(format!("{}: {e}", path.display())))?;
            let mut mpath = path.clone().into_os_string();
            mpath.push(".manifest");
            std::fs::write(&mpath, &manifest).map_err(io)?;
        }
        None => {
            std::io::stdout().write_all(&bytes).map_err(io)?;
        }
    }
    eprint!("{manifest}");
    Ok(())
}
