use std::io::Write;
use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use crate::sweep::{Failure, Sweep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Everything a command hands back for printing.
#[derive(Debug)]
pub struct Outcome {
    pub document: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// One-line summary, printed on standard error.
    pub summary: Option<String>,
    /// A mandatory identity failed: exit code 1.
    pub failed: bool,
}

impl From<Sweep> for Outcome {
    fn from(s: Sweep) -> Self {
        Outcome {
            document: s.document(),
            summary: Some(s.summary_line()),
            failed: s.failed(),
            header: s.header.clone(),
            rows: s.cases.into_iter().map(|c| c.row).collect(),
        }
    }
}

fn render(outcome: &Outcome, format: Format) -> Result<Vec<u8>, Failure> {
    match format {
        Format::Json => {
            let mut text = serde_json::to_vec_pretty(&outcome.document)
                .map_err(|e| Failure::internal(format!("cannot serialize report: {e}")))?;
            text.push(b'\n');
            Ok(text)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let csv_err = |e: csv::Error| Failure::internal(format!("cannot write csv: {e}"));
            w.write_record(&outcome.header).map_err(csv_err)?;
            for row in &outcome.rows {
                w.write_record(row).map_err(csv_err)?;
            }
            w.into_inner()
                .map_err(|e| Failure::internal(format!("cannot write csv: {e}")))
        }
    }
}

pub fn emit(outcome: &Outcome, out: Option<&Path>, format: Format) -> Result<(), Failure> {
    let bytes = render(outcome, format)?;
    match out {
        Some(path) => {
            std::fs::write(path, &bytes).map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(&bytes)
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::internal(format!("cannot write to stdout: {e}")))?;
        }
    }
    if let Some(line) = &outcome.summary {
        eprintln!("{line}");
    }
    Ok(())
}
