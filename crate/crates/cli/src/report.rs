use std::io::Write;

use anyhow::Context;
use serde::Serialize;
use serde_json::Value;
use summing_lab::oplimited::Check;

use crate::{Common, Format};

pub const SCHEMA: &str = "1";

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: &'static str,
    pub config: Value,
    pub results: Value,
    pub assertions: Vec<Check>,
    pub passed: bool,
    pub wall_time_ms: f64,
    #[serde(skip)]
    pub csv: Option<String>,
}

impl Report {
    pub fn new(command: &'static str, config: Value, results: Value, assertions: Vec<Check>) -> Self {
        let passed = assertions.iter().all(|a| a.pass);
        Report { schema: SCHEMA, command, config, results, assertions, passed, wall_time_ms: 0.0, csv: None }
    }
}

fn write_to(path: &std::path::Path, body: &str) -> anyhow::Result<()> {
    std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))
}

/// JSON goes to `--out` or stdout. With `--format csv` the series goes to
/// `--out` (or stdout) and the JSON report to stdout when a file was given.
pub fn emit(report: &Report, common: &Common) -> anyhow::Result<()> {
    let json = serde_json::to_string_pretty(report)? + "\n";
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match (common.format, &report.csv) {
        (Format::Csv, Some(csv)) => match &common.out {
            Some(path) => {
                write_to(path, csv)?;
                lock.write_all(json.as_bytes())?;
            }
            None => lock.write_all(csv.as_bytes())?,
        },
        _ => match &common.out {
            Some(path) => write_to(path, &json)?,
            None => lock.write_all(json.as_bytes())?,
        },
    }
    Ok(())
}
