use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use nlwit_core::tolerance::Tolerances;
use nlwit_core::witness::SConvention;
use serde::Serialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    Schmidt,
    PaperFigure,
}

impl From<Convention> for SConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Schmidt => SConvention::Schmidt,
            Convention::PaperFigure => SConvention::PaperFigure,
        }
    }
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub tolerances: Tolerances,
    pub convention: SConvention,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
}

/// Header written at the top of every output.
#[derive(Debug, Clone, Serialize)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub constant_convention: String,
    pub structural_tolerance: f64,
    pub reconstruction_tolerance: f64,
    pub seed: u64,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, String>,
}

impl RunConfig {
    pub fn metadata(&self, command: &str) -> Metadata {
        Metadata {
            tool: "nlwit",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            constant_convention: self.convention.to_string(),
            structural_tolerance: self.tolerances.structural,
            reconstruction_tolerance: self.tolerances.reconstruction,
            seed: self.seed,
            extra: BTreeMap::new(),
        }
    }

    /// Writes to `--out` if given, otherwise to stdout.
    pub fn emit(&self, text: &str) -> CliResult<()> {
        match &self.out {
            Some(path) => write_file(path, text),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(text.as_bytes())
                    .map_err(|e| CliError::io("<stdout>", e))
            }
        }
    }
}

pub fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

impl Metadata {
    pub fn with(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.extra.insert(key.to_string(), value.to_string());
        self
    }

    /// `# key: value` lines for CSV output.
    pub fn comment_lines(&self) -> String {
        let mut s = format!(
            "# tool: {} {}\n# command: {}\n# constant_convention: {}\n# tolerances: structural={:e} reconstruction={:e}\n# seed: {}\n",
            self.tool,
            self.version,
            self.command,
            self.constant_convention,
            self.structural_tolerance,
            self.reconstruction_tolerance,
            self.seed
        );
        for (k, v) in &self.extra {
            s.push_str(&format!("# {k}: {v}\n"));
        }
        s
    }
}

/// Renders `rows` as CSV under the metadata comment block.
pub fn csv_table<R: Serialize>(meta: &Metadata, rows: &[R]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let body = w.into_inner().map_err(|e| CliError::io("<buffer>", e.into_error()))?;
    Ok(meta.comment_lines() + &String::from_utf8(body).expect("csv output is UTF-8"))
}

pub fn json_document(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
