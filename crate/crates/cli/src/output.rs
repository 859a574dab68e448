//! Command results and their JSON or CSV rendering.
//!
//! JSON objects have sorted keys, floats in shortest round-trip form and
//! complex numbers as `[re, im]`, so equal inputs give byte-identical output.

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::config::OutputFormat;
use crate::CliError;

/// Result of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    /// Native CSV form, when the result is a table.
    pub csv: Option<String>,
    /// Format used when the configuration leaves it open.
    pub preferred: OutputFormat,
    /// Exit code when the command ran but its outcome is a failure.
    pub exit_code: i32,
    /// Human-readable lines for standard error.
    pub notes: Vec<String>,
}

impl Report {
    pub fn json(json: Value) -> Self {
        Self {
            json,
            csv: None,
            preferred: OutputFormat::Json,
            exit_code: 0,
            notes: Vec::new(),
        }
    }

    pub fn table(json: Value, csv: String) -> Self {
        Self {
            json,
            csv: Some(csv),
            preferred: OutputFormat::Csv,
            exit_code: 0,
            notes: Vec::new(),
        }
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn render(&self, format: Option<OutputFormat>) -> Result<String, CliError> {
        match format.unwrap_or(self.preferred) {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.json)
                    .map_err(|e| CliError::Usage(format!("json: {e}")))?;
                s.push('\n');
                Ok(s)
            }
            OutputFormat::Csv => match &self.csv {
                Some(c) => Ok(c.clone()),
                None => flatten_csv(&self.json),
            },
        }
    }
}

pub fn complex(c: Complex64) -> Value {
    json!([c.re, c.im])
}

/// `path,value` rows for a JSON value without a native table form.
pub fn flatten_csv(v: &Value) -> Result<String, CliError> {
    let mut rows = Vec::new();
    flatten(v, String::new(), &mut rows);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["path", "value"])?;
    for (p, x) in rows {
        w.write_record([p, x])?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::Usage(format!("csv: {e}")))
}

fn flatten(v: &Value, path: String, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(x, join(k), out);
            }
        }
        Value::Array(a) => {
            for (k, x) in a.iter().enumerate() {
                flatten(x, join(&k.to_string()), out);
            }
        }
        Value::String(s) => out.push((path, s.clone())),
        other => out.push((path, other.to_string())),
    }
}
