//! Rendering of command results. Every result is an ordered JSON object; the
//! markdown and csv forms are flattened views of the same object.

use std::fmt::Display;

use serde_json::{Map, Value};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Markdown,
    Csv,
}

/// One command result: `command`, `inputs`, computed fields, `paper_ref`.
#[derive(Debug, Clone)]
pub struct Report {
    command: String,
    inputs: Map<String, Value>,
    fields: Map<String, Value>,
    paper_ref: String,
}

impl Report {
    pub fn new(command: &str, paper_ref: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: Map::new(),
            fields: Map::new(),
            paper_ref: paper_ref.to_string(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn field(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    pub fn to_value(&self) -> Value {
        let mut out = Map::new();
        out.insert("command".into(), self.command.clone().into());
        out.insert("inputs".into(), Value::Object(self.inputs.clone()));
        for (k, v) in &self.fields {
            out.insert(k.clone(), v.clone());
        }
        out.insert("paper_ref".into(), self.paper_ref.clone().into());
        Value::Object(out)
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        let value = self.to_value();
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&value)
                    .map_err(|e| CliError::Input(format!("json: {e}")))?;
                s.push('\n');
                Ok(s)
            }
            Format::Markdown => {
                let mut s = String::from("| key | value |\n|---|---|\n");
                for (k, v) in flatten(&value) {
                    s.push_str(&format!("| {} | {} |\n", k, v.replace('|', "\\|")));
                }
                Ok(s)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| CliError::Input(format!("csv: {e}"));
                w.write_record(["key", "value"]).map_err(io)?;
                for (k, v) in flatten(&value) {
                    w.write_record([k, v]).map_err(io)?;
                }
                let bytes = w
                    .into_inner()
                    .map_err(|e| CliError::Input(format!("csv: {e}")))?;
                Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
            }
        }
    }
}

/// Dotted keys for nested objects; arrays stay as compact JSON.
fn flatten(value: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    walk("", value, &mut out);
    out
}

fn walk(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                walk(&key, v, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

/// Integers of any size travel as decimal strings.
pub fn int(x: impl Display) -> Value {
    Value::String(x.to_string())
}

pub fn ints<T: Display>(xs: impl IntoIterator<Item = T>) -> Value {
    Value::Array(xs.into_iter().map(int).collect())
}
