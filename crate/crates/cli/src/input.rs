use std::io::Read;
use std::path::{Path, PathBuf};

use cellcode::chain::{ChainComplex, ComplexJson};
use cellcode::graphs::{named_graph, read_edge_list, Graph};
use cellcode::{Error, Result};
use serde_json::Value;

use crate::report::{sha256_hex, InputDigest};

/// Reads inputs and records their digests.
#[derive(Default)]
pub struct Inputs {
    pub digests: Vec<InputDigest>,
}

impl Inputs {
    pub fn read(&mut self, path: Option<&Path>) -> Result<String> {
        let (name, text) = match path {
            Some(p) if p != Path::new("-") => (
                p.display().to_string(),
                std::fs::read_to_string(p).map_err(|e| Error::InvalidInput(format!("{}: {e}", p.display())))?,
            ),
            _ => {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| Error::InvalidInput(format!("stdin: {e}")))?;
                ("stdin".to_string(), s)
            }
        };
        self.digests.push(InputDigest { name, sha256: sha256_hex(text.as_bytes()) });
        Ok(text)
    }

    pub fn complex(&mut self, path: Option<&PathBuf>) -> Result<ChainComplex> {
        let text = self.read(path.map(PathBuf::as_path))?;
        let j: ComplexJson = serde_json::from_value(unwrap_report(&text)?)?;
        j.try_into()
    }

    pub fn graph(&mut self, name: Option<&str>, file: Option<&PathBuf>) -> Result<Graph> {
        if let Some(name) = name {
            return named_graph(name);
        }
        let text = self.read(file.map(PathBuf::as_path))?;
        if text.trim_start().starts_with('{') {
            Ok(serde_json::from_value(unwrap_report(&text)?)?)
        } else {
            read_edge_list(&text)
        }
    }
}

/// Accept either a bare object or a full report with a `result` field.
fn unwrap_report(text: &str) -> Result<Value> {
    let v: Value = serde_json::from_str(text)?;
    Ok(match v {
        Value::Object(mut m) if m.contains_key("result") && m.contains_key("manifest") => m.remove("result").expect("present"),
        other => other,
    })
}
