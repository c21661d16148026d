use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timings {
    pub elapsed_ms: f64,
}

/// Everything needed to reproduce a report. `timings` is excluded from
/// `report_digest`.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub params: Value,
    pub seed: u64,
    pub inputs: Vec<InputDigest>,
    pub version: &'static str,
    pub report_digest: String,
    pub timings: Timings,
}

/// What a command produced.
pub struct Outcome {
    pub result: Value,
    /// False when a check the command performs did not hold.
    pub passed: bool,
    /// Table for CSV output; one object per row.
    pub rows: Option<Vec<Value>>,
    /// Emit the result object itself with the manifest alongside its fields,
    /// so that it can be read back as input (complexes, graphs).
    pub payload: bool,
}

impl Outcome {
    pub fn report(result: impl Serialize) -> Self {
        Self { result: to_value(result), passed: true, rows: None, payload: false }
    }

    pub fn payload(result: impl Serialize) -> Self {
        Self { payload: true, ..Self::report(result) }
    }

    pub fn check(mut self, passed: bool) -> Self {
        self.passed = passed;
        self
    }

    pub fn rows(mut self, rows: Vec<Value>) -> Self {
        self.rows = Some(rows);
        self
    }
}

pub fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn digest(result: &Value, passed: bool) -> String {
    let mut bytes = serde_json::to_vec(result).expect("serializes");
    bytes.push(u8::from(passed));
    sha256_hex(&bytes)
}

pub fn render(outcome: &Outcome, manifest: &RunManifest, format: Format) -> String {
    match format {
        Format::Json => {
            let doc = if outcome.payload {
                let mut obj = match &outcome.result {
                    Value::Object(m) => m.clone(),
                    other => Map::from_iter([("result".to_string(), other.clone())]),
                };
                obj.insert("manifest".into(), to_value(manifest));
                Value::Object(obj)
            } else {
                serde_json::json!({ "passed": outcome.passed, "result": outcome.result, "manifest": manifest })
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut lines = Vec::new();
            flatten("", &outcome.result, &mut lines);
            let mut s: String = lines.iter().map(|(k, v)| format!("{k}: {v}\n")).collect();
            if !outcome.passed {
                s.push_str("check: FAILED\n");
            }
            s.push_str(&format!("seed: {}\ndigest: {}\n", manifest.seed, manifest.report_digest));
            s
        }
        Format::Csv => csv_table(outcome),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Dotted keys down to scalars; arrays of scalars stay whole.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        other => out.push((if prefix.is_empty() { "value".into() } else { prefix.to_string() }, scalar(other))),
    }
}

fn csv_table(outcome: &Outcome) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    match &outcome.rows {
        Some(rows) => {
            let header: Vec<String> = match rows.first() {
                Some(Value::Object(m)) => m.keys().cloned().collect(),
                _ => vec!["value".into()],
            };
            w.write_record(&header).expect("in memory");
            for r in rows {
                let rec: Vec<String> = match r {
                    Value::Object(m) => header.iter().map(|k| m.get(k).map(scalar).unwrap_or_default()).collect(),
                    other => vec![scalar(other)],
                };
                w.write_record(&rec).expect("in memory");
            }
        }
        None => {
            let mut lines = Vec::new();
            flatten("", &outcome.result, &mut lines);
            w.write_record(["key", "value"]).expect("in memory");
            for (k, v) in lines {
                w.write_record([k, v]).expect("in memory");
            }
        }
    }
    String::from_utf8(w.into_inner().expect("in memory")).expect("utf8")
}

/// Write to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, text: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn manifest() -> RunManifest {
        RunManifest {
            command: "x".into(),
            params: json!({}),
            seed: 3,
            inputs: vec![],
            version: "0",
            report_digest: "d".into(),
            timings: Timings { elapsed_ms: 1.0 },
        }
    }

    #[test]
    fn text_flattens_nested_objects() {
        let o = Outcome::report(json!({"a": {"b": 1, "c": [1, 2]}, "d": [{"e": "x"}]}));
        let t = render(&o, &manifest(), Format::Text);
        assert!(t.starts_with("a.b: 1\na.c: [1,2]\nd.0.e: x\n"));
    }

    #[test]
    fn csv_uses_rows_when_given() {
        let o = Outcome::report(json!(null)).rows(vec![json!({"beta": 0.5, "e": -1}), json!({"beta": 1.0, "e": -2})]);
        assert_eq!(render(&o, &manifest(), Format::Csv), "beta,e\n0.5,-1\n1.0,-2\n");
    }

    #[test]
    fn payload_keeps_fields_at_top_level() {
        let o = Outcome::payload(json!({"n": 2, "edges": [[0, 1]]}));
        let v: Value = serde_json::from_str(&render(&o, &manifest(), Format::Json)).unwrap();
        assert_eq!(v["n"], 2);
        assert_eq!(v["manifest"]["seed"], 3);
    }

    #[test]
    fn digest_depends_on_result_and_verdict() {
        let r = json!({"a": 1});
        assert_eq!(digest(&r, true), digest(&r, true));
        assert_ne!(digest(&r, true), digest(&r, false));
        assert_ne!(digest(&r, true), digest(&json!({"a": 2}), true));
    }
}
