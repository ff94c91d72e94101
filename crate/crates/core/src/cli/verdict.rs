//! Verdicts and their three renderings.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use super::Format;

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub check: String,
    pub pass: bool,
    /// Residuals, values or the mismatch; never empty on failure.
    pub payload: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

impl Verdict {
    pub fn new(check: impl Into<String>, pass: bool, payload: Value) -> Self {
        let payload = if !pass && payload.is_null() { json!({ "mismatch": "unspecified" }) } else { payload };
        Verdict { check: check.into(), pass, payload, millis: None }
    }

    /// One-line digest for the pretty format.
    fn summary(&self) -> String {
        match &self.payload {
            Value::Object(m) => {
                let parts: Vec<String> = m
                    .iter()
                    .filter(|(_, v)| !matches!(v, Value::Array(a) if a.len() > 8))
                    .map(|(k, v)| format!("{k}={}", compact(v)))
                    .collect();
                parts.join("  ")
            }
            v => compact(v),
        }
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Runs `f`, stamping the elapsed time on every verdict when asked to.
pub fn timed<E>(timing: bool, f: impl FnOnce() -> Result<Vec<Verdict>, E>) -> Result<Vec<Verdict>, E> {
    let start = Instant::now();
    let mut out = f()?;
    if timing {
        let ms = start.elapsed().as_millis() as u64;
        out.iter_mut().for_each(|v| v.millis = Some(ms));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub pass: bool,
    pub verdicts: Vec<Verdict>,
    /// Printed-formula mismatches; reported, never failing.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub errata: Vec<Value>,
}

impl Report {
    pub fn new(command: &str, verdicts: Vec<Verdict>, errata: Vec<Value>) -> Self {
        Report { command: command.into(), pass: verdicts.iter().all(|v| v.pass), verdicts, errata }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serialises") + "\n",
            Format::Tsv => {
                let mut out = String::from("check\tpass\tpayload\n");
                for v in &self.verdicts {
                    let _ = writeln!(out, "{}\t{}\t{}", v.check, v.pass, v.payload);
                }
                for e in &self.errata {
                    let _ = writeln!(out, "erratum\twarn\t{e}");
                }
                out
            }
            Format::Pretty => {
                let mut out = String::new();
                for v in &self.verdicts {
                    let tag = if v.pass { "PASS" } else { "FAIL" };
                    let ms = v.millis.map(|m| format!(" [{m} ms]")).unwrap_or_default();
                    let _ = writeln!(out, "{tag}  {}{ms}  {}", v.check, v.summary());
                }
                for e in &self.errata {
                    let g = e["generator"].as_str().unwrap_or("?");
                    let c = e["component"].as_str().unwrap_or("?");
                    let r = e["residual"].as_str().unwrap_or("?");
                    let _ = writeln!(out, "WARN  erratum {g} [{c}]  residual = {r}");
                }
                let passed = self.verdicts.iter().filter(|v| v.pass).count();
                let _ = writeln!(out, "{}: {passed}/{} passed", self.command, self.verdicts.len());
                out
            }
        }
    }
}
