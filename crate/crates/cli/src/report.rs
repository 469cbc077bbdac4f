//! Reports: an ordered tree of inputs and results rendered as JSON or as
//! an aligned table. Both renderings come from the same value tree.

use serde::Serialize;
use serde_json::{Map, Value};

use kstab_core::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    /// The argument vector that reproduces this report.
    pub command: Vec<String>,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    /// Catalog entries, flags and assumptions the results depend on.
    pub notes: Vec<String>,
    /// `Some(false)` when the mathematical verdict is fail/unstable.
    pub verdict: Option<bool>,
}

pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

pub fn rat(r: &Rat) -> Value {
    Value::String(r.to_string())
}

impl Report {
    pub fn new(command: &[String]) -> Self {
        Report {
            command: command.to_vec(),
            inputs: Map::new(),
            results: Map::new(),
            notes: Vec::new(),
            verdict: None,
        }
    }

    pub fn input(&mut self, key: &str, v: impl Serialize) -> &mut Self {
        self.inputs.insert(key.into(), to_value(&v));
        self
    }

    pub fn result(&mut self, key: &str, v: impl Serialize) -> &mut Self {
        self.results.insert(key.into(), to_value(&v));
        self
    }

    pub fn note(&mut self, n: impl Into<String>) -> &mut Self {
        self.notes.push(n.into());
        self
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), to_value(&self.command));
        m.insert("inputs".into(), Value::Object(self.inputs.clone()));
        m.insert("results".into(), Value::Object(self.results.clone()));
        if let Some(v) = self.verdict {
            m.insert("verdict".into(), Value::String(if v { "pass" } else { "fail" }.into()));
        }
        m.insert("notes".into(), to_value(&self.notes));
        Value::Object(m)
    }

    /// Inverse of [`Report::to_json`].
    pub fn from_json(v: &Value) -> Option<Report> {
        let o = v.as_object()?;
        let strings = |k: &str| -> Option<Vec<String>> {
            o.get(k)?.as_array()?.iter().map(|s| s.as_str().map(String::from)).collect()
        };
        Some(Report {
            command: strings("command")?,
            inputs: o.get("inputs")?.as_object()?.clone(),
            results: o.get("results")?.as_object()?.clone(),
            notes: strings("notes")?,
            verdict: match o.get("verdict").and_then(Value::as_str) {
                Some("pass") => Some(true),
                Some("fail") => Some(false),
                _ => None,
            },
        })
    }

    pub fn render(&self, format: Format, decimal: bool) -> String {
        match format {
            Format::Json => {
                let mut v = self.to_json();
                if decimal {
                    let mut approx = Map::new();
                    for (k, s) in flatten_section("results", &self.results) {
                        if let Some(d) = decimal_of(&s) {
                            approx.insert(k, Value::String(d));
                        }
                    }
                    v.as_object_mut().unwrap().insert("approx_non_authoritative".into(), Value::Object(approx));
                }
                serde_json::to_string_pretty(&v).expect("json") + "\n"
            }
            Format::Table => self.table(decimal),
        }
    }

    fn table(&self, decimal: bool) -> String {
        let mut rows: Vec<(String, String)> = vec![("command".into(), shell_words::join(&self.command))];
        rows.extend(flatten_section("inputs", &self.inputs));
        rows.extend(flatten_section("results", &self.results));
        if let Some(v) = self.verdict {
            rows.push(("verdict".into(), if v { "pass" } else { "fail" }.into()));
        }
        for (i, n) in self.notes.iter().enumerate() {
            rows.push((format!("notes[{i}]"), n.clone()));
        }
        let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        if decimal {
            let vw = rows.iter().map(|(_, v)| v.chars().count()).max().unwrap_or(0);
            out.push_str(&format!("{:width$}  {:vw$}  {}\n", "field", "value", "approx (non-authoritative)"));
            for (k, v) in &rows {
                let d = if k.starts_with("results.") { decimal_of(v).unwrap_or_default() } else { String::new() };
                out.push_str(format!("{k:width$}  {v:vw$}  {d}").trim_end());
                out.push('\n');
            }
        } else {
            for (k, v) in &rows {
                out.push_str(format!("{k:width$}  {v}").trim_end());
                out.push('\n');
            }
        }
        out
    }
}

/// `(dotted.key, rendered scalar)` pairs in field order.
pub fn flatten_section(prefix: &str, m: &Map<String, Value>) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for (k, v) in m {
        flatten(&format!("{prefix}.{k}"), v, &mut out);
    }
    out
}

fn flatten(key: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) if m.is_empty() => out.push((key.into(), "{}".into())),
        Value::Object(m) => {
            for (k, v) in m {
                flatten(&format!("{key}.{k}"), v, out);
            }
        }
        Value::Array(a) if a.iter().all(is_scalar) => {
            out.push((key.into(), format!("[{}]", a.iter().map(scalar).collect::<Vec<_>>().join(", "))));
        }
        Value::Array(a) => {
            for (i, v) in a.iter().enumerate() {
                flatten(&format!("{key}[{i}]"), v, out);
            }
        }
        v => out.push((key.into(), scalar(v))),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        v => v.to_string(),
    }
}

/// Approximate decimal of an exact rational rendering, if it is one.
fn decimal_of(s: &str) -> Option<String> {
    if !s.contains('/') {
        return None;
    }
    let r: Rat = s.parse().ok()?;
    Some(format!("{:.6}", r.to_f64()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use kstab_core::exactnum::q;

    #[test]
    fn json_round_trip() {
        let mut r = Report::new(&["beta".into()]);
        r.input("surface", "P2").result("beta", q(-1, 6)).result("list", vec![q(1, 2)]).note("n");
        r.verdict = Some(false);
        let v = r.to_json();
        assert_eq!(Report::from_json(&v).unwrap(), r);
        let t = r.render(Format::Table, true);
        assert!(t.contains("results.beta") && t.contains("-0.166667"));
    }
}
