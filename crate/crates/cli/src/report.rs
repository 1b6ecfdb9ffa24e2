use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

/// A numerical identity judged against a tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub defect: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(defect: f64, tolerance: f64) -> Self {
        Check {
            defect,
            tolerance,
            // NaN fails
            pass: defect <= tolerance,
        }
    }
}

/// Machine-readable output of one subcommand. Maps are ordered, so equal
/// inputs give byte-identical output.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub inputs: BTreeMap<String, Value>,
    pub results: BTreeMap<String, Value>,
    pub tolerances: BTreeMap<String, f64>,
    pub checks: BTreeMap<String, Check>,
    pub pass: bool,
    /// Per-check tolerance override from `--tol`.
    #[serde(skip)]
    tol_override: Option<f64>,
}

impl Report {
    pub fn new(command: &str, seed: u64, tol_override: Option<f64>) -> Self {
        Report {
            command: command.to_string(),
            seed,
            inputs: BTreeMap::new(),
            results: BTreeMap::new(),
            tolerances: BTreeMap::new(),
            checks: BTreeMap::new(),
            pass: true,
            tol_override,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.to_string(), value.into());
    }

    pub fn reals(&mut self, key: &str, values: &[f64]) {
        self.result(key, reals(values));
    }

    pub fn complexes(&mut self, key: &str, values: &[Complex64]) {
        self.result(key, complexes(values));
    }

    /// Records `defect` against `default_tol`, or against `--tol` when given.
    pub fn check(&mut self, name: &str, defect: f64, default_tol: f64) {
        let tol = self.tol_override.unwrap_or(default_tol);
        let c = Check::new(defect, tol);
        self.pass &= c.pass;
        self.checks.insert(name.to_string(), c);
    }

    /// Keeps the worst defect seen under `name`.
    pub fn check_max(&mut self, name: &str, defect: f64, default_tol: f64) {
        let worst = match self.checks.get(name) {
            Some(c) if defect <= c.defect || c.defect.is_nan() => c.defect,
            _ => defect,
        };
        self.check(name, worst, default_tol);
        self.pass = self.checks.values().all(|c| c.pass);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Long format: `section,name,index,re,im`, one row per scalar. Complex
    /// numbers fill `re` and `im`; nested values get dotted or bracketed names.
    pub fn to_csv(&self) -> String {
        let mut rows = Vec::new();
        flatten("command", &json!(self.command), &mut rows);
        flatten("seed", &json!(self.seed), &mut rows);
        flatten("pass", &json!(self.pass), &mut rows);
        let mut out = String::from("section,name,index,re,im\n");
        let mut emit = |section: &str, rows: &[(String, usize, String, String)]| {
            for (name, i, re, im) in rows {
                let _ = writeln!(out, "{section},{},{i},{},{}", field(name), field(re), field(im));
            }
        };
        emit("meta", &rows);
        for (section, map) in [("input", &self.inputs), ("result", &self.results)] {
            for (k, v) in map {
                let mut rows = Vec::new();
                flatten(k, v, &mut rows);
                emit(section, &rows);
            }
        }
        let mut rows = Vec::new();
        for (k, v) in &self.tolerances {
            flatten(k, &json!(v), &mut rows);
        }
        emit("tolerance", &rows);
        let mut rows = Vec::new();
        for (k, c) in &self.checks {
            flatten(k, &serde_json::to_value(c).expect("check serializes"), &mut rows);
        }
        emit("check", &rows);
        out
    }
}

fn is_complex(v: &Value) -> bool {
    matches!(v, Value::Array(p) if p.len() == 2 && p.iter().all(Value::is_number))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Bool(b) => (*b as u8).to_string(),
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// A top-level array of numbers is a real list; `[re, im]` pairs are complex
/// only as elements of a list.
fn flatten(name: &str, v: &Value, rows: &mut Vec<(String, usize, String, String)>) {
    match v {
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                match item {
                    Value::Array(p) if is_complex(item) => {
                        rows.push((name.to_string(), i, p[0].to_string(), p[1].to_string()))
                    }
                    Value::Array(_) | Value::Object(_) => {
                        flatten(&format!("{name}[{i}]"), item, rows)
                    }
                    _ => rows.push((name.to_string(), i, scalar(item), String::new())),
                }
            }
        }
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&format!("{name}.{k}"), x, rows);
            }
        }
        _ => rows.push((name.to_string(), 0, scalar(v), String::new())),
    }
}

fn field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn reals(values: &[f64]) -> Value {
    Value::Array(values.iter().map(|v| json!(v)).collect())
}

pub fn complexes(values: &[Complex64]) -> Value {
    Value::Array(values.iter().map(|z| json!([z.re, z.im])).collect())
}
