//! Deterministic report documents: one table of results plus a list of
//! checks, rendered to CSV (config echoed as `#` comment lines) or to a
//! JSON object with `config`, `results`, and `checks` keys.
//!
//! Every real is serialized with 17 significant digits (`{:.16e}`), so a
//! rerun with the same resolved config is byte-identical and golden-file
//! diffs are exact. JSON carries the same digit strings.

use std::collections::BTreeMap;

use crate::specials::C_QUAD;

pub const TOOL_NAME: &str = "bphi";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Output format of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// One cell of the results table.
#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Real(f64),
    Int(u64),
    Text(String),
}

/// One named pass/fail line with its margin.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub margin: f64,
    pub detail: String,
}

/// A constant embedded in every output with its defining formula.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantTag {
    pub name: &'static str,
    pub value: f64,
    pub source: &'static str,
}

/// The full output of one command run.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub constants: Vec<ConstantTag>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Field>>,
    pub checks: Vec<Check>,
}

impl Document {
    /// Start a document for `command`, pre-loaded with the two envelope
    /// constants every report carries.
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            config: BTreeMap::new(),
            constants: vec![
                ConstantTag {
                    name: "c_upper",
                    value: C_QUAD,
                    source: "quadratic log-cosh envelope: e + 1/e - 2",
                },
                ConstantTag {
                    name: "c_lower",
                    value: 0.5,
                    source: "mgf witness shift: 1/(1 + w(1)) with w(1) = 1",
                },
            ],
            columns: Vec::new(),
            rows: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.config.insert(key.to_string(), value.into());
    }

    pub fn set_real(&mut self, key: &str, value: f64) {
        self.set(key, fmt17(value));
    }

    pub fn all_checks_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {TOOL_NAME} {TOOL_VERSION}\n"));
        out.push_str(&format!("# command={}\n", self.command));
        for (k, v) in &self.config {
            out.push_str(&format!("# {k}={v}\n"));
        }
        for c in &self.constants {
            out.push_str(&format!(
                "# constant {}={} source={}\n",
                c.name,
                fmt17(c.value),
                c.source
            ));
        }
        if !self.columns.is_empty() {
            out.push_str(&self.columns.join(","));
            out.push('\n');
            for row in &self.rows {
                let cells: Vec<String> = row.iter().map(field_csv).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
        }
        for c in &self.checks {
            out.push_str(&format!(
                "# check {} passed={} margin={} detail={}\n",
                c.name,
                c.passed,
                fmt17(c.margin),
                c.detail
            ));
        }
        out
    }

    fn render_json(&self) -> String {
        let mut out = String::new();
        out.push_str("{\n");
        out.push_str(&format!("  \"tool\": {},\n", json_string(TOOL_NAME)));
        out.push_str(&format!("  \"version\": {},\n", json_string(TOOL_VERSION)));
        out.push_str("  \"config\": {\n");
        out.push_str(&format!("    \"command\": {}", json_string(&self.command)));
        for (k, v) in &self.config {
            out.push_str(&format!(",\n    {}: {}", json_string(k), json_string(v)));
        }
        out.push_str("\n  },\n");
        out.push_str("  \"constants\": [\n");
        for (i, c) in self.constants.iter().enumerate() {
            out.push_str(&format!(
                "    {{\"name\": {}, \"value\": {}, \"source\": {}}}{}\n",
                json_string(c.name),
                json_real(c.value),
                json_string(c.source),
                if i + 1 < self.constants.len() {
                    ","
                } else {
                    ""
                }
            ));
        }
        out.push_str("  ],\n");
        out.push_str("  \"results\": [\n");
        for (i, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = self
                .columns
                .iter()
                .zip(row)
                .map(|(col, f)| format!("{}: {}", json_string(col), field_json(f)))
                .collect();
            out.push_str(&format!(
                "    {{{}}}{}\n",
                cells.join(", "),
                if i + 1 < self.rows.len() { "," } else { "" }
            ));
        }
        out.push_str("  ],\n");
        out.push_str("  \"checks\": [\n");
        for (i, c) in self.checks.iter().enumerate() {
            out.push_str(&format!(
                "    {{\"name\": {}, \"passed\": {}, \"margin\": {}, \"detail\": {}}}{}\n",
                json_string(&c.name),
                c.passed,
                json_real(c.margin),
                json_string(&c.detail),
                if i + 1 < self.checks.len() { "," } else { "" }
            ));
        }
        out.push_str("  ]\n");
        out.push_str("}\n");
        out
    }
}

/// 17-significant-digit decimal form of a real; `-0` folds to `0`, and
/// non-finite values spell out as `inf`/`-inf`/`nan`.
pub fn fmt17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

fn field_csv(f: &Field) -> String {
    match f {
        Field::Real(x) => fmt17(*x),
        Field::Int(i) => i.to_string(),
        Field::Text(s) => {
            debug_assert!(
                !s.contains(',') && !s.contains('\n'),
                "CSV text cells must stay delimiter-free"
            );
            s.clone()
        }
    }
}

fn field_json(f: &Field) -> String {
    match f {
        Field::Real(x) => json_real(*x),
        Field::Int(i) => i.to_string(),
        Field::Text(s) => json_string(s),
    }
}

/// JSON value for a real: the 17-digit number itself, or a quoted marker
/// for non-finite values (bare `inf` is not JSON).
fn json_real(x: f64) -> String {
    if x.is_finite() {
        fmt17(x)
    } else {
        json_string(&fmt17(x))
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fmt17_is_exact_and_stable() {
        assert_eq!(fmt17(0.5), "5.0000000000000000e-1");
        assert_eq!(fmt17(0.0), "0.0000000000000000e0");
        assert_eq!(fmt17(-0.0), "0.0000000000000000e0");
        assert_eq!(fmt17(f64::INFINITY), "inf");
        assert_eq!(fmt17(f64::NEG_INFINITY), "-inf");
        assert_eq!(fmt17(f64::NAN), "nan");
        // Round trip: 17 significant digits pin the double exactly.
        for &x in &[
            std::f64::consts::PI,
            1.0 / 3.0,
            2f64.sqrt() * 1e-200,
            -1.23456789e300,
        ] {
            let back: f64 = fmt17(x).parse().unwrap();
            assert_eq!(back, x);
        }
    }

    #[test]
    fn renders_are_deterministic() {
        let mut doc = Document::new("norm");
        doc.set("p", fmt17(0.5));
        doc.set("format", "csv");
        doc.columns = vec!["p", "g"];
        doc.rows = vec![vec![Field::Real(0.5), Field::Real(1.0)]];
        doc.checks = vec![Check {
            name: "demo".into(),
            passed: true,
            margin: 0.0,
            detail: "ok".into(),
        }];
        assert_eq!(doc.render(Format::Csv), doc.render(Format::Csv));
        assert_eq!(doc.render(Format::Json), doc.render(Format::Json));
        let csv = doc.render(Format::Csv);
        assert!(csv.contains("# command=norm"));
        assert!(csv.contains("# constant c_upper="));
        assert!(csv.contains("p,g\n5.0000000000000000e-1,1.0000000000000000e0\n"));
        let json = doc.render(Format::Json);
        assert!(json.contains("\"config\""));
        assert!(json.contains("\"results\""));
        assert!(json.contains("\"checks\""));
    }

    #[test]
    fn json_escaping() {
        assert_eq!(json_string("a\"b\\c\n"), "\"a\\\"b\\\\c\\n\"");
    }
}
