//! Rendering of result tables as CSV, JSON or aligned text.

use serde_json::{Map, Value};

use crate::config::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    /// Integers too large for `u64`, kept exact as decimal text.
    Big(String),
    Float(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Self::Int(n) => n.to_string(),
            Self::Big(s) | Self::Text(s) => s.clone(),
            Self::Float(x) => fmt_f64(*x),
            Self::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Self::Int(n) => Value::from(*n),
            Self::Big(s) | Self::Text(s) => Value::from(s.clone()),
            Self::Float(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Self::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Self::Float(x)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Self::Int(n as u64)
    }
}

impl From<u64> for Cell {
    fn from(n: u64) -> Self {
        Self::Int(n)
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Self::Text(s)
    }
}

/// Shortest round-trip decimal; scientific notation outside `[1e-4, 1e15)`.
pub fn fmt_f64(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 {
        "0".into()
    } else if (1e-4..1e15).contains(&a) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// A pass/fail numeric check attached to a run.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.value <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: &str, columns: Vec<&'static str>) -> Self {
        Self {
            command: command.to_string(),
            columns,
            rows: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn check(&mut self, name: impl Into<String>, value: f64, tolerance: f64) {
        self.checks.push(Check {
            name: name.into(),
            value,
            tolerance,
        });
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        // NaN never passes.
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn render(&self, format: Format) -> anyhow::Result<String> {
        match format {
            Format::Csv => self.csv(),
            Format::Json => self.json(),
            Format::Table => Ok(self.table()),
        }
    }

    fn csv(&self) -> anyhow::Result<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    fn json(&self) -> anyhow::Result<String> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(k, c)| (k.to_string(), c.json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                serde_json::json!({
                    "name": c.name,
                    "value": Cell::Float(c.value).json(),
                    "tolerance": c.tolerance,
                    "passed": c.passed(),
                })
            })
            .collect();
        let doc = serde_json::json!({
            "command": self.command,
            "columns": self.columns,
            "rows": rows,
            "checks": checks,
        });
        Ok(serde_json::to_string_pretty(&doc)? + "\n")
    }

    fn table(&self) -> String {
        // A lone value prints bare.
        if self.columns.len() == 1 && self.rows.len() == 1 && self.checks.is_empty() {
            return self.rows[0][0].render() + "\n";
        }
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::render).collect()).collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(j, h)| cells.iter().map(|r| r[j].chars().count()).chain([h.chars().count()]).max().unwrap_or(0))
            .collect();
        let line = |items: Vec<&str>| {
            let padded: Vec<String> = items
                .iter()
                .zip(&widths)
                .map(|(s, &w)| format!("{s:>w$}"))
                .collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(self.columns.clone());
        for r in &cells {
            out += &line(r.iter().map(String::as_str).collect());
        }
        for c in &self.checks {
            out += &format!(
                "check {}: {} (tolerance {}) {}\n",
                c.name,
                fmt_f64(c.value),
                fmt_f64(c.tolerance),
                if c.passed() { "PASS" } else { "FAIL" }
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("demo", vec!["t", "re", "abs"]);
        r.push(vec![0.0.into(), 1.0.into(), 1.0.into()]);
        r.push(vec![0.5.into(), (-0.25).into(), 0.25.into()]);
        r.check("bound", 1e-13, 1e-12);
        r
    }

    #[test]
    fn csv_dialect() {
        assert_eq!(sample().render(Format::Csv).unwrap(), "t,re,abs\n0,1,1\n0.5,-0.25,0.25\n");
    }

    #[test]
    fn json_and_table() {
        let j: Value = serde_json::from_str(&sample().render(Format::Json).unwrap()).unwrap();
        assert_eq!(j["rows"][1]["re"], Value::from(-0.25));
        assert_eq!(j["checks"][0]["passed"], Value::from(true));
        let t = sample().render(Format::Table).unwrap();
        assert!(t.starts_with("  t     re   abs\n  0      1     1\n"));
        assert!(t.contains("PASS"));
    }

    #[test]
    fn float_formatting() {
        assert_eq!(fmt_f64(0.078125), "0.078125");
        assert_eq!(fmt_f64(1e-17), "1e-17");
        assert_eq!(fmt_f64(-3.5e20), "-3.5e20");
        assert_eq!(fmt_f64(f64::NAN), "NaN");
    }
}
