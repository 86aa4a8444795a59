//! Plain-text tables, CSV and number formatting shared by the subcommands.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use qgraph::length::UnitTable;
use qgraph::Step;

/// Rows of pre-formatted cells under named columns.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Self {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    /// Left-aligned columns separated by two spaces.
    pub fn to_text(&self) -> String {
        let width = |i: usize| {
            std::iter::once(&self.headers[i])
                .chain(self.rows.iter().map(|r| &r[i]))
                .map(|c| c.chars().count())
                .max()
                .unwrap_or(0)
        };
        let widths: Vec<usize> = (0..self.headers.len()).map(width).collect();
        let line = |cells: &[String]| {
            let mut s = String::new();
            for (i, c) in cells.iter().enumerate() {
                if i + 1 == cells.len() {
                    s.push_str(c);
                } else {
                    s.push_str(c);
                    s.extend(std::iter::repeat_n(' ', widths[i] - c.chars().count() + 2));
                }
            }
            s.truncate(s.trim_end().len());
            s.push('\n');
            s
        };
        let mut out = line(&self.headers);
        for r in &self.rows {
            out.push_str(&line(r));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }
}

/// Fixed ten decimals, `inf` for infinity.
pub fn fixed(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.10}")
    }
}

pub fn sci(x: f64) -> String {
    format!("{x:.3e}")
}

/// JSON number, or `null` when not finite.
pub fn json_num(x: f64) -> serde_json::Value {
    serde_json::Number::from_f64(x).map_or(serde_json::Value::Null, serde_json::Value::Number)
}

pub fn check(b: bool) -> String {
    if b { "✓" } else { "✗" }.to_string()
}

pub fn step_text(step: &Step, units: &UnitTable) -> String {
    step.display(units).to_string()
}

fn ratio_text(r: &BigRational) -> (String, String) {
    (r.numer().to_string(), r.denom().to_string())
}

/// `lambda = pi^2 / s^2` written out, e.g. `π²/3`, `4`, `4π²`.
///
/// Units named `pi` and `one` are recognised, as is `sqrt<N>` for an integer `N`;
/// any other unit appears squared in the denominator.
pub fn lambda_exact(step: &Step, units: &UnitTable) -> String {
    let c = step.coeff();
    // (q/p)^2
    let inv = BigRational::one() / c.clone();
    let mut r = &inv * &inv;
    let token = units.token(step.unit());
    if token == "pi" {
        let (n, d) = ratio_text(&r);
        return if d == "1" { n } else { format!("{n}/{d}") };
    }
    let mut extra = String::new();
    if let Some(n) = token.strip_prefix("sqrt").and_then(|s| s.parse::<u64>().ok()).filter(|&n| n > 0) {
        r /= BigRational::from_integer(BigInt::from(n));
    } else if token != "one" {
        extra = format!("{token}²");
    }
    let (n, d) = ratio_text(&r);
    let num = if n == "1" { "π²".to_string() } else { format!("{n}π²") };
    match (d.as_str(), extra.is_empty()) {
        ("1", true) => num,
        (_, true) => format!("{num}/{d}"),
        ("1", false) => format!("{num}/{extra}"),
        (_, false) => format!("{num}/({d}·{extra})"),
    }
}
