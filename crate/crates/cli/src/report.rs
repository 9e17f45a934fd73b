//! Report records and number formatting.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One checked quantitative claim.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimReport {
    pub claim_id: String,
    pub criterion: u32,
    pub description: String,
    pub status: Status,
    pub observed: Vec<f64>,
    pub expected: Vec<f64>,
    pub tolerance: f64,
    /// Where the expected values come from.
    pub provenance: String,
}

impl ClaimReport {
    /// Builds a report; the status is pass iff every observed value is
    /// within `tolerance` of the expected one.
    pub fn evaluate(
        claim_id: &str,
        criterion: u32,
        description: &str,
        observed: Vec<f64>,
        expected: Vec<f64>,
        tolerance: f64,
        provenance: &str,
    ) -> Self {
        let pass = observed.len() == expected.len()
            && observed
                .iter()
                .zip(&expected)
                .all(|(o, e)| (o - e).abs() <= tolerance);
        Self {
            claim_id: claim_id.to_string(),
            criterion,
            description: description.to_string(),
            status: if pass { Status::Pass } else { Status::Fail },
            observed,
            expected,
            tolerance,
            provenance: provenance.to_string(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Largest componentwise |observed - expected|.
    pub fn worst_error(&self) -> f64 {
        self.observed
            .iter()
            .zip(&self.expected)
            .map(|(o, e)| (o - e).abs())
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "claim_id": self.claim_id,
            "criterion": self.criterion,
            "description": self.description,
            "status": self.status,
            "observed": self.observed.iter().map(|x| num(*x)).collect::<Vec<_>>(),
            "expected": self.expected.iter().map(|x| num(*x)).collect::<Vec<_>>(),
            "tolerance": num(self.tolerance),
            "provenance": self.provenance,
        })
    }
}

/// Rounds to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

/// JSON number with 12 significant digits; non-finite values become null.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(round12(x)).map_or(Value::Null, Value::Number)
}

/// Table formatting with 6 significant digits.
pub fn fmt6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-4..6).contains(&magnitude) {
        return format!("{x:.5e}");
    }
    let decimals = (5 - magnitude).max(0) as usize;
    let text = format!("{x:.decimals$}");
    if text.contains('.') {
        text.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        text
    }
}

/// Plain text table with left-aligned columns.
pub fn render_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = line(header.to_vec());
    out.push('\n');
    out.push_str(&line(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect()));
    out.push('\n');
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_tolerance() {
        let ok = ClaimReport::evaluate("x", 1, "", vec![1.0, 2.0], vec![1.0, 2.0 + 1e-13], 1e-12, "exact");
        assert!(ok.passed());
        let bad = ClaimReport::evaluate("x", 1, "", vec![1.0], vec![1.1], 1e-12, "exact");
        assert!(!bad.passed());
        assert!((bad.worst_error() - 0.1).abs() < 1e-15);
        let short = ClaimReport::evaluate("x", 1, "", vec![], vec![1.0], 1.0, "exact");
        assert!(!short.passed());
        let nan = ClaimReport::evaluate("x", 1, "", vec![f64::NAN], vec![0.0], 1.0, "exact");
        assert!(!nan.passed());
    }

    #[test]
    fn twelve_digits() {
        assert_eq!(round12(1.0 / 3.0), 0.333333333333);
        assert_eq!(round12(2.0 / 3.0 * 1e-7), 6.66666666667e-8);
        assert_eq!(num(f64::NAN), Value::Null);
        assert_eq!(num(-0.0).to_string(), "0.0");
    }

    #[test]
    fn six_digits() {
        assert_eq!(fmt6(0.5), "0.5");
        assert_eq!(fmt6(10.0), "10");
        assert_eq!(fmt6(1.0 / 3.0), "0.333333");
        assert_eq!(fmt6(-123.456789), "-123.457");
        assert_eq!(fmt6(1.5e-9), "1.50000e-9");
        assert_eq!(fmt6(0.0), "0");
    }

    #[test]
    fn table_alignment() {
        let t = render_table(&["a", "bb"], &[vec!["xxx".into(), "y".into()]]);
        assert_eq!(t, "a    bb\n---  --\nxxx  y\n");
    }
}
