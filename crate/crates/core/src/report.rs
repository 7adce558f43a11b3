//! Structured verification outcomes, serialized one JSON object per line.

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// Outcome of comparing two independent routes to the same quantity.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub check: String,
    pub params: Value,
    pub route_a: String,
    pub route_b: String,
    /// "exact" for exact comparisons, otherwise the largest observed difference.
    pub max_abs_diff: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<String>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub mismatches: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Report {
    /// Exact comparison; passes iff there are no mismatches.
    pub fn exact(check: &str, params: Value, route_a: &str, route_b: &str, mismatches: Vec<String>) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            check: check.to_string(),
            params,
            route_a: route_a.to_string(),
            route_b: route_b.to_string(),
            max_abs_diff: "exact".to_string(),
            tolerance: None,
            pass: mismatches.is_empty(),
            mismatches,
            note: None,
        }
    }

    /// Numerical comparison; passes iff `diff < tol`.
    pub fn numeric(check: &str, params: Value, route_a: &str, route_b: &str, diff: f64, tol: f64) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            check: check.to_string(),
            params,
            route_a: route_a.to_string(),
            route_b: route_b.to_string(),
            max_abs_diff: format!("{diff:.3e}"),
            tolerance: Some(format!("{tol:.1e}")),
            pass: diff < tol,
            mismatches: Vec::new(),
            note: None,
        }
    }

    /// A failed check that could not be carried out.
    pub fn error(check: &str, params: Value, err: &crate::Error) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            check: check.to_string(),
            params,
            route_a: String::new(),
            route_b: String::new(),
            max_abs_diff: "n/a".to_string(),
            tolerance: None,
            pass: false,
            mismatches: Vec::new(),
            note: Some(err.to_string()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_mismatches(mut self, m: Vec<String>) -> Self {
        if !m.is_empty() {
            self.pass = false;
        }
        self.mismatches = m;
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{} {} {} [{} vs {}] diff={}",
            if self.pass { "PASS" } else { "FAIL" },
            self.check,
            self.params,
            self.route_a,
            self.route_b,
            self.max_abs_diff
        );
        if let Some(t) = &self.tolerance {
            s.push_str(&format!(" tol={t}"));
        }
        if !self.mismatches.is_empty() {
            s.push_str(&format!(" mismatches={}", self.mismatches.join(",")));
        }
        if let Some(n) = &self.note {
            s.push_str(&format!(" ({n})"));
        }
        s
    }
}

/// Result of checking a single-valued projection identity term by term.
#[derive(Clone, Debug, Serialize)]
pub struct SvReport {
    pub label: String,
    pub lhs: Value,
    pub rhs: Value,
    pub pass: bool,
    pub mismatches: Vec<String>,
}

impl From<SvReport> for Report {
    fn from(r: SvReport) -> Report {
        Report::exact(
            &r.label,
            serde_json::json!({}),
            "sv(open)",
            "closed",
            r.mismatches,
        )
    }
}

/// Folds a family of reports into one summary line.
pub fn summarize(check: &str, params: Value, reports: &[Report]) -> Report {
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{}{}", r.check, r.params))
        .collect();
    let worst = reports
        .iter()
        .filter_map(|r| r.max_abs_diff.parse::<f64>().ok())
        .fold(None, |m: Option<f64>, d| Some(m.map_or(d, |m| m.max(d))));
    let mut out = Report::exact(check, params, "", "", failed);
    out.route_a = reports.first().map(|r| r.route_a.clone()).unwrap_or_default();
    out.route_b = reports.first().map(|r| r.route_b.clone()).unwrap_or_default();
    if let Some(w) = worst {
        out.max_abs_diff = format!("{w:.3e}");
        out.tolerance = reports.first().and_then(|r| r.tolerance.clone());
    }
    out.note = Some(format!("{} cases", reports.len()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_line_is_stable() {
        let r = Report::numeric("zeta", serde_json::json!({"k": 3}), "a", "b", 1e-25, 1e-20);
        assert_eq!(
            r.to_json_line(),
            r#"{"schema":1,"check":"zeta","params":{"k":3},"route_a":"a","route_b":"b","max_abs_diff":"1.000e-25","tolerance":"1.0e-20","pass":true}"#
        );
        let s = summarize("all", serde_json::json!({}), &[r.clone(), r]);
        assert!(s.pass);
        assert_eq!(s.max_abs_diff, "1.000e-25");
    }
}
