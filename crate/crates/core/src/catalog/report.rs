use std::time::Duration;

use serde::Serialize;

use super::Params;
use crate::exact::Rational;

/// Concrete refutation of a failed row.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    /// `lhs.num * rhs.den - rhs.num * lhs.den`, nonzero for a failing row.
    pub difference: String,
    pub s: Rational,
    pub x: Rational,
    /// Both sides evaluated at `(s, x)`.
    pub lhs: String,
    pub rhs: String,
}

/// Verdicts from the independent oracle paths, when they were run.
#[derive(Debug, Clone, Default, Serialize, PartialEq, Eq)]
pub struct OracleVerdicts {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampling: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integer_s: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    /// Catalog tag, or the corpus name for rows checked through the DSL.
    pub id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub anchor: Option<&'static str>,
    pub n: u64,
    pub params: Params,
    pub passed: bool,
    pub expected_fail: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleVerdicts>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ReportRow {
    /// A row is in good standing when its verdict matches expectations: an
    /// ordinary row passed, or an expected-fail row failed.
    pub fn ok(&self) -> bool {
        let symbolic = self.passed != self.expected_fail;
        let oracle = self.oracle.as_ref().map_or(true, |o| {
            [o.sampling, o.integer_s].iter().flatten().all(|&v| v == self.passed)
        });
        symbolic && oracle
    }
}

#[derive(Debug, Clone, Copy, Default, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub expected_failed: usize,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub rows: Vec<ReportRow>,
    pub summary: Summary,
}

impl Report {
    pub fn from_rows(rows: Vec<ReportRow>) -> Self {
        let mut summary = Summary { total: rows.len(), ..Summary::default() };
        for row in &rows {
            match (row.ok(), row.expected_fail) {
                (true, false) => summary.passed += 1,
                (true, true) => summary.expected_failed += 1,
                (false, _) => summary.failed += 1,
            }
        }
        Report { rows, summary }
    }

    pub fn concat(reports: impl IntoIterator<Item = Report>) -> Self {
        Report::from_rows(reports.into_iter().flat_map(|r| r.rows).collect())
    }

    /// True when no row is out of standing.
    pub fn all_ok(&self) -> bool {
        self.summary.failed == 0
    }
}
