use std::fmt;

use serde::Serialize;

use super::{BenchRow, Format, RunConfig};
use crate::catalog::{Domain, IdentityEntry, IdentityId, ParamDescriptor, Report, ReportRow, Summary};

#[derive(Debug, Clone, Serialize)]
pub struct ListRow {
    pub id: IdentityId,
    pub anchor: &'static str,
    pub domain: Domain,
    pub n_min: u64,
    pub params: &'static [ParamDescriptor],
}

impl From<&IdentityEntry> for ListRow {
    fn from(e: &IdentityEntry) -> Self {
        ListRow { id: e.id, anchor: e.anchor, domain: e.domain, n_min: e.n_min, params: e.extra_params }
    }
}

impl fmt::Display for ListRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|p| format!("{} ({})", p.name, p.constraint)).collect();
        let params = if params.is_empty() { "-".to_string() } else { params.join("; ") };
        write!(f, "{:<9} {:<7} n>={}  {:<40} {}", self.id, self.domain, self.n_min, params, self.anchor)
    }
}

pub(super) fn list_csv(rows: &[ListRow]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["id", "domain", "n_min", "params", "anchor"])?;
    for r in rows {
        let params: Vec<&str> = r.params.iter().map(|p| p.name).collect();
        w.write_record([r.id.tag(), &r.domain.to_string(), &r.n_min.to_string(), &params.join(";"), r.anchor])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

#[derive(Serialize)]
struct JsonRow<'a> {
    #[serde(flatten)]
    row: &'a ReportRow,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ns: Option<u128>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    tool_version: &'static str,
    config: &'a RunConfig,
    rows: Vec<JsonRow<'a>>,
    summary: Summary,
}

fn label(row: &ReportRow) -> String {
    let params = row.params.to_string();
    if params.is_empty() {
        row.id.clone()
    } else {
        format!("{}[{params}]", row.id)
    }
}

fn status(row: &ReportRow) -> &'static str {
    match (row.ok(), row.passed, row.expected_fail) {
        (true, true, _) => "ok",
        (true, false, _) => "xfail",
        (false, true, true) => "XPASS",
        (false, _, _) => "FAIL",
    }
}

fn oracle_text(row: &ReportRow) -> String {
    let Some(o) = &row.oracle else { return String::new() };
    let show = |v: Option<bool>| match v {
        Some(true) => "agree",
        Some(false) => "refute",
        None => "-",
    };
    format!("  sampling={} integer-s={}", show(o.sampling), show(o.integer_s))
}

fn text(report: &Report, timing: bool) -> String {
    let mut out = String::new();
    for row in &report.rows {
        out.push_str(&format!("{:<5} {:<28} n={:<3}", status(row), label(row), row.n));
        out.push_str(&oracle_text(row));
        if timing {
            out.push_str(&format!("  {:.3} ms", row.elapsed.as_secs_f64() * 1e3));
        }
        if let Some(w) = &row.witness {
            out.push_str(&format!("  lhs={} rhs={} at s={}, x={}", w.lhs, w.rhs, w.s, w.x));
        }
        out.push('\n');
    }
    let s = &report.summary;
    out.push_str(&format!(
        "{} rows: {} passed, {} failed, {} expected failures\n",
        s.total, s.passed, s.failed, s.expected_failed
    ));
    out
}

fn csv_report(report: &Report, timing: bool) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["id", "params", "n", "passed", "expected_fail", "witness_lhs", "witness_rhs", "elapsed_ns"])?;
    for row in &report.rows {
        let (lhs, rhs) = row.witness.as_ref().map_or((String::new(), String::new()), |w| (w.lhs.clone(), w.rhs.clone()));
        let elapsed = if timing { row.elapsed.as_nanos().to_string() } else { String::new() };
        w.write_record([
            row.id.as_str(),
            &row.params.to_string(),
            &row.n.to_string(),
            &row.passed.to_string(),
            &row.expected_fail.to_string(),
            &lhs,
            &rhs,
            &elapsed,
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Renders a report in the configured format.
pub fn render_report(report: &Report, config: &RunConfig, timing: bool) -> anyhow::Result<String> {
    Ok(match config.format {
        Format::Text => text(report, timing),
        Format::Csv => csv_report(report, timing)?,
        Format::Json => {
            let rows = report
                .rows
                .iter()
                .map(|row| JsonRow { row, elapsed_ns: timing.then(|| row.elapsed.as_nanos()) })
                .collect();
            let doc = JsonReport { tool_version: env!("CARGO_PKG_VERSION"), config, rows, summary: report.summary };
            serde_json::to_string_pretty(&doc)? + "\n"
        }
    })
}

pub(super) fn bench(rows: &[BenchRow], format: Format) -> anyhow::Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(rows)? + "\n"),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["id", "n", "workers", "memo", "nanos"])?;
            for r in rows {
                w.write_record([r.id.tag(), &r.n.to_string(), &r.workers.to_string(), &r.memo.to_string(), &r.nanos.to_string()])?;
            }
            Ok(String::from_utf8(w.into_inner()?)?)
        }
        Format::Text => {
            let mut out = format!("{:<9} {:>4} {:>7} {:>5} {:>14}\n", "id", "n", "workers", "memo", "ms");
            for r in rows {
                out.push_str(&format!(
                    "{:<9} {:>4} {:>7} {:>5} {:>14.3}\n",
                    r.id,
                    r.n,
                    r.workers,
                    if r.memo { "on" } else { "off" },
                    r.nanos as f64 / 1e6
                ));
            }
            Ok(out)
        }
    }
}
