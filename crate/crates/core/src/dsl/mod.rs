//! A small expression language for finite-sum identities.
//!
//! Programs mention three free symbols: the integer `n`, the symbolic `s`
//! and the symbolic `x`. Builtins are `H(n)`, `Hr(n, r)`, `C(a, b)`,
//! `CS(a, b)` = `binom(s + a, b)`, `PSID(a, b)` = `psi(s + a) - psi(s + b)`
//! and `PSI1D(a, b)` for the trigamma difference. Sums are written
//! `sum(k=lo..hi, body)` and are empty when `lo > hi`.
//!
//! ```
//! use hforge::dsl;
//!
//! let id = dsl::compile_identity("sum(k=1..n, (-1)^(k-1)/k * C(n,k)) == H(n)").unwrap();
//! let report = dsl::check_identity("euler", &id, 1..=10, &Default::default()).unwrap();
//! assert!(report.all_ok());
//! ```

mod ast;
mod check;
mod corpus;
mod diag;
mod eval;
mod lexer;
mod parser;
mod pretty;

use std::ops::RangeInclusive;
use std::time::Instant;

pub use ast::{Builtin, Dom, Expr, ExprKind, Identity, Span};
pub use check::{check, check_sides, FREE_SYMBOLS};
pub use corpus::{catalog_key, parse_corpus, run_corpus, CorpusEntry};
pub use diag::{line_col, Diagnostic, Severity};
pub use eval::{eval, eval_with, EvalError, Value};
pub use parser::{parse_expr, parse_identity};

use crate::catalog::{fan_out, make_witness, Params, Report, ReportRow, VerifyOptions};
use crate::special::Harmonics;

/// Parses and checks a single expression.
pub fn compile_expr(src: &str) -> Result<Expr, Vec<Diagnostic>> {
    parse_expr(src).and_then(check)
}

/// Parses and checks `lhs == rhs`.
pub fn compile_identity(src: &str) -> Result<Identity, Vec<Diagnostic>> {
    parse_identity(src).and_then(check_sides)
}

pub(crate) fn check_cell(name: &str, id: &Identity, n: u64, h: Harmonics<'_>) -> Result<ReportRow, EvalError> {
    let start = Instant::now();
    let lhs = eval_with(&id.lhs, n, h)?.into_bifrac();
    let rhs = eval_with(&id.rhs, n, h)?.into_bifrac();
    let passed = lhs == rhs;
    let elapsed = start.elapsed();
    Ok(ReportRow {
        id: name.to_string(),
        anchor: None,
        n,
        params: Params::none(),
        passed,
        expected_fail: false,
        witness: (!passed).then(|| make_witness(&lhs, &rhs)),
        oracle: None,
        elapsed,
    })
}

/// One row per `n`, in order.
pub fn check_identity(
    name: &str,
    id: &Identity,
    ns: RangeInclusive<u64>,
    opts: &VerifyOptions,
) -> Result<Report, EvalError> {
    let h = opts.harmonics();
    let ns: Vec<u64> = ns.collect();
    let rows = fan_out(&ns, opts.workers, |&n| check_cell(name, id, n, h));
    Ok(Report::from_rows(rows.into_iter().collect::<Result<_, _>>()?))
}
