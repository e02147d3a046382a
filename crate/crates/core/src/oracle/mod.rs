//! Independent checks of the catalog.
//!
//! Both paths evaluate hand-written scalar transcriptions of each formula
//! (see `printed`) and share no evaluator with the symbolic pipeline.
//! Sampling evaluates at a grid of positive integer points large enough
//! to pin down the cross-multiplied difference polynomial; the integer-`s`
//! path replaces every psi difference by a harmonic difference.

mod printed;

use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::catalog::{
    lookup, CatalogError, IdentityEntry, IdentityId, OracleVerdicts, Params, Report, ReportRow, Variant,
    Witness,
};
use crate::exact::Rational;

use printed::{sides, table_sizes, Point, SValue};

/// Integer values of `s` used by the `integer-s` oracle mode.
pub const INTEGER_S_POINTS: [u64; 4] = [0, 1, 2, 5];

#[derive(Debug, Error)]
pub enum OracleError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("{0} does not depend on s")]
    NoS(IdentityId),
}

/// Upper bounds on the `s`- and `x`-degree of `N_L D_R - N_R D_L` at `n`,
/// where each side is written over the denominators its formula shows.
///
/// Only psi terms carry `s`-denominators: they all divide
/// `prod_{j=1}^{n} (s+j)`, squared for the second-order families. The
/// binomials `binom(s+n, k)` add at most `n`. In `x` the sides are
/// polynomials of degree `n` once `(1+x)^n` absorbs the `(1+x)^{-k}`.
/// The `s` bounds carry two degrees of slack.
pub fn degree_bound(entry: &IdentityEntry, n: u64) -> (u64, u64) {
    use IdentityId::*;
    let bs = match entry.id {
        Thm2_4 | Cor2_5 | Thm2_8 | Thm2_11 => 3 * n + 2,
        _ if entry.domain.has_s() => 2 * n + 2,
        _ => 0,
    };
    let bx = match entry.id {
        Id7 | Id9 => 2 * n,
        _ if entry.domain.has_x() => n,
        _ => 0,
    };
    (bs, bx)
}

/// Where a sampled evaluation disagreed.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Mismatch {
    pub s: Rational,
    pub x: Rational,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleCertificate {
    pub id: IdentityId,
    pub n: u64,
    pub params: Params,
    /// The full grid `(s, x)`; for domains without `s` or `x` that
    /// coordinate is fixed at 1 and ignored.
    pub points: Vec<(Rational, Rational)>,
    pub bound: (u64, u64),
    pub all_equal: bool,
    pub mismatch: Option<Mismatch>,
}

impl SampleCertificate {
    /// Points needed for the grid argument to apply.
    pub fn required(&self) -> usize {
        ((self.bound.0 + 1) * (self.bound.1 + 1)) as usize
    }
}

fn scalar_point(entry: &IdentityEntry, n: u64, params: &Params, s: SValue, x: Rational) -> Point {
    let (hmax, amax) = table_sizes(entry.id, n, params);
    Point::new(s, x, hmax, amax)
}

/// Both sides at a positive rational `s` and a rational `x != -1`.
pub fn sides_at(
    entry: &IdentityEntry,
    n: u64,
    params: &Params,
    s: &Rational,
    x: &Rational,
) -> Result<(Rational, Rational), CatalogError> {
    entry.validate(n, params)?;
    if entry.domain.has_s() && !(s > &Rational::zero()) {
        return Err(CatalogError::InvalidParams(format!("sample s = {s} must be positive")));
    }
    if *x == -1 {
        return Err(CatalogError::InvalidParams("sample x = -1 is a pole".into()));
    }
    let p = scalar_point(entry, n, params, SValue::Rational(s.clone()), x.clone());
    Ok(sides(entry.id, n, params, &p))
}

/// Both sides at an integer `s0 >= 0`, computed from harmonic numbers.
pub fn sides_at_integer_s(
    entry: &IdentityEntry,
    n: u64,
    params: &Params,
    s0: u64,
    x: &Rational,
) -> Result<(Rational, Rational), CatalogError> {
    entry.validate(n, params)?;
    if *x == -1 {
        return Err(CatalogError::InvalidParams("sample x = -1 is a pole".into()));
    }
    let p = scalar_point(entry, n, params, SValue::Integer(s0), x.clone());
    Ok(sides(entry.id, n, params, &p))
}

fn grid(count: u64, used: bool) -> Vec<Rational> {
    let count = if used { count } else { 1 };
    (1..=count as i64).map(Rational::from).collect()
}

/// Deterministic identity test on the grid `s, x in {1, 2, ...}`.
pub fn sampling_verify(entry: &IdentityEntry, n: u64, params: &Params) -> Result<SampleCertificate, CatalogError> {
    entry.validate(n, params)?;
    let bound = degree_bound(entry, n);
    let ss = grid(bound.0 + 1, entry.domain.has_s());
    let xs = grid(bound.1 + 1, entry.domain.has_x());
    let points: Vec<(Rational, Rational)> =
        ss.iter().flat_map(|s| xs.iter().map(move |x| (s.clone(), x.clone()))).collect();
    assert!(
        points.len() as u64 >= (bound.0 + 1) * (bound.1 + 1),
        "grid smaller than the degree bound"
    );
    let mut mismatch = None;
    for (s, x) in &points {
        let p = scalar_point(entry, n, params, SValue::Rational(s.clone()), x.clone());
        let (lhs, rhs) = sides(entry.id, n, params, &p);
        if lhs != rhs {
            mismatch = Some(Mismatch { s: s.clone(), x: x.clone(), lhs, rhs });
            break;
        }
    }
    Ok(SampleCertificate {
        id: entry.id,
        n,
        params: params.clone(),
        points,
        bound,
        all_equal: mismatch.is_none(),
        mismatch,
    })
}

/// Checks the entry at `s = s0` using only harmonic-number arithmetic. For
/// entries with `x` the check covers the `x` grid of `sampling_verify`.
pub fn integer_s_check(entry: &IdentityEntry, n: u64, params: &Params, s0: u64) -> Result<bool, OracleError> {
    if !entry.domain.has_s() {
        return Err(OracleError::NoS(entry.id));
    }
    entry.validate(n, params)?;
    let (_, bx) = degree_bound(entry, n);
    let xs = grid(bx + 1, entry.domain.has_x());
    Ok(xs.iter().all(|x| {
        let p = scalar_point(entry, n, params, SValue::Integer(s0), x.clone());
        let (lhs, rhs) = sides(entry.id, n, params, &p);
        lhs == rhs
    }))
}

/// Which oracle paths to run alongside the symbolic check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleMode {
    #[default]
    Off,
    Sampling,
    IntegerS,
    Both,
}

impl OracleMode {
    pub fn sampling(self) -> bool {
        matches!(self, OracleMode::Sampling | OracleMode::Both)
    }

    pub fn integer_s(self) -> bool {
        matches!(self, OracleMode::IntegerS | OracleMode::Both)
    }
}

/// Oracle verdicts for one cell. The integer-`s` verdict is the conjunction
/// over `INTEGER_S_POINTS` and is absent for entries without `s`.
pub fn verdicts(entry: &IdentityEntry, n: u64, params: &Params, mode: OracleMode) -> Result<OracleVerdicts, CatalogError> {
    let sampling = if mode.sampling() { Some(sampling_verify(entry, n, params)?.all_equal) } else { None };
    let integer_s = if mode.integer_s() && entry.domain.has_s() {
        let mut all = true;
        for s0 in INTEGER_S_POINTS {
            match integer_s_check(entry, n, params, s0) {
                Ok(v) => all &= v,
                Err(OracleError::Catalog(e)) => return Err(e),
                Err(OracleError::NoS(_)) => unreachable!("domain has s"),
            }
        }
        Some(all)
    } else {
        None
    };
    Ok(OracleVerdicts { sampling, integer_s })
}

/// Fills in oracle verdicts for every catalog row of `report`.
pub fn annotate(report: Report, mode: OracleMode, workers: usize) -> Result<Report, CatalogError> {
    if mode == OracleMode::Off {
        return Ok(report);
    }
    let results = crate::catalog::fan_out(&report.rows, workers, |row| {
        let Ok(id) = row.id.parse::<IdentityId>() else { return Ok(None) };
        verdicts(lookup(id), row.n, &row.params, mode).map(Some)
    });
    let mut rows = report.rows;
    for (row, v) in rows.iter_mut().zip(results) {
        if let Some(v) = v? {
            row.oracle = Some(v);
        }
    }
    Ok(Report::from_rows(rows))
}

fn scalar_row(id: IdentityId, n: u64, params: Params, lhs: Rational, rhs: Rational, passed: bool, start: Instant) -> ReportRow {
    let entry = lookup(id);
    let expected_fail = entry.expected_fail(&params);
    ReportRow {
        id: id.tag().to_string(),
        anchor: Some(entry.anchor),
        n,
        params,
        passed,
        expected_fail,
        witness: (!passed).then(|| Witness {
            difference: (&lhs - &rhs).to_string(),
            s: Rational::from(1),
            x: Rational::from(2),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }),
        oracle: None,
        elapsed: start.elapsed(),
    }
}

/// The ID-13 family by direct summation for each `m` in `m_set`, followed
/// by the ID-14 rows: each printed right-hand side must equal the ID-13
/// right-hand side at its `m`. The `m = 3` form as printed is an
/// expected failure; its corrected reading is checked too.
pub fn id13_family_check(n_max: u64, m_set: &[u64]) -> Result<Report, CatalogError> {
    let id13 = lookup(IdentityId::Id13);
    let id14 = lookup(IdentityId::Id14);
    let x = Rational::from(1);
    let mut rows = Vec::new();
    for &m in m_set {
        for n in 1..=n_max {
            let start = Instant::now();
            let params = Params::m(m);
            let (lhs, rhs) = sides_at_integer_s(id13, n, &params, 0, &x)?;
            let passed = lhs == rhs;
            rows.push(scalar_row(IdentityId::Id13, n, params, lhs, rhs, passed, start));
        }
    }
    let mut special = Vec::new();
    if m_set.contains(&2) {
        special.push(Params::m(2));
    }
    if m_set.contains(&3) {
        special.push(Params::m(3).with_variant(Variant::Printed));
        special.push(Params::m(3).with_variant(Variant::Corrected));
    }
    for params in special {
        for n in 1..=n_max {
            let start = Instant::now();
            let (lhs, rhs) = sides_at_integer_s(id14, n, &params, 0, &x)?;
            let (_, general) = sides_at_integer_s(id13, n, &Params::m(params.m_or(2)), 0, &x)?;
            let passed = rhs == general && lhs == rhs;
            rows.push(scalar_row(IdentityId::Id14, n, params.clone(), lhs, rhs, passed, start));
        }
    }
    Ok(Report::from_rows(rows))
}
