//! The identity catalog and its verification engine.
//!
//! Every entry carries two independent evaluators producing exact
//! [`BiFrac`] values for a concrete `n`. Equality per `n` is symbolic in `s`
//! and `x`, so a passing row settles the identity for all admissible `s`
//! and `x` at that `n`.

mod formulas;
mod report;

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::sync::OnceLock;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exact::{ArithError, BiFrac, Rational};
use crate::special::{HarmonicCache, Harmonics};

pub use report::{OracleVerdicts, Report, ReportRow, Summary, Witness};

use formulas::{Ctx, SideResult};

macro_rules! identity_ids {
    ($($variant:ident => $tag:literal),* $(,)?) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum IdentityId {
            $($variant),*
        }

        impl IdentityId {
            pub const ALL: &'static [IdentityId] = &[$(IdentityId::$variant),*];

            pub fn tag(self) -> &'static str {
                match self {
                    $(IdentityId::$variant => $tag),*
                }
            }
        }
    };
}

identity_ids! {
    Thm2_1 => "THM-2.1",
    Thm2_2 => "THM-2.2",
    Cor2_3 => "COR-2.3",
    Thm2_4 => "THM-2.4",
    Cor2_5 => "COR-2.5",
    Thm2_6 => "THM-2.6",
    Thm2_7 => "THM-2.7",
    Thm2_8 => "THM-2.8",
    Thm2_9 => "THM-2.9",
    Thm2_10 => "THM-2.10",
    Thm2_11 => "THM-2.11",
    Id1 => "ID-1",
    Id2 => "ID-2",
    Id3 => "ID-3",
    Id4 => "ID-4",
    Id5 => "ID-5",
    Id6 => "ID-6",
    Id7 => "ID-7",
    Id8 => "ID-8",
    Id9 => "ID-9",
    Id10 => "ID-10",
    Id11 => "ID-11",
    Id12 => "ID-12",
    Id13 => "ID-13",
    Id14 => "ID-14",
    Id15 => "ID-15",
    Id16 => "ID-16",
    Id17 => "ID-17",
    Id18 => "ID-18",
    Id19 => "ID-19",
    Id20 => "ID-20",
    Intro1 => "INTRO-1",
    Intro2 => "INTRO-2",
    Intro3 => "INTRO-3",
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.tag())
    }
}

impl FromStr for IdentityId {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim();
        IdentityId::ALL
            .iter()
            .copied()
            .find(|id| id.tag().eq_ignore_ascii_case(wanted))
            .ok_or_else(|| CatalogError::UnknownId(wanted.to_string()))
    }
}

impl Serialize for IdentityId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.tag())
    }
}

/// Field the identity's sides live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Domain {
    #[serde(rename = "Q")]
    Q,
    #[serde(rename = "Q(s)")]
    QS,
    #[serde(rename = "Q(x)")]
    QX,
    #[serde(rename = "Q(s,x)")]
    QSX,
}

impl Domain {
    pub fn has_s(self) -> bool {
        matches!(self, Domain::QS | Domain::QSX)
    }

    pub fn has_x(self) -> bool {
        matches!(self, Domain::QX | Domain::QSX)
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Domain::Q => "Q",
            Domain::QS => "Q(s)",
            Domain::QX => "Q(x)",
            Domain::QSX => "Q(s,x)",
        })
    }
}

/// Which reading of a right-hand side to use where the printed form is
/// known to be wrong.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Printed,
    Corrected,
}

impl FromStr for Variant {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "printed" => Ok(Variant::Printed),
            "corrected" => Ok(Variant::Corrected),
            other => Err(CatalogError::InvalidParams(format!("unknown variant {other:?}"))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Printed => "printed",
            Variant::Corrected => "corrected",
        })
    }
}

/// Extra parameters beyond `n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
}

impl Params {
    pub fn none() -> Self {
        Params::default()
    }

    pub fn m(m: u64) -> Self {
        Params { m: Some(m), variant: None }
    }

    pub fn variant(v: Variant) -> Self {
        Params { m: None, variant: Some(v) }
    }

    pub fn with_variant(mut self, v: Variant) -> Self {
        self.variant = Some(v);
        self
    }

    pub(crate) fn m_or(&self, default: u64) -> u64 {
        self.m.unwrap_or(default)
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(m) = self.m {
            parts.push(format!("m={m}"));
        }
        if let Some(v) = self.variant {
            parts.push(format!("variant={v}"));
        }
        f.write_str(&parts.join(","))
    }
}

/// Parses the `Display` form, also accepting a bare variant name.
impl FromStr for Params {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Params::none();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part.split_once('=') {
                Some(("m", v)) => {
                    let m = v.trim().parse().map_err(|_| CatalogError::InvalidParams(format!("bad m {v:?}")))?;
                    out.m = Some(m);
                }
                Some(("variant", v)) => out.variant = Some(v.parse()?),
                None => out.variant = Some(part.parse()?),
                Some((k, _)) => return Err(CatalogError::InvalidParams(format!("unknown parameter {k:?}"))),
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ParamDescriptor {
    pub name: &'static str,
    pub constraint: &'static str,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Lhs,
    Rhs,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown identity id {0:?}")]
    UnknownId(String),
    #[error("{id}: n = {n} violates n >= {n_min}")]
    InvalidN { id: IdentityId, n: u64, n_min: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

type SideFn = fn(&Ctx, u64, &Params) -> SideResult;

pub struct IdentityEntry {
    pub id: IdentityId,
    /// Location and formula fragment in the source text, for auditing.
    pub anchor: &'static str,
    pub domain: Domain,
    pub n_min: u64,
    pub extra_params: &'static [ParamDescriptor],
    lhs: SideFn,
    rhs: SideFn,
}

impl fmt::Debug for IdentityEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityEntry")
            .field("id", &self.id)
            .field("domain", &self.domain)
            .field("n_min", &self.n_min)
            .finish_non_exhaustive()
    }
}

const M_ANY: &[ParamDescriptor] = &[ParamDescriptor { name: "m", constraint: "integer m >= 2" }];
const M_TWO_THREE: &[ParamDescriptor] = &[
    ParamDescriptor { name: "m", constraint: "m in {2, 3}" },
    ParamDescriptor { name: "variant", constraint: "printed | corrected (m = 3 only; default corrected)" },
];
const VARIANT: &[ParamDescriptor] =
    &[ParamDescriptor { name: "variant", constraint: "printed | corrected (default grid runs both)" }];

impl IdentityEntry {
    pub fn eval_side(&self, side: Side, n: u64, params: &Params) -> Result<BiFrac, CatalogError> {
        self.eval_side_with(side, n, params, Harmonics::default())
    }

    pub fn eval_side_with(
        &self,
        side: Side,
        n: u64,
        params: &Params,
        h: Harmonics<'_>,
    ) -> Result<BiFrac, CatalogError> {
        self.validate(n, params)?;
        let cx = Ctx { h };
        let f = match side {
            Side::Lhs => self.lhs,
            Side::Rhs => self.rhs,
        };
        Ok(f(&cx, n, params)?)
    }

    pub fn validate(&self, n: u64, params: &Params) -> Result<(), CatalogError> {
        if n < self.n_min {
            return Err(CatalogError::InvalidN { id: self.id, n, n_min: self.n_min });
        }
        let bad = |msg: String| Err(CatalogError::InvalidParams(format!("{}: {msg}", self.id)));
        match self.id {
            IdentityId::Id13 => match (params.m, params.variant) {
                (Some(m), None) if m >= 2 => Ok(()),
                (Some(m), None) => bad(format!("m = {m} violates m >= 2")),
                (None, _) => bad("parameter m is required".into()),
                (_, Some(_)) => bad("no variants".into()),
            },
            IdentityId::Id14 => match (params.m, params.variant) {
                (Some(2), None) | (Some(3), _) => Ok(()),
                (Some(2), Some(_)) => bad("variant applies to m = 3 only".into()),
                (Some(m), _) => bad(format!("m = {m} violates m in {{2, 3}}")),
                (None, _) => bad("parameter m is required".into()),
            },
            IdentityId::Intro2 => match params.m {
                None => Ok(()),
                Some(_) => bad("takes no m".into()),
            },
            _ if *params != Params::none() => bad("takes no extra parameters".into()),
            _ => Ok(()),
        }
    }

    /// Rows preserved as printed but known to be false.
    pub fn expected_fail(&self, params: &Params) -> bool {
        params.variant == Some(Variant::Printed) && matches!(self.id, IdentityId::Intro2 | IdentityId::Id14)
    }

    /// Parameter points exercised by a default sweep.
    pub fn default_grid(&self) -> Vec<Params> {
        match self.id {
            IdentityId::Id13 => (2..=5).map(Params::m).collect(),
            IdentityId::Id14 => vec![Params::m(2), Params::m(3).with_variant(Variant::Corrected)],
            IdentityId::Intro2 => vec![Params::variant(Variant::Printed), Params::variant(Variant::Corrected)],
            _ => vec![Params::none()],
        }
    }

    /// Verifies one `(n, params)` cell.
    pub fn check(&self, n: u64, params: &Params, h: Harmonics<'_>) -> Result<ReportRow, CatalogError> {
        let start = Instant::now();
        let lhs = self.eval_side_with(Side::Lhs, n, params, h)?;
        let rhs = self.eval_side_with(Side::Rhs, n, params, h)?;
        let passed = lhs == rhs;
        let elapsed = start.elapsed();
        let witness = (!passed).then(|| make_witness(&lhs, &rhs));
        Ok(ReportRow {
            id: self.id.tag().to_string(),
            anchor: Some(self.anchor),
            n,
            params: params.clone(),
            passed,
            expected_fail: self.expected_fail(params),
            witness,
            oracle: None,
            elapsed,
        })
    }
}

pub(crate) fn make_witness(lhs: &BiFrac, rhs: &BiFrac) -> Witness {
    let (s, x) = (Rational::from(1), Rational::from(2));
    let show = |v: &BiFrac| v.eval(&s, &x).map_or_else(|e| e.to_string(), |r| r.to_string());
    Witness { difference: lhs.cross_difference(rhs).to_string(), lhs: show(lhs), rhs: show(rhs), s, x }
}

macro_rules! entry {
    ($id:ident, $anchor:expr, $domain:ident, $params:expr, $lhs:ident, $rhs:ident) => {
        IdentityEntry {
            id: IdentityId::$id,
            anchor: $anchor,
            domain: Domain::$domain,
            n_min: 1,
            extra_params: $params,
            lhs: formulas::$lhs,
            rhs: formulas::$rhs,
        }
    };
}

fn build_catalog() -> Vec<IdentityEntry> {
    vec![
        entry!(Thm2_1, r"Theorem 2.1, Eq. (14): (1+x)^n\left[1+s\sum_{k=0}^{n-1}\frac{\binom{s+k}{k}}{k+1}\left(\frac{x}{x+1}\right)^{k+1}\right]", QSX, &[], thm2_1_lhs, thm2_1_rhs),
        entry!(Thm2_2, r"Theorem 2.2, Eq. (16): \psi(s+n+1)-\psi(s+n-k+1)\}x^k", QSX, &[], thm2_2_lhs, thm2_2_rhs),
        entry!(Cor2_3, r"Corollary 2.3, Eq. (17): \frac{(-1)^n}{n}\binom{s+n-1}{n-1}[1+s(\psi(s+n)-\psi(s+1))]", QS, &[], cor2_3_lhs, cor2_3_rhs),
        entry!(Thm2_4, r"Theorem 2.4, Eq. (18): \psi'(s+n+1)-\psi'(s+n-k+1)", QSX, &[], thm2_4_lhs, thm2_4_rhs),
        entry!(Cor2_5, r"Corollary 2.5, Eq. (19): 2[\psi(s+n)-\psi(s+1)]", QS, &[], cor2_5_lhs, cor2_5_rhs),
        entry!(Thm2_6, r"Theorem 2.6, Eq. (20): H_n+ s\sum_{k=0}^{n-1}\frac{(-1)^k\binom{s+k}{k}}{(k+1)^2\binom{n}{k+1}}", QS, &[], thm2_6_lhs, thm2_6_rhs),
        entry!(Thm2_7, r"Theorem 2.7, Eq. (23): \sum_{k=1}^{n}\frac{(-1)^{k-1}}{k}\binom{s+n}{k}[\psi(s+n+1)-\psi(s+n-k+1)]", QS, &[], thm2_7_lhs, thm2_7_rhs),
        entry!(Thm2_8, r"Theorem 2.8, Eq. (24): 2\sum_{k=0}^{n-1}\frac{(-1)^k\binom{s+k}{k}}{(k+1)^2\binom{n}{k+1}}[\psi(s+k+1)-\psi(s+1)]", QS, &[], thm2_8_lhs, thm2_8_rhs),
        entry!(Thm2_9, r"Theorem 2.9, Eq. (25): \frac{H_n^2+H_n^{(2)}}{2}+s\sum", QS, &[], thm2_9_lhs, thm2_9_rhs),
        entry!(Thm2_10, r"Theorem 2.10, Eq. (31): \binom{s+n}{k}\frac{(-1)^{k-1}}{k^2}[\psi(s+n+1)-\psi(s+n-k+1)]", QS, &[], thm2_10_lhs, thm2_10_rhs),
        entry!(Thm2_11, r"Theorem 2.11, Eq. (32): \frac{H_n-H_k}{(n-k)\binom{n}{k}}\bigg\{(\psi(s+k+1)-\psi(s+1))^2", QS, &[], thm2_11_lhs, thm2_11_rhs),
        entry!(Id1, r"Identity 1, Eq. (33): (-1)^n\binom{s+n-1}{n}", QS, &[], id1_lhs, id1_rhs),
        entry!(Id2, r"Identity 2, Eq. (34): \sum_{k=0}^{n}(-1)^k\binom{s}{k}=(-1)^n\binom{s-1}{n}", QS, &[], id2_lhs, id2_rhs),
        entry!(Id3, r"Identity 3: \frac{2n+1}{2^{2n}}\binom{2n}{n}", Q, &[], id3_lhs, id3_rhs),
        entry!(Id4, r"Identity 4: 2H_{2n}-H_n-\frac{4n}{2n+1}", Q, &[], id4_lhs, id4_rhs),
        entry!(Id5, r"Identity 5, Eq. (43): \sum_{k=1}^{n}\frac{(-1)^{k-1}}{k}\binom{n}{k}=H_n", Q, &[], id5_lhs, id5_rhs),
        entry!(Id6, r"Identity 6, Eq. (44): H_n^2+\sum_{k=1}^{n}\frac{(-1)^{k}}{k^2\binom{n}{k}}", Q, &[], id6_lhs, id6_rhs),
        entry!(Id7, r"Identity 7, Eq. (45): H_n-\sum_{k=1}^{n}\frac{1}{k}\left(\frac{x}{1+x}\right)^k", QX, &[], id7_lhs, id7_rhs),
        entry!(Id8, r"Identity 8: 2^n\left[H_n-\sum_{k=1}^{n}\frac{1}{k2^k}\right]", Q, &[], id8_lhs, id8_rhs),
        entry!(Id9, r"Identity 9, Eq. (48): H_n^2+H_n^{(2)}+2\sum_{k=1}^{n}\frac{H_{k-1}-H_n}{k(1+x)^k}", QX, &[], id9_lhs, id9_rhs),
        entry!(Id10, r"Identity 10: =-\frac{2}{n^2}", Q, &[], id10_lhs, id10_rhs),
        entry!(Id11, r"Identity 11, Eq. (51): \frac{(-1)^n-1}{n+1}", Q, &[], id11_lhs, id11_rhs),
        entry!(Id12, r"Identity 12: H_n^3+H_nH_n^{(2)}+2\sum", Q, &[], id12_lhs, id12_rhs),
        entry!(Id13, r"Identity 13, Eq. (53): (m-1)H_{(m-1)n}-\frac{1}{mn}", Q, M_ANY, id13_lhs, id13_rhs),
        entry!(Id14, r"Identity 14: H_n-\frac{1}{2n}", Q, M_TWO_THREE, id14_lhs, id14_rhs),
        entry!(Id15, r"Identity 15: \frac{(-1)^{n}H_{n+1}}{n+1}+\sum", Q, &[], id15_lhs, id15_rhs),
        entry!(Id16, r"Identity 16: \frac{1}{2n-1}", Q, &[], id16_lhs, id16_rhs),
        entry!(Id17, r"Identity 17, Eq. (61): \frac{H_n^2+H_n^{(2)}}{2}", Q, &[], id17_lhs, id17_rhs),
        entry!(Id18, r"Identity 18: \frac{1-(-1)^n}{(n+1)^2}-\frac{H_n}{n+1}", Q, &[], id18_lhs, id18_rhs),
        entry!(Id19, r"Identity 19, Eq. (65): \frac{H_n\left(H_n^2+H_n^{(2)}\right)}{2}-\sum", Q, &[], id19_lhs, id19_rhs),
        entry!(Id20, r"Identity 20: \frac{\left(H_n^2+H_n^{(2)}\right)^2}{2}", Q, &[], id20_lhs, id20_rhs),
        entry!(Intro1, r"Section 1: \binom{2n}{n}[2H_n-H_{2n}]", Q, &[], intro1_lhs, intro1_rhs),
        entry!(Intro2, r"Section 1: \frac{4^n}{n}\binom{2n}{n}^2", Q, VARIANT, intro2_lhs, intro2_rhs),
        entry!(Intro3, r"Section 1: H_n-H_{2n}-\frac{2}{n}", Q, &[], intro3_lhs, intro3_rhs),
    ]
}

/// All catalog entries, in tag order.
pub fn catalog() -> &'static [IdentityEntry] {
    static CATALOG: OnceLock<Vec<IdentityEntry>> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

pub fn lookup(id: IdentityId) -> &'static IdentityEntry {
    catalog().iter().find(|e| e.id == id).expect("every id has an entry")
}

/// Knobs shared by every sweep.
#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub workers: usize,
    pub memo: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { workers: 1, memo: true }
    }
}

impl VerifyOptions {
    pub fn harmonics(&self) -> Harmonics<'static> {
        if self.memo {
            Harmonics::Cached(HarmonicCache::shared())
        } else {
            Harmonics::Direct
        }
    }
}

/// One unit of work: an entry at a concrete `n` and parameter point.
#[derive(Debug, Clone)]
pub struct Cell {
    pub entry: &'static IdentityEntry,
    pub n: u64,
    pub params: Params,
}

/// Runs `f` over `items` on `workers` threads, keeping input order.
pub fn fan_out<I, T, F>(items: &[I], workers: usize, f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    if workers <= 1 {
        return items.iter().map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().expect("thread pool");
    pool.install(|| items.par_iter().map(f).collect())
}

pub fn check_cells(cells: &[Cell], opts: &VerifyOptions) -> Report {
    let h = opts.harmonics();
    let rows = fan_out(cells, opts.workers, |c| {
        c.entry.check(c.n, &c.params, h).expect("cells are validated before scheduling")
    });
    Report::from_rows(rows)
}

/// Cells for `entry` over `ns` and `grid`, ordered by `(n, params)`.
/// Values of `n` below the entry's minimum are skipped.
pub fn cells_for(entry: &'static IdentityEntry, ns: RangeInclusive<u64>, grid: &[Params]) -> Result<Vec<Cell>, CatalogError> {
    let mut grid = grid.to_vec();
    grid.sort();
    let mut cells = Vec::new();
    for n in ns.filter(|&n| n >= entry.n_min) {
        for p in &grid {
            entry.validate(n, p)?;
            cells.push(Cell { entry, n, params: p.clone() });
        }
    }
    Ok(cells)
}

pub fn verify(
    entry: &'static IdentityEntry,
    ns: RangeInclusive<u64>,
    grid: &[Params],
    opts: &VerifyOptions,
) -> Result<Report, CatalogError> {
    Ok(check_cells(&cells_for(entry, ns, grid)?, opts))
}

/// Every entry over `1..=n_max` with its default parameter grid.
pub fn verify_all(n_max: u64, opts: &VerifyOptions) -> Report {
    let cells: Vec<Cell> = catalog()
        .iter()
        .flat_map(|e| cells_for(e, 1..=n_max, &e.default_grid()).expect("default grids are valid"))
        .collect();
    check_cells(&cells, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn side(id: IdentityId, side: Side, n: u64, p: &Params) -> BiFrac {
        lookup(id).eval_side(side, n, p).unwrap()
    }

    fn at(v: &BiFrac, s: i64) -> Rational {
        v.eval(&Rational::from(s), &Rational::from(0)).unwrap()
    }

    #[test]
    fn catalog_has_every_tag_once() {
        assert_eq!(catalog().len(), 34);
        for id in IdentityId::ALL {
            assert_eq!(catalog().iter().filter(|e| e.id == *id).count(), 1);
            assert_eq!(id.tag().parse::<IdentityId>().unwrap(), *id);
        }
        assert_eq!(lookup(IdentityId::Id5).domain, Domain::Q);
        assert_eq!(lookup(IdentityId::Thm2_1).domain, Domain::QSX);
        assert!("ID-21".parse::<IdentityId>().is_err());
    }

    #[test]
    fn spot_values() {
        let none = Params::none();
        assert_eq!(side(IdentityId::Id5, Side::Lhs, 3, &none).as_rational(), Some(Rational::ratio(11, 6)));
        assert_eq!(side(IdentityId::Id17, Side::Rhs, 2, &none).as_rational(), Some(Rational::ratio(7, 4)));
        let m2 = Params::m(2);
        assert_eq!(side(IdentityId::Id13, Side::Lhs, 1, &m2).as_rational(), Some(Rational::ratio(-1, 2)));
        assert_eq!(side(IdentityId::Id13, Side::Rhs, 1, &m2).as_rational(), Some(Rational::ratio(-1, 2)));
    }

    #[test]
    fn theorem_sides_at_s_equal_one() {
        let none = Params::none();
        assert_eq!(at(&side(IdentityId::Thm2_6, Side::Lhs, 2, &none), 1), Rational::ratio(3, 2));
        assert_eq!(at(&side(IdentityId::Thm2_6, Side::Rhs, 2, &none), 1), Rational::ratio(3, 2));
        assert_eq!(at(&side(IdentityId::Thm2_9, Side::Lhs, 2, &none), 1), Rational::ratio(9, 4));
        assert_eq!(at(&side(IdentityId::Thm2_9, Side::Rhs, 2, &none), 1), Rational::ratio(9, 4));
    }

    #[test]
    fn first_theorem_at_n_one() {
        let none = Params::none();
        let lhs = side(IdentityId::Thm2_1, Side::Lhs, 1, &none);
        // 1 + (s + 1) x
        let expected = &BiFrac::one() + &(&(&BiFrac::s() + &BiFrac::one()) * &BiFrac::x());
        assert_eq!(lhs, expected);
        assert_eq!(side(IdentityId::Thm2_1, Side::Rhs, 1, &none), expected);
    }

    #[test]
    fn invalid_inputs_name_the_constraint() {
        let e = lookup(IdentityId::Id5);
        assert_eq!(
            e.eval_side(Side::Lhs, 0, &Params::none()).unwrap_err(),
            CatalogError::InvalidN { id: IdentityId::Id5, n: 0, n_min: 1 }
        );
        let err = lookup(IdentityId::Id13).eval_side(Side::Lhs, 1, &Params::m(1)).unwrap_err();
        assert!(err.to_string().contains("m >= 2"), "{err}");
        assert!(lookup(IdentityId::Id14).validate(1, &Params::m(4)).is_err());
        assert!(lookup(IdentityId::Id14).validate(1, &Params::m(2).with_variant(Variant::Printed)).is_err());
        assert!(e.validate(1, &Params::m(2)).is_err());
    }

    #[test]
    fn printed_intro_two_fails_at_one() {
        let e = lookup(IdentityId::Intro2);
        let row = e.check(1, &Params::variant(Variant::Printed), Harmonics::Direct).unwrap();
        assert!(!row.passed && row.expected_fail && row.ok());
        let w = row.witness.unwrap();
        assert_eq!((w.lhs.as_str(), w.rhs.as_str()), ("2", "16"));
        assert!(e.check(1, &Params::variant(Variant::Corrected), Harmonics::Direct).unwrap().passed);
    }

    #[test]
    fn printed_m_three_case_is_false() {
        let e = lookup(IdentityId::Id14);
        let printed = Params::m(3).with_variant(Variant::Printed);
        let row = e.check(1, &printed, Harmonics::Direct).unwrap();
        assert!(!row.passed && row.expected_fail);
        assert_eq!(row.witness.unwrap().rhs, "-5/3");
        assert!(e.check(1, &Params::m(3), Harmonics::Direct).unwrap().passed);
    }

    #[test]
    fn small_sweep_passes() {
        let report = verify_all(4, &VerifyOptions::default());
        assert_eq!(report.summary.total, report.rows.len());
        let failing: Vec<_> = report.rows.iter().filter(|r| !r.ok()).map(|r| (r.id.clone(), r.n)).collect();
        assert!(failing.is_empty(), "{failing:?}");
        assert_eq!(report.summary.expected_failed, 4);
    }

    #[test]
    fn parallel_sweep_keeps_order() {
        let serial = verify_all(3, &VerifyOptions { workers: 1, memo: true });
        let parallel = verify_all(3, &VerifyOptions { workers: 4, memo: false });
        let key = |r: &Report| r.rows.iter().map(|x| (x.id.clone(), x.n, x.params.clone(), x.passed)).collect::<Vec<_>>();
        assert_eq!(key(&serial), key(&parallel));
    }
}
