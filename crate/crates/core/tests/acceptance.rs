//! Acceptance run: one PASS/FAIL line per criterion. Every comparison is
//! exact equality of rationals or rational functions (tolerance 0).

#[path = "support/props.rs"]
mod props;

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::Instant;

use hforge::catalog::{catalog, lookup, IdentityEntry, IdentityId, Params, Side, Variant};
use hforge::dsl::{self, Span};
use hforge::exact::{BiFrac, Rational};
use hforge::oracle::{degree_bound, integer_s_check, sampling_verify, sides_at_integer_s, INTEGER_S_POINTS};
use hforge::special::{
    binom_int, binom_neg3half, binom_neg_half, binom_shift, harmonic, psi_diff, psi_half_reduction,
    psi_neg_half_reduction, Harmonics,
};

type Check = Result<String, String>;

const TOLERANCE: &str = "0 (exact)";

fn workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn q(v: i64) -> Rational {
    Rational::from(v)
}

fn side(id: IdentityId, side: Side, n: u64, params: &Params) -> BiFrac {
    lookup(id).eval_side(side, n, params).unwrap_or_else(|e| panic!("{id} n={n}: {e}"))
}

fn both(id: IdentityId, n: u64, params: &Params) -> [BiFrac; 2] {
    [side(id, Side::Lhs, n, params), side(id, Side::Rhs, n, params)]
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// 1. `verify --all --n-max 25` through the binary.
fn full_sweep() -> Check {
    let out = Command::new(env!("CARGO_BIN_EXE_hforge"))
        .args(["verify", "--all", "--n-max", "25", "--format", "json", "--no-timing"])
        .args(["--workers", &workers().to_string()])
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    ensure(code == Some(0), || format!("exit code {code:?}"))?;
    let rows = v["rows"].as_array().ok_or("no rows")?;
    let mut xfail = 0;
    for row in rows {
        let printed = row["id"] == "INTRO-2" && row["params"]["variant"] == "printed";
        let passed = row["passed"].as_bool() == Some(true);
        ensure(passed != printed, || format!("unexpected verdict {row}"))?;
        if printed {
            xfail += 1;
            ensure(row["expected_fail"] == true, || format!("printed row not expected-fail: {row}"))?;
        }
    }
    let first = rows
        .iter()
        .find(|r| r["id"] == "INTRO-2" && r["params"]["variant"] == "printed" && r["n"] == 1)
        .ok_or("no INTRO-2 printed row at n=1")?;
    let w = &first["witness"];
    ensure(w["lhs"] == "2" && w["rhs"] == "16", || format!("witness {w}"))?;
    let ids: std::collections::BTreeSet<&str> = rows.iter().filter_map(|r| r["id"].as_str()).collect();
    ensure(ids.len() == 34, || format!("{} ids swept", ids.len()))?;
    Ok(format!(
        "{} rows over 34 entries, all pass except {xfail} INTRO-2 printed rows (n=1 witness LHS 2, RHS 16)",
        rows.len()
    ))
}

fn scalar(id: IdentityId, s: Side, n: u64) -> Rational {
    side(id, s, n, &Params::none()).as_rational().expect("scalar side")
}

/// Both sides, checked against the independent direct sums of the oracle.
fn spot(id: IdentityId, n: u64, want: &Rational) -> Result<(), String> {
    let (l, r) = (scalar(id, Side::Lhs, n), scalar(id, Side::Rhs, n));
    let (ol, or) = sides_at_integer_s(lookup(id), n, &Params::none(), 0, &q(1)).map_err(|e| e.to_string())?;
    ensure(&l == want && &r == want && &ol == want && &or == want, || {
        format!("{id} n={n}: lhs {l}, rhs {r}, oracle {ol}/{or}, want {want}")
    })
}

/// 2. Spot values.
fn spot_values() -> Check {
    spot(IdentityId::Id5, 3, &Rational::ratio(11, 6))?;
    spot(IdentityId::Id17, 2, &Rational::ratio(7, 4))?;
    for n in 1..=25i64 {
        let nu = n as u64;
        spot(IdentityId::Id10, nu, &Rational::ratio(-2, n * n))?;
        let sign = if n % 2 == 0 { 1 } else { -1 };
        spot(IdentityId::Id11, nu, &Rational::ratio(sign - 1, n + 1))?;
        spot(IdentityId::Id16, nu, &Rational::ratio(1, 2 * n - 1))?;
    }
    Ok("ID-5 n=3 11/6; ID-17 n=2 7/4; ID-10, ID-11, ID-16 closed forms for n=1..25".into())
}

/// 3. Half-integer reductions against the printed closed forms.
fn half_integer() -> Check {
    let half = Rational::ratio(1, 2);
    let four_pow = |k: u64| q(4).pow(k as i64).unwrap();
    for k in 0..=20u64 {
        let sign = Rational::sign_pow(k as i64);
        let printed = sign * binom_int(2 * k, k as i64).checked_div(&four_pow(k)).unwrap();
        let generic = binom_shift(0, k as u32).eval(&-half.clone()).unwrap();
        ensure(generic == printed && binom_neg_half(k) == printed, || format!("binom(-1/2, {k})"))?;
    }
    for n in 0..=20u64 {
        let sign = Rational::sign_pow(n as i64);
        let printed = sign * q(2 * n as i64 + 1) * binom_int(2 * n, n as i64).checked_div(&four_pow(n)).unwrap();
        let generic = binom_shift(0, n as u32).eval(&Rational::ratio(-3, 2)).unwrap();
        ensure(generic == printed && binom_neg3half(n) == printed, || format!("binom(-3/2, {n})"))?;
    }
    for k in 1..=20u64 {
        let printed = harmonic(k) - q(2) * harmonic(2 * k);
        let at = &half - &q(k as i64);
        let generic = psi_diff(k, 0).unwrap().eval(&at).unwrap();
        ensure(generic == printed && psi_half_reduction(k) == printed, || format!("psi(1/2)-psi(1/2-{k})"))?;
    }
    for n in 1..=20u64 {
        let ni = n as i64;
        let printed = Rational::ratio(4 * ni, 2 * ni + 1) - q(2) * harmonic(2 * n) + harmonic(n);
        let at = -(&q(ni) + &half);
        let generic = psi_diff(n, 0).unwrap().eval(&at).unwrap();
        ensure(generic == printed && psi_neg_half_reduction(n) == printed, || format!("psi(-1/2)-psi(-1/2-{n})"))?;
    }
    Ok("binom(-1/2,k) k<=20, binom(-3/2,n) n<=20, psi(1/2)-psi(1/2-k) k<=20, psi(-1/2)-psi(-1/2-n) n<=20".into())
}

/// 4. d/ds of each side of the first entry equals that side of the second.
fn derivative_chains() -> Check {
    use IdentityId::*;
    let chains = [(Thm2_1, Thm2_2), (Thm2_2, Thm2_4), (Cor2_3, Cor2_5), (Thm2_6, Thm2_7), (Thm2_7, Thm2_8), (Thm2_9, Thm2_10), (Thm2_10, Thm2_11)];
    for (from, to) in chains {
        for n in 1..=10 {
            let [fl, fr] = both(from, n, &Params::none());
            let [tl, tr] = both(to, n, &Params::none());
            ensure(fl.deriv_s() == tl, || format!("d/ds LHS {from} != LHS {to} at n={n}"))?;
            ensure(fr.deriv_s() == tr, || format!("d/ds RHS {from} != RHS {to} at n={n}"))?;
        }
    }
    Ok("2.1->2.2->2.4, 2.3->2.5, 2.6->2.7->2.8, 2.9->2.10->2.11 for n<=10, both sides".into())
}

/// 5. Specializations in x, s and m.
fn specializations() -> Check {
    use IdentityId::*;
    let none = Params::none();
    let at_x = |v: i64| move |f: &BiFrac| f.subst_x(&q(v)).unwrap();
    let at_s0 = |f: &BiFrac| f.subst_s(&q(0)).unwrap();
    let cases: [(IdentityId, IdentityId, &dyn Fn(&BiFrac) -> BiFrac, &str); 6] = [
        (Thm2_2, Cor2_3, &at_x(-1), "COR-2.3 = THM-2.2|x=-1"),
        (Thm2_4, Cor2_5, &at_x(-1), "COR-2.5 = THM-2.4|x=-1"),
        (Thm2_1, Id1, &at_x(-1), "ID-1 = THM-2.1|x=-1"),
        (Thm2_6, Id5, &at_s0, "ID-5 = THM-2.6|s=0"),
        (Thm2_9, Id17, &at_s0, "ID-17 = THM-2.9|s=0"),
        (Id7, Id8, &at_x(1), "ID-8 = ID-7|x=1"),
    ];
    for n in 1..=15 {
        for (general, special, f, what) in &cases {
            let [gl, gr] = both(*general, n, &none);
            let [sl, sr] = both(*special, n, &none);
            ensure(f(&gl) == sl && f(&gr) == sr, || format!("{what} fails at n={n}"))?;
        }
        for params in [Params::m(2), Params::m(3).with_variant(Variant::Corrected)] {
            let general = both(Id13, n, &Params::m(params.m.unwrap()));
            ensure(both(Id14, n, &params) == general, || format!("ID-14[{params}] != ID-13 at n={n}"))?;
        }
        let printed = side(Id14, Side::Rhs, n, &Params::m(3).with_variant(Variant::Printed));
        ensure(printed != side(Id13, Side::Rhs, n, &Params::m(3)), || format!("printed ID-14 m=3 agrees at n={n}"))?;
    }
    Ok("x=-1, s=0 and x=1 specializations and ID-14 = ID-13|m=2,3 for n<=15 (printed m=3 form differs)".into())
}

fn oracle_grid(e: &IdentityEntry) -> Vec<Params> {
    let mut grid = e.default_grid();
    if e.id == IdentityId::Id14 {
        grid.push(Params::m(3).with_variant(Variant::Printed));
    }
    grid
}

/// 6. Oracle verdicts agree with the symbolic ones on every cell.
fn oracle_equivalence() -> Check {
    let cells: Vec<(&IdentityEntry, Params, u64)> = catalog()
        .iter()
        .flat_map(|e| oracle_grid(e).into_iter().flat_map(move |p| (1..=15).map(move |n| (e, p.clone(), n))))
        .collect();
    let results = hforge::catalog::fan_out(&cells, workers(), |(e, params, n)| -> Result<u64, String> {
        let n = *n;
        let row = e.check(n, params, Harmonics::default()).map_err(|err| err.to_string())?;
        let cert = sampling_verify(e, n, params).map_err(|err| err.to_string())?;
        let (bs, bx) = degree_bound(e, n);
        ensure(cert.points.len() as u64 >= (bs + 1) * (bx + 1) && cert.points.len() > 0, || {
            format!("{} n={n}: {} points for bound {:?}", e.id, cert.points.len(), (bs, bx))
        })?;
        ensure(cert.all_equal == row.passed, || format!("{} [{params}] n={n}: sampling disagrees", e.id))?;
        if e.domain.has_s() {
            let lhs = e.eval_side(Side::Lhs, n, params).map_err(|err| err.to_string())?;
            let rhs = e.eval_side(Side::Rhs, n, params).map_err(|err| err.to_string())?;
            for s0 in INTEGER_S_POINTS {
                let verdict = integer_s_check(e, n, params, s0).map_err(|err| err.to_string())?;
                ensure(verdict == row.passed, || format!("{} n={n} s0={s0}: integer-s disagrees", e.id))?;
                let x = q(1);
                let (ol, or) = sides_at_integer_s(e, n, params, s0, &x).map_err(|err| err.to_string())?;
                let sl = lhs.eval(&q(s0 as i64), &x).map_err(|err| err.to_string())?;
                let sr = rhs.eval(&q(s0 as i64), &x).map_err(|err| err.to_string())?;
                ensure(ol == sl && or == sr, || format!("{} n={n} s0={s0}: side values differ", e.id))?;
            }
        }
        Ok(cert.points.len() as u64)
    });
    let mut points = 0;
    for r in results {
        points += r?;
    }
    Ok(format!(
        "{} cells (n<=15): sampling and integer-s (s0 in {{0,1,2,5}}) match every symbolic verdict; {points} sample points, each certificate at or above its bound",
        cells.len()
    ))
}

const MALFORMED: &[(&str, &str, usize, usize)] = &[
    ("H(n == n", "expected ')', found '=='", 4, 6),
    ("sum(k=1.n, k) == 0", "stray '.'", 7, 8),
    ("FOO(n) + 1 == 1", "unknown builtin 'FOO'", 0, 3),
    ("2^3^4 == 1", "'^' is not associative", 3, 4),
    ("C(n) == 1", "C takes 2 argument(s), found 1", 0, 4),
];

/// 7. The shipped corpus reproduces the catalog; diagnostics are exact.
fn dsl_corpus() -> Check {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/paper.ids");
    let out = Command::new(env!("CARGO_BIN_EXE_hforge"))
        .args(["dsl", path, "--n-max", "15", "--no-timing", "--format", "json"])
        .args(["--workers", &workers().to_string()])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || format!("dsl exit {:?}", out.status.code()))?;
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let rows = report["rows"].as_array().ok_or("no rows")?;

    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let entries = dsl::parse_corpus(&text).map_err(|d| format!("{d:?}"))?;
    let mut covered = std::collections::BTreeSet::new();
    for row in rows {
        let name = row["name"].as_str().or(row["id"].as_str()).ok_or("row without id")?;
        let (id, params) = dsl::catalog_key(name).ok_or_else(|| format!("{name} is not a catalog key"))?;
        let n = row["n"].as_u64().ok_or("row without n")?;
        let cat = lookup(id).check(n, &params, Harmonics::default()).map_err(|e| e.to_string())?;
        ensure(row["passed"].as_bool() == Some(cat.passed), || format!("{name} n={n}: corpus and catalog differ"))?;
        covered.insert(id);
    }
    ensure(covered.len() == 34, || format!("corpus covers {} ids", covered.len()))?;
    for e in &entries {
        let again = dsl::compile_identity(&e.identity.to_string()).map_err(|d| format!("{d:?}"))?;
        ensure(again.same_shape(&e.identity), || format!("{} does not round-trip", e.name))?;
    }
    for &(src, msg, start, end) in MALFORMED {
        let d = dsl::compile_identity(src).err().and_then(|d| d.into_iter().next()).ok_or(format!("{src} parsed"))?;
        ensure(d.message == msg && d.span == Span::new(start, end), || {
            format!("{src}: got {:?} at {}", d.message, d.span)
        })?;
    }
    Ok(format!(
        "dsl corpus/paper.ids --n-max 15 exits 0; {} rows match catalog verdicts over 34 ids; 5 golden diagnostics exact",
        rows.len()
    ))
}

/// 8. Kernel properties, 1000 cases each.
fn kernel_properties() -> Check {
    let mut names = Vec::new();
    for (name, prop) in props::kernel() {
        prop().map_err(|e| format!("{name}: {e}"))?;
        names.push(name);
    }
    Ok(format!("{} properties x {} cases: {}", names.len(), props::CASES, names.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("full catalog sweep", full_sweep),
        ("spot values", spot_values),
        ("half-integer reductions", half_integer),
        ("derivative chains", derivative_chains),
        ("specializations", specializations),
        ("oracle equivalence", oracle_equivalence),
        ("dsl corpus and diagnostics", dsl_corpus),
        ("kernel property suite", kernel_properties),
    ];
    println!("acceptance: tolerance {TOLERANCE} for every criterion");
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
