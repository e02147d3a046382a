//! Left- and right-hand sides of every catalog identity, each transcribed
//! term by term from its printed form.
//!
//! Sides that depend on `x` are accumulated as [`BiFrac`]; sides in `s` only
//! are accumulated as reduced [`RatFunc`]s and embedded at the end; scalar
//! sides are plain [`Rational`]s.

use crate::exact::{ArithError, BiFrac, BiPoly, RatFunc, Rational};
use crate::special::{binom_int, binom_shift, psi1_diff, psi_diff, Harmonics};

use super::{Params, Variant};

pub(crate) type SideResult = Result<BiFrac, ArithError>;

pub(crate) struct Ctx<'a> {
    pub h: Harmonics<'a>,
}

fn q(v: i64) -> Rational {
    Rational::from(v)
}

fn sign(k: u64) -> Rational {
    Rational::sign_pow(k as i64)
}

fn c(n: u64, k: u64) -> Rational {
    binom_int(n, k as i64)
}

fn inv(v: Rational) -> Result<Rational, ArithError> {
    v.recip()
}

fn bs(a: u64, k: u64) -> RatFunc {
    binom_shift(a as i64, k as u32)
}

fn pd(a: u64, b: u64) -> RatFunc {
    psi_diff(a, b).expect("call sites pass a >= b")
}

/// `(ψ(s+a) - ψ(s+b))^2 + ψ'(s+a) - ψ'(s+b)`, the second-derivative kernel.
fn pd2(a: u64, b: u64) -> RatFunc {
    let d = pd(a, b);
    &(&d * &d) + &psi1_diff(a, b).expect("call sites pass a >= b")
}

fn s() -> RatFunc {
    RatFunc::s()
}

fn embed(f: &RatFunc) -> BiFrac {
    BiFrac::from_ratfunc(f)
}

fn scalar(v: Rational) -> SideResult {
    Ok(BiFrac::constant(v))
}

fn x_plus_one() -> BiPoly {
    &BiPoly::x() + &BiPoly::one()
}

/// `(1 + x)^n`.
fn one_plus_x_pow(n: u64) -> BiFrac {
    BiFrac::from_bipoly(x_plus_one().pow(n as u32))
}

/// `(x / (x + 1))^k`.
fn x_ratio_pow(k: u64) -> BiFrac {
    BiFrac::new(BiPoly::monomial(Rational::one(), k as u32, 0), x_plus_one().pow(k as u32))
        .expect("nonzero denominator")
}

/// `Σ_k coeff(k) x^k` over `ks`.
fn x_series(ks: impl Iterator<Item = u64>, coeff: impl Fn(u64) -> RatFunc) -> BiFrac {
    ks.fold(BiFrac::zero(), |acc, k| {
        let term = embed(&coeff(k));
        let shifted = BiFrac::new(
            term.num().mul_monomial(&Rational::one(), (k as u32, 0)),
            term.den().clone(),
        )
        .expect("nonzero denominator");
        &acc + &shifted
    })
}

/// `(1 + x)^n Σ_{k=0}^{n-1} coeff(k) (x/(x+1))^{k+1}`.
fn x_ratio_series(n: u64, coeff: impl Fn(u64) -> RatFunc) -> BiFrac {
    let inner = (0..n).fold(BiFrac::zero(), |acc, k| &acc + &(&embed(&coeff(k)) * &x_ratio_pow(k + 1)));
    &one_plus_x_pow(n) * &inner
}

fn rf_sum(ks: impl Iterator<Item = u64>, term: impl Fn(u64) -> Result<RatFunc, ArithError>) -> Result<RatFunc, ArithError> {
    ks.map(term).try_fold(RatFunc::zero(), |acc, t| Ok(&acc + &t?))
}

fn q_sum(ks: impl Iterator<Item = u64>, term: impl Fn(u64) -> Result<Rational, ArithError>) -> Result<Rational, ArithError> {
    ks.map(term).try_fold(Rational::zero(), |acc, t| Ok(acc + t?))
}

// ---- two-parameter family ---------------------------------------------------

pub(crate) fn thm2_1_lhs(_: &Ctx, n: u64, _: &Params) -> SideResult {
    let mut acc = BiPoly::zero();
    for k in 0..=n {
        let coeff = BiPoly::from_poly_s(bs(n, k).num());
        acc = &acc + &coeff.mul_monomial(&Rational::one(), (k as u32, 0));
    }
    Ok(BiFrac::from_bipoly(acc))
}

pub(crate) fn thm2_1_rhs(_: &Ctx, n: u64, _: &Params) -> SideResult {
    let mut inner = BiFrac::zero();
    for k in 0..n {
        let coeff = bs(k, k).scale(&inv(q(k as i64 + 1))?);
        inner = &inner + &(&embed(&coeff) * &x_ratio_pow(k + 1));
    }
    let bracket = &BiFrac::one() + &(&BiFrac::s() * &inner);
    Ok(&one_plus_x_pow(n) * &bracket)
}

pub(crate) fn thm2_2_lhs(_: &Ctx, n: u64, _: &Params) -> SideResult {
    Ok(x_series(1..=n, |k| &bs(n, k) * &pd(n + 1, n - k + 1)))
}

pub(crate) fn thm2_2_rhs(_: &Ctx, n: u64, _: &Params) -> SideResult {
    Ok(x_ratio_series(n, |k| {
        let bracket = &RatFunc::one() + &(&s() * &pd(k + 1, 1));
        (&bs(k, k) * &bracket).scale(&Rational::ratio(1, k as i64 + 1))
    }))
}

pub(crate) fn cor2_3_lhs(_: &Ctx, n: u64, _: &Params) -> SideResult {
    let v = rf_sum(0..=n, |k| Ok((&bs(n, k) * &pd(n + 1, n - k + 1)).scale(&sign(k))))?;
    Ok(embed(&v))
}

pub(crate) fn cor2_3_rhs(_: &Ctx, n: u64, _: &Params) -> SideResult {
    let lead = sign(n).checked_div(&q(n as i64))?;
    let bracket = &RatFunc::one() + &(&s() * &pd(n, 1));
    Ok(embed(&(&bs(n - 1, n - 1) * &bracket).scale(&lead)))
}

pub(crate) fn thm2_4_lhs(_: &Ctx, n: u64, _: &Params) -> SideResult {
    Ok(x_series(0..=n, |k| &bs(n, k) * &pd2(n + 1, n - k + 1)))
}

pub(crate) fn thm2_4_rhs(_: &Ctx, n: u64, _: &Params) -> SideResult {
    Ok(x_ratio_series(n, |k| {
        let bracket = &pd(k + 1, 1).scale(&q(2)) + &(&s() * &pd2(k + 1, 1));
        (&bs(k, k) * &bracket).scale(&Rational::ratio(1, k as i64 + 1))
    }))
}

pub(crate) fn cor2_5_lhs(_: &Ctx, n: u64, _: &Params) -> SideResult {
    let v = rf_sum(0..=n, |k| Ok((&bs(n, k) * &pd2(n + 1, n - k + 1)).scale(&sign(k))))?;
    Ok(embed(&v))
}

pub(crate) fn cor2_5_rhs(_: &Ctx, n: u64, _: &Params) -> SideResult {
    let lead = sign(n).checked_div(&q(n as i64))?;
    let bracket = &pd(n, 1).scale(&q(2)) + &(&s() * &pd2(n, 1));
    Ok(embed(&(&bs(n - 1, n - 1) * &bracket).scale(&lead)))
}

// ---- alternating family in s ------------------------------------------------

/// `(-1)^k / ((k+1)^2 binom(n, k+1))`.
fn alt_weight(n: u64, k: u64) -> Result<Rational, ArithError> {
    let d = q((k as i64 + 1) * (k as i64 + 1)) * c(n, k + 1);
    sign(k).checked_div(&d)
}

pub(crate) fn thm2_6_lhs(_: &Ctx, n: u64, _: &Params) -> SideResult {
    let v = rf_sum(1..=n, |k| Ok(bs(n, k).scale(&sign(k - 1).checked_div(&q(k as i64))?)))?;
    Ok(embed(&v))
}

pub(crate) fn thm2_6_rhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    let tail = rf_sum(0..n, |k| Ok(bs(k, k).scale(&alt_weight(n, k)?)))?;
    let v = &RatFunc::constant(cx.h.h(n)) + &(&s() * &tail);
    Ok(embed(&v))
}

pub(crate) fn thm2_7_lhs(_: &Ctx, n: u64, _: &Params) -> SideResult {
    let v = rf_sum(1..=n, |k| {
        Ok((&bs(n, k) * &pd(n + 1, n - k + 1)).scale(&sign(k - 1).checked_div(&q(k as i64))?))
    })?;
    Ok(embed(&v))
}

pub(crate) fn thm2_7_rhs(_: &Ctx, n: u64, _: &Params) -> SideResult {
    let first = rf_sum(0..n, |k| Ok(bs(k, k).scale(&alt_weight(n, k)?)))?;
    let second = rf_sum(0..n, |k| Ok((&bs(k, k) * &pd(k + 1, 1)).scale(&alt_weight(n, k)?)))?;
    Ok(embed(&(&first + &(&s() * &second))))
}

pub(crate) fn thm2_8_lhs(_: &Ctx, n: u64, _: &Params) -> SideResult {
    let v = rf_sum(1..=n, |k| {
        Ok((&bs(n, k) * &pd2(n + 1, n - k + 1)).scale(&sign(k - 1).checked_div(&q(k as i64))?))
    })?;
    Ok(embed(&v))
}

pub(crate) fn thm2_8_rhs(_: &Ctx, n: u64, _: &Params) -> SideResult {
    let first = rf_sum(0..n, |k| Ok((&bs(k, k) * &pd(k + 1, 1)).scale(&alt_weight(n, k)?)))?;
    let second = rf_sum(0..n, |k| Ok((&bs(k, k) * &pd2(k + 1, 1)).scale(&alt_weight(n, k)?)))?;
    Ok(embed(&(&first.scale(&q(2)) + &(&s() * &second))))
}

/// `(-1)^k / (k+1) · (H_n - H_k) / ((n-k) binom(n, k))`.
fn harmonic_weight(cx: &Ctx, n: u64, k: u64) -> Result<Rational, ArithError> {
    let d = q((k as i64 + 1) * (n - k) as i64) * c(n, k);
    (sign(k) * (cx.h.h(n) - cx.h.h(k))).checked_div(&d)
}

pub(crate) fn thm2_9_lhs(_: &Ctx, n: u64, _: &Params) -> SideResult {
    let v = rf_sum(1..=n, |k| Ok(bs(n, k).scale(&sign(k - 1).checked_div(&q((k * k) as i64))?)))?;
    Ok(embed(&v))
}

pub(crate) fn thm2_9_rhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    let h = cx.h.h(n);
    let head = (&h * &h + cx.h.h2(n)) * Rational::ratio(1, 2);
    let tail = rf_sum(0..n, |k| Ok(bs(k, k).scale(&harmonic_weight(cx, n, k)?)))?;
    Ok(embed(&(&RatFunc::constant(head) + &(&s() * &tail))))
}

pub(crate) fn thm2_10_lhs(_: &Ctx, n: u64, _: &Params) -> SideResult {
    let v = rf_sum(1..=n, |k| {
        Ok((&bs(n, k) * &pd(n + 1, n - k + 1)).scale(&sign(k - 1).checked_div(&q((k * k) as i64))?))
    })?;
    Ok(embed(&v))
}

pub(crate) fn thm2_10_rhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    let first = rf_sum(0..n, |k| Ok(bs(k, k).scale(&harmonic_weight(cx, n, k)?)))?;
    let second = rf_sum(0..n, |k| Ok((&bs(k, k) * &pd(k + 1, 1)).scale(&harmonic_weight(cx, n, k)?)))?;
    Ok(embed(&(&first + &(&s() * &second))))
}

pub(crate) fn thm2_11_lhs(_: &Ctx, n: u64, _: &Params) -> SideResult {
    let v = rf_sum(1..=n, |k| {
        Ok((&bs(n, k) * &pd2(n + 1, n - k + 1)).scale(&sign(k - 1).checked_div(&q((k * k) as i64))?))
    })?;
    Ok(embed(&v))
}

pub(crate) fn thm2_11_rhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    let first = rf_sum(0..n, |k| Ok((&bs(k, k) * &pd(k + 1, 1)).scale(&harmonic_weight(cx, n, k)?)))?;
    let second = rf_sum(0..n, |k| Ok((&bs(k, k) * &pd2(k + 1, 1)).scale(&harmonic_weight(cx, n, k)?)))?;
    Ok(embed(&(&first.scale(&q(2)) + &(&s() * &second))))
}

// ---- applications -----------------------------------------------------------

pub(crate) fn id1_lhs(_: &Ctx, n: u64, _: &Params) -> SideResult {
    Ok(embed(&rf_sum(0..=n, |k| Ok(bs(n, k).scale(&sign(k))))?))
}

pub(crate) fn id1_rhs(_: &Ctx, n: u64, _: &Params) -> SideResult {
    Ok(embed(&binom_shift(n as i64 - 1, n as u32).scale(&sign(n))))
}

pub(crate) fn id2_lhs(_: &Ctx, n: u64, _: &Params) -> SideResult {
    Ok(embed(&rf_sum(0..=n, |k| Ok(bs(0, k).scale(&sign(k))))?))
}

pub(crate) fn id2_rhs(_: &Ctx, n: u64, _: &Params) -> SideResult {
    Ok(embed(&binom_shift(-1, n as u32).scale(&sign(n))))
}

fn central_over_four_pow(k: u64) -> Result<Rational, ArithError> {
    c(2 * k, k).checked_div(&q(4).pow(k as i64)?)
}

pub(crate) fn id3_lhs(_: &Ctx, n: u64, _: &Params) -> SideResult {
    scalar(q_sum(0..=n, central_over_four_pow)?)
}

pub(crate) fn id3_rhs(_: &Ctx, n: u64, _: &Params) -> SideResult {
    scalar(q(2 * n as i64 + 1) * central_over_four_pow(n)?)
}

pub(crate) fn id4_lhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    scalar(q_sum(1..=n, |k| Ok(central_over_four_pow(k)? * (q(2) * cx.h.h(2 * k) - cx.h.h(k))))?)
}

pub(crate) fn id4_rhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    let bracket = q(2) * cx.h.h(2 * n) - cx.h.h(n) - Rational::ratio(4 * n as i64, 2 * n as i64 + 1);
    scalar(q(2 * n as i64 + 1) * central_over_four_pow(n)? * bracket)
}

pub(crate) fn id5_lhs(_: &Ctx, n: u64, _: &Params) -> SideResult {
    scalar(q_sum(1..=n, |k| Ok(sign(k - 1).checked_div(&q(k as i64))? * c(n, k)))?)
}

pub(crate) fn id5_rhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    scalar(cx.h.h(n))
}

pub(crate) fn id6_lhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    scalar(q_sum(1..=n, |k| Ok(sign(k - 1).checked_div(&q(k as i64))? * c(n, k) * cx.h.h(n - k)))?)
}

pub(crate) fn id6_rhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    let h = cx.h.h(n);
    let tail = q_sum(1..=n, |k| sign(k).checked_div(&(q((k * k) as i64) * c(n, k))))?;
    scalar(&h * &h + tail)
}

pub(crate) fn id7_lhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    let mut acc = BiPoly::zero();
    for k in 0..=n {
        acc = &acc + &BiPoly::monomial(c(n, k) * cx.h.h(n - k), k as u32, 0);
    }
    Ok(BiFrac::from_bipoly(acc))
}

pub(crate) fn id7_rhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    let mut tail = BiFrac::zero();
    for k in 1..=n {
        tail = &tail + &x_ratio_pow(k).scale(&Rational::ratio(1, k as i64));
    }
    let bracket = &BiFrac::constant(cx.h.h(n)) - &tail;
    Ok(&one_plus_x_pow(n) * &bracket)
}

pub(crate) fn id8_lhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    scalar(q_sum(0..=n, |k| Ok(c(n, k) * cx.h.h(k)))?)
}

pub(crate) fn id8_rhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    let tail = q_sum(1..=n, |k| inv(q(k as i64) * q(2).pow(k as i64)?))?;
    scalar(q(2).pow(n as i64)? * (cx.h.h(n) - tail))
}

fn h_sq_plus_h2(cx: &Ctx, k: u64) -> Rational {
    let h = cx.h.h(k);
    &h * &h + cx.h.h2(k)
}

pub(crate) fn id9_lhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    let mut acc = BiPoly::zero();
    for k in 1..=n {
        acc = &acc + &BiPoly::monomial(c(n, k) * h_sq_plus_h2(cx, k), k as u32, 0);
    }
    Ok(BiFrac::from_bipoly(acc))
}

pub(crate) fn id9_rhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    let mut tail = BiFrac::zero();
    for k in 1..=n {
        let w = (cx.h.h(k - 1) - cx.h.h(n)).checked_div(&q(k as i64))?;
        let term = BiFrac::new(BiPoly::constant(w), x_plus_one().pow(k as u32))?;
        tail = &tail + &term;
    }
    let bracket = &BiFrac::constant(h_sq_plus_h2(cx, n)) + &tail.scale(&q(2));
    Ok(&one_plus_x_pow(n) * &bracket)
}

pub(crate) fn id10_lhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    scalar(q_sum(1..=n, |k| Ok(sign(k) * c(n, k) * h_sq_plus_h2(cx, k)))?)
}

pub(crate) fn id10_rhs(_: &Ctx, n: u64, _: &Params) -> SideResult {
    scalar(q(-2).checked_div(&q((n * n) as i64))?)
}

pub(crate) fn id11_lhs(_: &Ctx, n: u64, _: &Params) -> SideResult {
    scalar(q_sum(1..=n, |k| sign(k).checked_div(&(q(k as i64) * c(n, k))))?)
}

pub(crate) fn id11_rhs(_: &Ctx, n: u64, _: &Params) -> SideResult {
    scalar((sign(n) - q(1)).checked_div(&q(n as i64 + 1))?)
}

pub(crate) fn id12_lhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    scalar(q_sum(1..=n, |k| Ok(sign(k - 1).checked_div(&q(k as i64))? * c(n, k) * h_sq_plus_h2(cx, n - k)))?)
}

pub(crate) fn id12_rhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    let h = cx.h.h(n);
    let head = &h * &h * &h + &h * cx.h.h2(n);
    let tail = q_sum(1..=n, |k| (sign(k) * (&h - cx.h.h(k - 1))).checked_div(&(q((k * k) as i64) * c(n, k))))?;
    scalar(head + q(2) * tail)
}

/// `Σ_{k=0}^{n} (-1)^k binom(mn, k) H_{mn-k}`, shared by the `m` family.
fn alt_shifted_harmonic_sum(cx: &Ctx, n: u64, m: u64) -> Result<Rational, ArithError> {
    q_sum(0..=n, |k| Ok(sign(k) * c(m * n, k) * cx.h.h(m * n - k)))
}

pub(crate) fn id13_lhs(cx: &Ctx, n: u64, p: &Params) -> SideResult {
    scalar(alt_shifted_harmonic_sum(cx, n, p.m_or(2))?)
}

pub(crate) fn id13_rhs(cx: &Ctx, n: u64, p: &Params) -> SideResult {
    let m = p.m_or(2);
    let lead = sign(n).checked_div(&q(m as i64))? * c(m * n, n);
    let bracket = q(m as i64 - 1) * cx.h.h((m - 1) * n) - inv(q((m * n) as i64))?;
    scalar(lead * bracket)
}

pub(crate) fn id14_lhs(cx: &Ctx, n: u64, p: &Params) -> SideResult {
    scalar(alt_shifted_harmonic_sum(cx, n, p.m_or(2))?)
}

pub(crate) fn id14_rhs(cx: &Ctx, n: u64, p: &Params) -> SideResult {
    let m = p.m_or(2);
    let bracket = match (m, p.variant) {
        (2, _) => cx.h.h(n) - inv(q(2 * n as i64))?,
        // As printed the m = 3 case reads 2 H_n; the m = 3 specialization of
        // the general formula gives 2 H_{2n}.
        (3, Some(Variant::Printed)) => q(2) * cx.h.h(n) - inv(q(3 * n as i64))?,
        (3, _) => q(2) * cx.h.h(2 * n) - inv(q(3 * n as i64))?,
        _ => unreachable!("validated: m in {{2, 3}}"),
    };
    scalar(sign(n).checked_div(&q(m as i64))? * c(m * n, n) * bracket)
}

pub(crate) fn id15_lhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    scalar(q_sum(1..=n, |k| (sign(k) * cx.h.h(k)).checked_div(&(q(k as i64) * c(n, k))))?)
}

pub(crate) fn id15_rhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    let head = (sign(n) * cx.h.h(n + 1)).checked_div(&q(n as i64 + 1))?;
    let tail = q_sum(1..=n + 1, |k| sign(k).checked_div(&(q((k * k) as i64) * c(n + 1, k))))?;
    scalar(head + tail)
}

pub(crate) fn id16_lhs(_: &Ctx, n: u64, _: &Params) -> SideResult {
    scalar(q_sum(0..=n, |k| {
        let top = -sign(k) * q(4).pow(k as i64)? * c(n, k);
        top.checked_div(&c(2 * k, k))
    })?)
}

pub(crate) fn id16_rhs(_: &Ctx, n: u64, _: &Params) -> SideResult {
    scalar(inv(q(2 * n as i64 - 1))?)
}

pub(crate) fn id17_lhs(_: &Ctx, n: u64, _: &Params) -> SideResult {
    scalar(q_sum(1..=n, |k| Ok(c(n, k) * sign(k - 1).checked_div(&q((k * k) as i64))?))?)
}

pub(crate) fn id17_rhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    scalar(h_sq_plus_h2(cx, n) * Rational::ratio(1, 2))
}

pub(crate) fn id18_lhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    scalar(q_sum(1..=n, |k| (sign(k) * cx.h.h(n - k)).checked_div(&(q(k as i64) * c(n, k))))?)
}

pub(crate) fn id18_rhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    let first = (q(1) - sign(n)).checked_div(&q((n as i64 + 1) * (n as i64 + 1)))?;
    scalar(first - cx.h.h(n).checked_div(&q(n as i64 + 1))?)
}

/// `(-1)^k (H_n - H_k)^power / ((k+1)(n-k) binom(n, k))`.
fn tail_weight(cx: &Ctx, n: u64, k: u64, power: i64) -> Result<Rational, ArithError> {
    let d = q((k as i64 + 1) * (n - k) as i64) * c(n, k);
    (sign(k) * (cx.h.h(n) - cx.h.h(k)).pow(power)?).checked_div(&d)
}

pub(crate) fn id19_lhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    scalar(q_sum(1..=n, |k| Ok(sign(k - 1).checked_div(&q((k * k) as i64))? * c(n, k) * cx.h.h(n - k)))?)
}

pub(crate) fn id19_rhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    let head = cx.h.h(n) * h_sq_plus_h2(cx, n) * Rational::ratio(1, 2);
    scalar(head - q_sum(0..n, |k| tail_weight(cx, n, k, 1))?)
}

pub(crate) fn id20_lhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    scalar(q_sum(1..=n, |k| {
        Ok(sign(k - 1).checked_div(&q((k * k) as i64))? * c(n, k) * h_sq_plus_h2(cx, n - k))
    })?)
}

pub(crate) fn id20_rhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    let a = h_sq_plus_h2(cx, n);
    let head = &a * &a * Rational::ratio(1, 2);
    scalar(head - q(2) * q_sum(0..n, |k| tail_weight(cx, n, k, 2))?)
}

pub(crate) fn intro1_lhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    scalar(q_sum(0..=n, |k| Ok(c(n, k) * c(n, k) * cx.h.h(k)))?)
}

pub(crate) fn intro1_rhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    scalar(c(2 * n, n) * (q(2) * cx.h.h(n) - cx.h.h(2 * n)))
}

pub(crate) fn intro2_lhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    scalar(q_sum(0..=n, |k| Ok(sign(k) * c(n, k) * (cx.h.h(k) - q(2) * cx.h.h(2 * k))))?)
}

pub(crate) fn intro2_rhs(_: &Ctx, n: u64, p: &Params) -> SideResult {
    let four_n = q(4).pow(n as i64)?;
    let central = c(2 * n, n);
    match p.variant {
        Some(Variant::Printed) => scalar(four_n.checked_div(&q(n as i64))? * &central * &central),
        _ => scalar(four_n.checked_div(&(q(n as i64) * central))?),
    }
}

pub(crate) fn intro3_lhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    scalar(q_sum(0..=n, |k| {
        let h = cx.h.h(n + k);
        Ok(sign(k) * c(n, k) * &h * &h)
    })?)
}

pub(crate) fn intro3_rhs(cx: &Ctx, n: u64, _: &Params) -> SideResult {
    let lead = inv(q(n as i64) * c(2 * n, n))?;
    let bracket = cx.h.h(n) - cx.h.h(2 * n) - q(2).checked_div(&q(n as i64))?;
    scalar(lead * bracket)
}
