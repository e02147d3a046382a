//! Harmonic numbers, binomial coefficients and digamma/trigamma differences.
//!
//! Digamma never appears on its own: every `ψ(s+a) - ψ(s+b)` telescopes
//! through `ψ(z+1) = ψ(z) + 1/z` into the finite sum `Σ_{j=b}^{a-1} 1/(s+j)`,
//! and `ψ'(s+a) - ψ'(s+b)` into `-Σ_{j=b}^{a-1} 1/(s+j)^2`. Everything stays
//! in exact rational arithmetic.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::One;
use parking_lot::RwLock;
use thiserror::Error;

use crate::exact::{Poly, RatFunc, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecialError {
    #[error("digamma difference must be oriented with a >= b, got a = {a}, b = {b}")]
    Unoriented { a: u64, b: u64 },
}

/// `H_n = Σ_{k=1}^{n} 1/k`, by direct summation.
pub fn harmonic(n: u64) -> Rational {
    harmonic_gen(n, 1)
}

/// `H_n^{(r)} = Σ_{k=1}^{n} 1/k^r`, by direct summation.
pub fn harmonic_gen(n: u64, r: u32) -> Rational {
    (1..=n)
        .map(|k| Rational::try_new(1, BigInt::from(k).pow(r)).expect("k >= 1"))
        .sum()
}

#[derive(Default)]
struct Tables {
    // first[n] = H_n, second[n] = H_n^(2); index 0 holds the empty sum.
    first: Vec<Rational>,
    second: Vec<Rational>,
}

/// Append-only memo of `H_n` and `H_n^{(2)}`.
///
/// Reads take a shared lock; extension takes the write lock and grows both
/// tables to the largest `n` requested so far.
#[derive(Default)]
pub struct HarmonicCache {
    tables: RwLock<Tables>,
}

impl HarmonicCache {
    pub fn new() -> Self {
        HarmonicCache::default()
    }

    /// Process-wide instance used by the catalog unless memoization is off.
    pub fn shared() -> &'static HarmonicCache {
        static SHARED: OnceLock<HarmonicCache> = OnceLock::new();
        SHARED.get_or_init(HarmonicCache::new)
    }

    pub fn high_water(&self) -> Option<u64> {
        let t = self.tables.read();
        (t.first.len() as u64).checked_sub(1)
    }

    /// `H_n^{(r)}`; orders other than 1 and 2 fall back to direct summation.
    pub fn get(&self, n: u64, r: u32) -> Rational {
        if r != 1 && r != 2 {
            return harmonic_gen(n, r);
        }
        {
            let t = self.tables.read();
            if let Some(v) = Self::pick(&t, r).get(n as usize) {
                return v.clone();
            }
        }
        let mut t = self.tables.write();
        if t.first.is_empty() {
            t.first.push(Rational::zero());
            t.second.push(Rational::zero());
        }
        while (t.first.len() as u64) <= n {
            let k = BigInt::from(t.first.len());
            let inv = Rational::try_new(1, k.clone()).expect("k >= 1");
            let inv2 = Rational::try_new(1, &k * &k).expect("k >= 1");
            let next1 = t.first.last().unwrap() + inv;
            let next2 = t.second.last().unwrap() + inv2;
            t.first.push(next1);
            t.second.push(next2);
        }
        Self::pick(&t, r)[n as usize].clone()
    }

    fn pick(t: &Tables, r: u32) -> &Vec<Rational> {
        if r == 1 {
            &t.first
        } else {
            &t.second
        }
    }
}

/// Where harmonic numbers come from during an evaluation.
#[derive(Clone, Copy)]
pub enum Harmonics<'a> {
    Direct,
    Cached(&'a HarmonicCache),
}

impl Harmonics<'_> {
    pub fn h(&self, n: u64) -> Rational {
        self.hr(n, 1)
    }

    pub fn h2(&self, n: u64) -> Rational {
        self.hr(n, 2)
    }

    pub fn hr(&self, n: u64, r: u32) -> Rational {
        match self {
            Harmonics::Direct => harmonic_gen(n, r),
            Harmonics::Cached(c) => c.get(n, r),
        }
    }
}

impl Default for Harmonics<'static> {
    fn default() -> Self {
        Harmonics::Cached(HarmonicCache::shared())
    }
}

/// Integer binomial coefficient; zero outside `0 <= k <= n`.
pub fn binom_int(n: u64, k: i64) -> Rational {
    Rational::from_int(binom_big(n, k))
}

pub(crate) fn binom_big(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::from(0);
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for j in 1..=k {
        acc *= n - k + j;
        acc /= j;
    }
    acc
}

/// `binom(s + a, k) = Π_{j=1}^{k} (s + a - k + j) / j`, a polynomial of
/// degree exactly `k` in `s`.
pub fn binom_shift(a: i64, k: u32) -> RatFunc {
    let mut p = Poly::one();
    let mut denom = BigInt::one();
    for j in 1..=k as i64 {
        p = &p * &Poly::linear(a - k as i64 + j);
        denom *= j;
    }
    RatFunc::from_poly(p.scale(&Rational::try_new(1, denom).expect("k! > 0")))
}

/// `ψ(s+a) - ψ(s+b) = Σ_{j=b}^{a-1} 1/(s+j)`. Simple poles at `s = -b, …, -(a-1)`.
pub fn psi_diff(a: u64, b: u64) -> Result<RatFunc, SpecialError> {
    if a < b {
        return Err(SpecialError::Unoriented { a, b });
    }
    Ok(telescoped(a, b, 1))
}

/// `ψ'(s+a) - ψ'(s+b) = -Σ_{j=b}^{a-1} 1/(s+j)^2`. Double poles at `s = -b, …, -(a-1)`.
pub fn psi1_diff(a: u64, b: u64) -> Result<RatFunc, SpecialError> {
    if a < b {
        return Err(SpecialError::Unoriented { a, b });
    }
    Ok(-telescoped(a, b, 2))
}

/// `Σ_{j=b}^{a-1} 1/(s+j)^power` over the common denominator `Π (s+j)^power`.
/// The result is already reduced: each pole keeps a nonzero residue.
fn telescoped(a: u64, b: u64, power: u32) -> RatFunc {
    if a == b {
        return RatFunc::zero();
    }
    let factors: Vec<Poly> = (b..a).map(|j| Poly::linear(j as i64).pow(power)).collect();
    let den = factors.iter().fold(Poly::one(), |acc, f| &acc * f);
    let num = factors
        .iter()
        .map(|f| den.exact_div(f).expect("factor of the product"))
        .fold(Poly::zero(), |acc, q| &acc + &q);
    RatFunc::new(num, den).expect("nonzero denominator")
}

/// `binom(-1/2, k) = (-1)^k / 4^k · binom(2k, k)`.
pub fn binom_neg_half(k: u64) -> Rational {
    let four_k = Rational::from_int(BigInt::from(4).pow(k as u32));
    Rational::sign_pow(k as i64) * binom_int(2 * k, k as i64).checked_div(&four_k).expect("nonzero")
}

/// `binom(-3/2, n) = (-1)^n (2n+1) / 4^n · binom(2n, n)`.
pub fn binom_neg3half(n: u64) -> Rational {
    binom_neg_half(n) * Rational::from((2 * n + 1) as i64)
}

/// Closed form of `ψ(1/2) - ψ(1/2 - k) = H_k - 2 H_{2k}`.
pub fn psi_half_reduction(k: u64) -> Rational {
    harmonic(k) - harmonic(2 * k) * Rational::from(2)
}

/// Closed form of `ψ(-1/2) - ψ(-1/2 - n) = 4n/(2n+1) - 2 H_{2n} + H_n`.
pub fn psi_neg_half_reduction(n: u64) -> Rational {
    Rational::ratio(4 * n as i64, 2 * n as i64 + 1) - harmonic(2 * n) * Rational::from(2) + harmonic(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle_sum(n: u64, r: u32) -> Rational {
        // Independent of harmonic_gen: accumulate numerator/denominator by hand.
        let mut num = BigInt::from(0);
        let mut den = BigInt::one();
        for k in 1..=n {
            let kr = BigInt::from(k).pow(r);
            num = num * &kr + &den;
            den *= kr;
        }
        Rational::try_new(num, den).unwrap()
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(0), Rational::zero());
        assert_eq!(harmonic(3), Rational::ratio(11, 6));
        assert_eq!(harmonic(6), Rational::ratio(49, 20));
        assert_eq!(harmonic(6), oracle_sum(6, 1));
    }

    #[test]
    fn generalized_harmonic_values() {
        assert_eq!(harmonic_gen(0, 2), Rational::zero());
        assert_eq!(harmonic_gen(2, 2), Rational::ratio(5, 4));
        assert_eq!(harmonic_gen(3, 2), Rational::ratio(49, 36));
        assert_eq!(harmonic_gen(9, 3), oracle_sum(9, 3));
    }

    #[test]
    fn cache_matches_direct_sums() {
        let cache = HarmonicCache::new();
        assert_eq!(cache.high_water(), None);
        assert_eq!(cache.get(30, 2), harmonic_gen(30, 2));
        assert_eq!(cache.high_water(), Some(30));
        for n in 0..=30 {
            assert_eq!(cache.get(n, 1), harmonic(n));
        }
        assert_eq!(cache.get(5, 3), harmonic_gen(5, 3));
        // recurrence H_n - H_{n-1} = 1/n^r
        for n in 1..=30u64 {
            let step = cache.get(n, 2) - cache.get(n - 1, 2);
            assert_eq!(step, Rational::try_new(1, n * n).unwrap());
        }
    }

    #[test]
    fn integer_binomials() {
        assert_eq!(binom_int(5, 2), Rational::from(10));
        assert_eq!(binom_int(3, 5), Rational::zero());
        assert_eq!(binom_int(3, -1), Rational::zero());
        assert_eq!(binom_int(6, 3), Rational::from(20));
        assert_eq!(binom_int(0, 0), Rational::one());
    }

    #[test]
    fn shifted_binomials() {
        assert_eq!(binom_shift(7, 0), RatFunc::one());
        assert_eq!(binom_shift(2, 1), RatFunc::from_poly(Poly::linear(2)));
        assert_eq!(binom_shift(0, 2).eval(&Rational::ratio(-1, 2)).unwrap(), Rational::ratio(3, 8));
        for a in 0..8i64 {
            for k in 0..8u32 {
                assert_eq!(binom_shift(a, k).num().degree(), Some(k as usize));
                assert_eq!(binom_shift(a, k).eval(&Rational::zero()).unwrap(), binom_int(a as u64, k as i64));
            }
        }
    }

    #[test]
    fn digamma_differences() {
        let inv_s = RatFunc::new(Poly::one(), Poly::s()).unwrap();
        assert_eq!(psi_diff(1, 0).unwrap(), inv_s);
        assert_eq!(psi_diff(3, 3).unwrap(), RatFunc::zero());
        // n = 3, k = 2: ψ(s+4) - ψ(s+2) at s = 0 is H_3 - H_1
        assert_eq!(psi_diff(4, 2).unwrap().eval(&Rational::zero()).unwrap(), Rational::ratio(5, 6));
        assert_eq!(psi_diff(1, 0).unwrap().eval(&Rational::ratio(-1, 2)).unwrap(), Rational::from(-2));
        assert_eq!(psi_diff(0, 1), Err(SpecialError::Unoriented { a: 0, b: 1 }));
    }

    #[test]
    fn trigamma_differences() {
        let f = psi1_diff(1, 0).unwrap();
        assert_eq!(f, RatFunc::new(Poly::constant(Rational::from(-1)), Poly::s().pow(2)).unwrap());
        assert_eq!(psi1_diff(3, 1).unwrap().eval(&Rational::zero()).unwrap(), Rational::ratio(-5, 4));
        assert_eq!(psi1_diff(2, 2).unwrap(), RatFunc::zero());
        assert!(psi1_diff(1, 2).is_err());
    }

    #[test]
    fn poles_sit_at_negative_shifts() {
        let f = psi_diff(5, 2).unwrap();
        for j in 2..5 {
            assert!(f.eval(&Rational::from(-j)).is_err());
        }
        assert!(f.eval(&Rational::from(-1)).is_ok());
        assert!(f.eval(&Rational::from(-5)).is_ok());
    }

    #[test]
    fn half_integer_binomials() {
        assert_eq!(binom_neg3half(0), Rational::one());
        assert_eq!(binom_neg3half(1), Rational::ratio(-3, 2));
        assert_eq!(binom_neg3half(2), Rational::ratio(15, 8));
        assert_eq!(binom_neg_half(2), Rational::ratio(3, 8));
    }

    #[test]
    fn digamma_half_reductions_small_cases() {
        // ψ(1/2) - ψ(-1/2) = 1/(-1/2) = -2 = H_1 - 2 H_2
        assert_eq!(psi_half_reduction(1), Rational::from(-2));
        // ψ(-1/2) - ψ(-3/2) = 1/(-3/2) = -2/3
        assert_eq!(psi_neg_half_reduction(1), Rational::ratio(-2, 3));
    }
}
