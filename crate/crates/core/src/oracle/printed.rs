//! Scalar readings of each catalog formula, written out term by term.
//!
//! Nothing here touches the polynomial types: every side is a plain
//! rational computed at one sample point. `s` enters only through
//! `binom(s+a, k)` and differences of `psi`/`psi'` at `s + a`.

use num_bigint::BigInt;
use num_traits::One;

use crate::catalog::{IdentityId, Params, Variant};
use crate::exact::Rational;

/// How `s` is represented at a sample point.
#[derive(Clone, Debug)]
pub(crate) enum SValue {
    /// A positive rational: psi differences become `sum 1/(s+j)`.
    Rational(Rational),
    /// A nonnegative integer: psi differences become harmonic differences.
    Integer(u64),
}

/// Everything a formula needs at one point `(s, x)` for one `n`.
pub(crate) struct Point {
    s: SValue,
    s_val: Rational,
    pub x: Rational,
    /// `h[m] = H_m`, `h2[m] = H_m^(2)`.
    h: Vec<Rational>,
    h2: Vec<Rational>,
    /// `psi[a]` and `psi1[a]` equal `psi(s+a)` and `psi'(s+a)` up to an
    /// additive constant shared by all `a >= 1`.
    psi: Vec<Rational>,
    psi1: Vec<Rational>,
}

fn q(v: i64) -> Rational {
    Rational::from(v)
}

fn frac(p: i64, d: i64) -> Rational {
    Rational::ratio(p, d)
}

fn sign(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        q(1)
    } else {
        q(-1)
    }
}

fn pow(b: &Rational, e: i64) -> Rational {
    b.pow(e).expect("sample bases are nonzero")
}

fn div(a: Rational, b: Rational) -> Rational {
    a.checked_div(&b).expect("printed denominators do not vanish on the grid")
}

/// `binom(top, k)` for any integer `top`, via the falling factorial.
pub(crate) fn choose(top: i64, k: i64) -> Rational {
    if k < 0 {
        return Rational::zero();
    }
    if top >= 0 && k > top {
        return Rational::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(top - i);
        den *= BigInt::from(i + 1);
    }
    Rational::try_new(num, den).expect("k! is nonzero")
}

fn sum(lo: i64, hi: i64, mut f: impl FnMut(i64) -> Rational) -> Rational {
    let mut acc = Rational::zero();
    for k in lo..=hi {
        acc += f(k);
    }
    acc
}

impl Point {
    /// `hmax` bounds the harmonic indices used, `amax` the shifts in
    /// `psi(s + a)`.
    pub(crate) fn new(s: SValue, x: Rational, hmax: u64, amax: u64) -> Point {
        let s_val = match &s {
            SValue::Rational(r) => r.clone(),
            SValue::Integer(v) => Rational::from(*v as i64),
        };
        let top = match &s {
            SValue::Integer(v) => hmax.max(v + amax),
            SValue::Rational(_) => hmax,
        };
        let mut h = vec![Rational::zero()];
        let mut h2 = vec![Rational::zero()];
        for m in 1..=top as i64 {
            h.push(&h[h.len() - 1] + &frac(1, m));
            h2.push(&h2[h2.len() - 1] + &frac(1, m * m));
        }
        let (mut psi, mut psi1) = (vec![Rational::zero()], vec![Rational::zero()]);
        for a in 1..=amax as i64 {
            match &s {
                // psi(s0 + a) = H_{s0+a-1} - gamma, psi'(s0 + a) = zeta(2) - H^(2)_{s0+a-1}
                SValue::Integer(v) => {
                    let m = (*v as i64 + a - 1) as usize;
                    psi.push(h[m].clone());
                    psi1.push(-h2[m].clone());
                }
                // psi(s + a) - psi(s + 1) = sum_{j=1}^{a-1} 1/(s+j)
                SValue::Rational(r) => {
                    if a == 1 {
                        psi.push(Rational::zero());
                        psi1.push(Rational::zero());
                    } else {
                        let t = div(q(1), r + &q(a - 1));
                        psi.push(&psi[psi.len() - 1] + &t);
                        psi1.push(&psi1[psi1.len() - 1] - &(&t * &t));
                    }
                }
            }
        }
        Point { s, s_val, x, h, h2, psi, psi1 }
    }

    fn s(&self) -> &Rational {
        &self.s_val
    }

    fn h(&self, m: i64) -> Rational {
        self.h[m as usize].clone()
    }

    fn h2(&self, m: i64) -> Rational {
        self.h2[m as usize].clone()
    }

    /// `binom(s + a, k)`.
    fn cs(&self, a: i64, k: i64) -> Rational {
        match &self.s {
            SValue::Integer(v) => choose(*v as i64 + a, k),
            SValue::Rational(s) => {
                let mut acc = q(1);
                for i in 0..k {
                    acc = acc * (s + &q(a - i)) * frac(1, i + 1);
                }
                acc
            }
        }
    }

    /// `psi(s + a) - psi(s + b)`, `a, b >= 1`.
    fn dpsi(&self, a: i64, b: i64) -> Rational {
        &self.psi[a as usize] - &self.psi[b as usize]
    }

    /// `psi'(s + a) - psi'(s + b)`.
    fn dpsi1(&self, a: i64, b: i64) -> Rational {
        &self.psi1[a as usize] - &self.psi1[b as usize]
    }

    /// `(psi(s+a) - psi(s+b))^2 + psi'(s+a) - psi'(s+b)`.
    fn second(&self, a: i64, b: i64) -> Rational {
        let d = self.dpsi(a, b);
        &d * &d + self.dpsi1(a, b)
    }
}

/// Largest harmonic index and psi shift a formula may touch at `n`.
pub(crate) fn table_sizes(id: IdentityId, n: u64, params: &Params) -> (u64, u64) {
    let m = if id == IdentityId::Id13 { params.m.unwrap_or(2).max(3) } else { 3 };
    ((m + 1) * n + 2, n + 2)
}

pub(crate) fn sides(id: IdentityId, n: u64, params: &Params, p: &Point) -> (Rational, Rational) {
    use IdentityId::*;
    let n = n as i64;
    let x = &p.x;
    let s = p.s();
    let one_x = &q(1) + x;
    let ratio = div(x.clone(), one_x.clone());
    let hn = p.h(n);
    match id {
        Thm2_1 => (
            sum(0, n, |k| p.cs(n, k) * pow(x, k)),
            pow(&one_x, n) * (q(1) + s * &sum(0, n - 1, |k| p.cs(k, k) * frac(1, k + 1) * pow(&ratio, k + 1))),
        ),
        Thm2_2 => (
            sum(1, n, |k| p.cs(n, k) * p.dpsi(n + 1, n - k + 1) * pow(x, k)),
            pow(&one_x, n)
                * sum(0, n - 1, |k| {
                    p.cs(k, k) * frac(1, k + 1) * (q(1) + s * &p.dpsi(k + 1, 1)) * pow(&ratio, k + 1)
                }),
        ),
        Cor2_3 => (
            sum(0, n, |k| sign(k) * p.cs(n, k) * p.dpsi(n + 1, n - k + 1)),
            sign(n) * frac(1, n) * p.cs(n - 1, n - 1) * (q(1) + s * &p.dpsi(n, 1)),
        ),
        Thm2_4 => (
            sum(0, n, |k| p.cs(n, k) * p.second(n + 1, n - k + 1) * pow(x, k)),
            pow(&one_x, n)
                * sum(0, n - 1, |k| {
                    frac(1, k + 1)
                        * p.cs(k, k)
                        * (q(2) * p.dpsi(k + 1, 1) + s * &p.second(k + 1, 1))
                        * pow(&ratio, k + 1)
                }),
        ),
        Cor2_5 => (
            sum(0, n, |k| sign(k) * p.cs(n, k) * p.second(n + 1, n - k + 1)),
            sign(n) * frac(1, n) * p.cs(n - 1, n - 1) * (q(2) * p.dpsi(n, 1) + s * &p.second(n, 1)),
        ),
        Thm2_6 | Thm2_7 | Thm2_8 => {
            let w = |k: i64| div(sign(k) * p.cs(k, k), q((k + 1) * (k + 1)) * choose(n, k + 1));
            let lhs = |g: &dyn Fn(i64) -> Rational| sum(1, n, |k| p.cs(n, k) * sign(k - 1) * frac(1, k) * g(k));
            match id {
                Thm2_6 => (lhs(&|_| q(1)), hn + s * &sum(0, n - 1, w)),
                Thm2_7 => (
                    lhs(&|k| p.dpsi(n + 1, n - k + 1)),
                    sum(0, n - 1, w) + s * &sum(0, n - 1, |k| w(k) * p.dpsi(k + 1, 1)),
                ),
                _ => (
                    lhs(&|k| p.second(n + 1, n - k + 1)),
                    q(2) * sum(0, n - 1, |k| w(k) * p.dpsi(k + 1, 1))
                        + s * &sum(0, n - 1, |k| w(k) * p.second(k + 1, 1)),
                ),
            }
        }
        Thm2_9 | Thm2_10 | Thm2_11 => {
            let v = |k: i64| {
                div(sign(k) * p.cs(k, k) * (&hn - &p.h(k)), q((k + 1) * (n - k)) * choose(n, k))
            };
            let lhs = |g: &dyn Fn(i64) -> Rational| sum(1, n, |k| p.cs(n, k) * div(sign(k - 1), q(k * k)) * g(k));
            match id {
                Thm2_9 => (lhs(&|_| q(1)), (&hn * &hn + p.h2(n)) * frac(1, 2) + s * &sum(0, n - 1, v)),
                Thm2_10 => (
                    lhs(&|k| p.dpsi(n + 1, n - k + 1)),
                    sum(0, n - 1, v) + s * &sum(0, n - 1, |k| v(k) * p.dpsi(k + 1, 1)),
                ),
                _ => (
                    lhs(&|k| p.second(n + 1, n - k + 1)),
                    q(2) * sum(0, n - 1, |k| v(k) * p.dpsi(k + 1, 1))
                        + s * &sum(0, n - 1, |k| v(k) * p.second(k + 1, 1)),
                ),
            }
        }
        Id1 => (sum(0, n, |k| sign(k) * p.cs(n, k)), sign(n) * p.cs(n - 1, n)),
        Id2 => (sum(0, n, |k| sign(k) * p.cs(0, k)), sign(n) * p.cs(-1, n)),
        Id3 => (
            sum(0, n, |k| div(choose(2 * k, k), pow(&q(4), k))),
            div(q(2 * n + 1) * choose(2 * n, n), pow(&q(4), n)),
        ),
        Id4 => (
            sum(1, n, |k| div(choose(2 * k, k), pow(&q(4), k)) * (q(2) * p.h(2 * k) - p.h(k))),
            div(q(2 * n + 1) * choose(2 * n, n), pow(&q(4), n))
                * (q(2) * p.h(2 * n) - &hn - frac(4 * n, 2 * n + 1)),
        ),
        Id5 => (sum(1, n, |k| sign(k - 1) * frac(1, k) * choose(n, k)), hn),
        Id6 => (
            sum(1, n, |k| sign(k - 1) * frac(1, k) * choose(n, k) * p.h(n - k)),
            &hn * &hn + sum(1, n, |k| div(sign(k), q(k * k) * choose(n, k))),
        ),
        Id7 => (
            sum(0, n, |k| choose(n, k) * p.h(n - k) * pow(x, k)),
            pow(&one_x, n) * (hn - sum(1, n, |k| frac(1, k) * pow(&ratio, k))),
        ),
        Id8 => (
            sum(0, n, |k| choose(n, k) * p.h(k)),
            pow(&q(2), n) * (hn - sum(1, n, |k| div(q(1), q(k) * pow(&q(2), k)))),
        ),
        Id9 => (
            sum(1, n, |k| choose(n, k) * (p.h(k) * p.h(k) + p.h2(k)) * pow(x, k)),
            pow(&one_x, n)
                * (&hn * &hn + p.h2(n) + q(2) * sum(1, n, |k| div(p.h(k - 1) - &hn, q(k) * pow(&one_x, k)))),
        ),
        Id10 => (sum(1, n, |k| sign(k) * choose(n, k) * (p.h(k) * p.h(k) + p.h2(k))), frac(-2, n * n)),
        Id11 => (sum(1, n, |k| div(sign(k), q(k) * choose(n, k))), div(sign(n) - q(1), q(n + 1))),
        Id12 => (
            sum(1, n, |k| sign(k - 1) * frac(1, k) * choose(n, k) * (p.h(n - k) * p.h(n - k) + p.h2(n - k))),
            &hn * &hn * &hn
                + &hn * &p.h2(n)
                + q(2) * sum(1, n, |k| div(sign(k) * (&hn - &p.h(k - 1)), q(k * k) * choose(n, k))),
        ),
        Id13 | Id14 => {
            let m = params.m.unwrap_or(2) as i64;
            let lhs = sum(0, n, |k| sign(k) * choose(m * n, k) * p.h(m * n - k));
            let lead = sign(n) * frac(1, m) * choose(m * n, n);
            let bracket = match (id, m, params.variant) {
                (Id14, 2, _) => &hn - &frac(1, 2 * n),
                (Id14, 3, Some(Variant::Printed)) => q(2) * &hn - frac(1, 3 * n),
                _ => q(m - 1) * p.h((m - 1) * n) - frac(1, m * n),
            };
            (lhs, lead * bracket)
        }
        Id15 => (
            sum(1, n, |k| div(sign(k) * p.h(k), q(k) * choose(n, k))),
            div(sign(n) * p.h(n + 1), q(n + 1)) + sum(1, n + 1, |k| div(sign(k), q(k * k) * choose(n + 1, k))),
        ),
        Id16 => (
            sum(0, n, |k| div(sign(k - 1) * pow(&q(4), k) * choose(n, k), choose(2 * k, k))),
            frac(1, 2 * n - 1),
        ),
        Id17 => (
            sum(1, n, |k| choose(n, k) * div(sign(k - 1), q(k * k))),
            (&hn * &hn + p.h2(n)) * frac(1, 2),
        ),
        Id18 => (
            sum(1, n, |k| div(sign(k) * p.h(n - k), q(k) * choose(n, k))),
            div(q(1) - sign(n), q((n + 1) * (n + 1))) - div(hn.clone(), q(n + 1)),
        ),
        Id19 => (
            sum(1, n, |k| div(sign(k - 1), q(k * k)) * choose(n, k) * p.h(n - k)),
            &hn * &(&hn * &hn + p.h2(n)) * frac(1, 2)
                - sum(0, n - 1, |k| div(sign(k) * (&hn - &p.h(k)), q((k + 1) * (n - k)) * choose(n, k))),
        ),
        Id20 => {
            let t = &hn * &hn + p.h2(n);
            (
                sum(1, n, |k| div(sign(k - 1), q(k * k)) * choose(n, k) * (p.h(n - k) * p.h(n - k) + p.h2(n - k))),
                &t * &t * frac(1, 2)
                    - q(2)
                        * sum(0, n - 1, |k| {
                            let d = &hn - &p.h(k);
                            div(sign(k) * &d * &d, q((k + 1) * (n - k)) * choose(n, k))
                        }),
            )
        }
        Intro1 => (
            sum(0, n, |k| choose(n, k) * choose(n, k) * p.h(k)),
            choose(2 * n, n) * (q(2) * &hn - p.h(2 * n)),
        ),
        Intro2 => {
            let lhs = sum(0, n, |k| sign(k) * choose(n, k) * (p.h(k) - q(2) * p.h(2 * k)));
            let c = choose(2 * n, n);
            let rhs = match params.variant {
                Some(Variant::Printed) => div(pow(&q(4), n), q(n)) * &c * &c,
                _ => div(pow(&q(4), n), q(n) * c),
            };
            (lhs, rhs)
        }
        Intro3 => (
            sum(0, n, |k| sign(k) * choose(n, k) * p.h(n + k) * p.h(n + k)),
            div(hn - p.h(2 * n) - frac(2, n), q(n) * choose(2 * n, n)),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at_int(s0: u64, n: u64) -> Point {
        Point::new(SValue::Integer(s0), q(1), 4 * n + 2, n + 2)
    }

    #[test]
    fn generalized_binomial() {
        assert_eq!(choose(5, 2), q(10));
        assert_eq!(choose(-1, 3), q(-1));
        assert_eq!(choose(3, 5), q(0));
        assert_eq!(choose(-2, 2), q(3));
        assert_eq!(choose(4, -1), q(0));
    }

    #[test]
    fn psi_bridge_matches_direct_sums() {
        let r = Point::new(SValue::Rational(q(2)), q(1), 10, 6);
        let i = at_int(2, 4);
        for (a, b) in [(5, 1), (4, 2), (3, 3)] {
            assert_eq!(r.dpsi(a, b), i.dpsi(a, b));
            assert_eq!(r.dpsi1(a, b), i.dpsi1(a, b));
            assert_eq!(r.cs(a, 2), i.cs(a, 2));
        }
        assert_eq!(r.dpsi(3, 1), frac(1, 3) + frac(1, 4));
    }

    #[test]
    fn integer_s_hand_values() {
        let p = at_int(1, 2);
        let (l, r) = sides(IdentityId::Thm2_6, 2, &Params::none(), &p);
        assert_eq!((l, r), (frac(3, 2), frac(3, 2)));
        let (l, r) = sides(IdentityId::Thm2_9, 2, &Params::none(), &p);
        assert_eq!((l, r), (frac(9, 4), frac(9, 4)));
        let (l, r) = sides(IdentityId::Cor2_3, 2, &Params::none(), &at_int(0, 2));
        assert_eq!((l, r), (frac(1, 2), frac(1, 2)));
    }

    #[test]
    fn misprints_show_up() {
        let p = at_int(0, 1);
        let (l, r) = sides(IdentityId::Intro2, 1, &Params::variant(Variant::Printed), &p);
        assert_eq!((l, r), (q(2), q(16)));
        let (l, r) = sides(IdentityId::Id14, 1, &Params::m(3).with_variant(Variant::Printed), &at_int(0, 1));
        assert_ne!(l, r);
    }
}
