//! Randomized properties shared by the `properties` and `acceptance`
//! targets. Each property runs `CASES` cases from a fixed seed.

#![allow(dead_code)]

use hforge::dsl;
use hforge::exact::{bifrac_eq, BiFrac, BiPoly, Poly, RatFunc, Rational};
use hforge::special::{binom_int, binom_shift, harmonic, psi1_diff, psi_diff, Harmonics};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRng, TestRunner};

pub const CASES: u32 = 1000;

pub type Outcome = Result<(), String>;

pub fn run<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Outcome {
    let config = Config { cases: CASES, failure_persistence: None, ..Config::default() };
    let rng = TestRng::deterministic_rng(config.rng_algorithm);
    TestRunner::new_with_rng(config, rng).run(&strategy, test).map_err(|e| e.to_string())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| Rational::ratio(p, q))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(rational(), 0..5).prop_map(Poly::from_coeffs)
}

fn nonzero_poly() -> impl Strategy<Value = Poly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn bipoly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(((0u32..3, 0u32..3), rational()), 0..5).prop_map(BiPoly::from_terms)
}

fn nonzero_bipoly() -> impl Strategy<Value = BiPoly> {
    bipoly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

fn bifrac() -> impl Strategy<Value = BiFrac> {
    (bipoly(), nonzero_bipoly()).prop_map(|(n, d)| BiFrac::new(n, d).unwrap())
}

pub fn rational_field() -> Outcome {
    run((rational(), rational(), rational(), nonzero_rational()), |(a, b, c, d)| {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a + &Rational::zero(), a.clone());
        prop_assert_eq!(&a * &Rational::one(), a.clone());
        prop_assert_eq!(&a + &(-a.clone()), Rational::zero());
        prop_assert_eq!(&d * &d.recip().unwrap(), Rational::one());
        prop_assert_eq!(a.checked_div(&d).unwrap() * &d, a.clone());
        Ok(())
    })
}

pub fn poly_ring() -> Outcome {
    run((poly(), poly(), poly()), |(a, b, c)| {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &Poly::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
        Ok(())
    })
}

pub fn bipoly_ring() -> Outcome {
    run((bipoly(), bipoly(), bipoly()), |(a, b, c)| {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &BiPoly::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
        Ok(())
    })
}

pub fn normalization() -> Outcome {
    run((poly(), nonzero_poly(), nonzero_poly()), |(p, q, r)| {
        let base = RatFunc::new(p.clone(), q.clone()).unwrap();
        let scaled = RatFunc::new(&p * &r, &q * &r).unwrap();
        prop_assert_eq!(scaled.num(), base.num());
        prop_assert_eq!(scaled.den(), base.den());
        let again = RatFunc::new(base.num().clone(), base.den().clone()).unwrap();
        prop_assert_eq!(again.num(), base.num());
        prop_assert_eq!(again.den(), base.den());
        prop_assert_eq!(base.den().leading(), Some(&Rational::one()));
        let g = Poly::gcd(&q, &r);
        prop_assert!(q.exact_div(&g).is_some() && r.exact_div(&g).is_some());
        prop_assert_eq!(Poly::gcd(&g, &g), g.clone());
        prop_assert_eq!(Poly::gcd(&q, &r), Poly::gcd(&r, &q));
        Ok(())
    })
}

pub fn bifrac_equivalence() -> Outcome {
    run((bifrac(), nonzero_bipoly(), nonzero_bipoly(), bifrac()), |(a, r1, r2, other)| {
        let b = BiFrac::new(a.num() * &r1, a.den() * &r1).unwrap();
        let c = BiFrac::new(b.num() * &r2, b.den() * &r2).unwrap();
        prop_assert!(bifrac_eq(&a, &a));
        prop_assert!(bifrac_eq(&a, &b) && bifrac_eq(&b, &a));
        prop_assert!(bifrac_eq(&b, &c) && bifrac_eq(&a, &c));
        prop_assert_eq!(bifrac_eq(&a, &other), bifrac_eq(&other, &a));
        if bifrac_eq(&a, &other) {
            prop_assert!(bifrac_eq(&c, &other));
        }
        Ok(())
    })
}

pub fn psi_telescoping() -> Outcome {
    let triple = (0u64..30, 0u64..30, 0u64..30).prop_map(|(a, b, c)| {
        let mut v = [a, b, c];
        v.sort_unstable();
        (v[2], v[1], v[0])
    });
    run(triple, |(a, b, c)| {
        prop_assert_eq!(psi_diff(a, b).unwrap() + psi_diff(b, c).unwrap(), psi_diff(a, c).unwrap());
        prop_assert_eq!(psi1_diff(a, b).unwrap() + psi1_diff(b, c).unwrap(), psi1_diff(a, c).unwrap());
        if c >= 1 {
            let at0 = psi_diff(a, c).unwrap().eval(&Rational::zero()).unwrap();
            prop_assert_eq!(at0, harmonic(a - 1) - harmonic(c - 1));
        }
        Ok(())
    })
}

pub fn pascal_absorption() -> Outcome {
    let ints = (0u64..=60, 0u64..=60).prop_map(|(n, k)| (n.max(k), n.min(k)));
    let shifts = (1i64..=25, 1u32..=25).prop_map(|(a, k)| (a.max(k as i64), k.min(a as u32)));
    run((ints, shifts), |((n, k), (a, j))| {
        let (n1, ki) = (n + 1, k as i64);
        prop_assert_eq!(binom_int(n1, ki), binom_int(n, ki) + binom_int(n, ki - 1));
        if n >= 1 && k >= 1 {
            let absorbed = binom_int(n - 1, ki - 1) * Rational::ratio(n as i64, ki);
            prop_assert_eq!(absorbed, binom_int(n, ki));
        }
        prop_assert_eq!(binom_shift(a + 1, j), binom_shift(a, j) + binom_shift(a, j - 1));
        let lin = RatFunc::from(Poly::linear(a)).scale(&Rational::ratio(1, j as i64));
        prop_assert_eq!(&lin * &binom_shift(a - 1, j - 1), binom_shift(a, j));
        Ok(())
    })
}

pub fn eval_commutes() -> Outcome {
    run((ratfunc(), ratfunc(), rational()), |(f, g, s0)| {
        if let (Ok(fv), Ok(gv)) = (f.eval(&s0), g.eval(&s0)) {
            prop_assert_eq!((&f + &g).eval(&s0).unwrap(), &fv + &gv);
            prop_assert_eq!((&f - &g).eval(&s0).unwrap(), &fv - &gv);
            prop_assert_eq!((&f * &g).eval(&s0).unwrap(), &fv * &gv);
        }
        Ok(())
    })
}

/// Small expression texts in the binder `k` and `n`.
fn body() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        Just("k".to_string()),
        Just("n".to_string()),
        (0i64..6).prop_map(|v| v.to_string()),
        Just("H(k)".to_string()),
        Just("C(n,k)".to_string()),
        Just("(-1)^k".to_string()),
        Just("1/(k+1)".to_string()),
        Just("CS(k,2)".to_string()),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        (inner.clone(), prop_oneof![Just("+"), Just("-"), Just("*")], inner)
            .prop_map(|(a, op, b)| format!("({a}){op}({b})"))
    })
}

pub fn sum_induction() -> Outcome {
    run((body(), 0i64..4, 0i64..6, 1u64..6), |(body, lo, hi, n)| {
        let eval = |src: &str| dsl::eval(&dsl::compile_expr(src).unwrap(), n).unwrap();
        let whole = eval(&format!("sum(k={lo}..{hi}, {body})"));
        let mut acc = BiFrac::zero();
        for j in lo..=hi {
            acc = &acc + &eval(&body.replace('k', &format!("({j})")));
        }
        prop_assert_eq!(whole, acc);
        Ok(())
    })
}

pub fn spans_in_bounds() -> Outcome {
    let chars: Vec<char> = "nsxk0123()+-*/^,.=HCPSIDsum ".chars().collect();
    let src = prop::collection::vec(prop::sample::select(chars), 0..30).prop_map(|v| v.into_iter().collect::<String>());
    run(src, |src| {
        let mut diags = Vec::new();
        if let Err(d) = dsl::compile_identity(&src) {
            diags.extend(d);
        }
        if let Err(d) = dsl::compile_expr(&src) {
            diags.extend(d);
        }
        if let Ok(e) = dsl::compile_expr(&src) {
            if let Err(err) = dsl::eval_with(&e, 3, Harmonics::Direct) {
                diags.push(err.into());
            }
        }
        for d in diags {
            prop_assert!(d.span.start <= d.span.end && d.span.end <= src.len(), "{:?} in {:?}", d, src);
        }
        Ok(())
    })
}

/// The arithmetic-kernel properties, by name.
pub fn kernel() -> Vec<(&'static str, fn() -> Outcome)> {
    vec![
        ("rational field axioms", rational_field),
        ("polynomial ring axioms", poly_ring),
        ("bivariate ring axioms", bipoly_ring),
        ("gcd and normalization", normalization),
        ("bifrac_eq equivalence", bifrac_equivalence),
        ("psi telescoping", psi_telescoping),
        ("pascal and absorption", pascal_absorption),
    ]
}
