//! Exact scalar and polynomial arithmetic.
//!
//! * [`Rational`] is the scalar field everywhere.
//! * [`Poly`] and [`RatFunc`] are dense univariate objects in `s`; a
//!   `RatFunc` is always fully reduced with a monic denominator.
//! * [`BiPoly`] and [`BiFrac`] are sparse bivariate objects in `(s, x)`. A
//!   `BiFrac` is never reduced by a gcd; equality is cross-multiplication.

mod bifrac;
mod bipoly;
mod poly;
mod ratfunc;
mod rational;

pub use bifrac::BiFrac;
pub use bipoly::BiPoly;
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use rational::Rational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("pole at s = {0}")]
    Pole(Rational),
    #[error("pole at x = {0}")]
    XPole(Rational),
    #[error("pole at (s, x) = ({s}, {x})")]
    BiPole { s: Rational, x: Rational },
    #[error("not a rational number: {0:?}")]
    Parse(String),
}

/// The identity-verification predicate: `a.num * b.den == b.num * a.den`.
pub fn bifrac_eq(a: &BiFrac, b: &BiFrac) -> bool {
    a == b
}
