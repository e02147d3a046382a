use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{ArithError, BiPoly, Poly, RatFunc, Rational};

/// Quotient of two polynomials in `(s, x)`, kept unreduced.
///
/// No bivariate gcd is ever taken. After each operation the shared monomial
/// `x^a s^b` is stripped and the denominator's leading coefficient is scaled
/// to one, which keeps coefficients in check without changing the value.
/// Equality (`==`) is cross-multiplication: `a/b == c/d` iff `a*d == c*b`.
#[derive(Clone)]
pub struct BiFrac {
    num: BiPoly,
    den: BiPoly,
}

impl BiFrac {
    pub fn new(num: BiPoly, den: BiPoly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(Self::tidy(num, den))
    }

    fn tidy(num: BiPoly, den: BiPoly) -> Self {
        if num.is_zero() {
            return BiFrac::zero();
        }
        if num == den {
            return BiFrac::one();
        }
        let (nx, ns) = num.monomial_content().expect("nonzero");
        let (dx, ds) = den.monomial_content().expect("nonzero");
        let shared = (nx.min(dx), ns.min(ds));
        let (num, den) = if shared == (0, 0) {
            (num, den)
        } else {
            (num.shift_down(shared), den.shift_down(shared))
        };
        let lc = den.leading().expect("nonzero").1.clone();
        if lc.is_one() {
            BiFrac { num, den }
        } else {
            let inv = lc.recip().expect("nonzero");
            BiFrac { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn zero() -> Self {
        BiFrac { num: BiPoly::zero(), den: BiPoly::one() }
    }

    pub fn one() -> Self {
        BiFrac::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        BiFrac { num: BiPoly::constant(c), den: BiPoly::one() }
    }

    pub fn x() -> Self {
        BiFrac::from_bipoly(BiPoly::x())
    }

    pub fn s() -> Self {
        BiFrac::from_bipoly(BiPoly::s())
    }

    pub fn from_bipoly(p: BiPoly) -> Self {
        BiFrac { num: p, den: BiPoly::one() }
    }

    pub fn from_ratfunc(f: &RatFunc) -> Self {
        BiFrac { num: BiPoly::from_poly_s(f.num()), den: BiPoly::from_poly_s(f.den()) }
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn degree_x(&self) -> u32 {
        self.num.degree_x().unwrap_or(0).max(self.den.degree_x().unwrap_or(0))
    }

    pub fn degree_s(&self) -> u32 {
        self.num.degree_s().unwrap_or(0).max(self.den.degree_s().unwrap_or(0))
    }

    /// Reduced univariate form, if neither part mentions `x`.
    pub fn as_ratfunc(&self) -> Option<RatFunc> {
        let num = self.num.to_poly_s()?;
        let den = self.den.to_poly_s()?;
        RatFunc::new(num, den).ok()
    }

    /// The scalar value, if `self` mentions neither `s` nor `x` after
    /// reduction.
    pub fn as_rational(&self) -> Option<Rational> {
        self.as_ratfunc()?.as_constant()
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::tidy(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &BiFrac) -> Result<Self, ArithError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, c: &Rational) -> BiFrac {
        if c.is_zero() {
            return BiFrac::zero();
        }
        BiFrac { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, exp: i64) -> Result<Self, ArithError> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let e = u32::try_from(exp.unsigned_abs()).map_err(|_| ArithError::DivisionByZero)?;
        Ok(Self::tidy(base.num.pow(e), base.den.pow(e)))
    }

    /// `self.num * other.den - other.num * self.den`; zero iff the two
    /// fractions are equal.
    pub fn cross_difference(&self, other: &BiFrac) -> BiPoly {
        &(&self.num * &other.den) - &(&other.num * &self.den)
    }

    pub fn eval(&self, s: &Rational, x: &Rational) -> Result<Rational, ArithError> {
        let d = self.den.eval(s, x);
        if d.is_zero() {
            return Err(ArithError::BiPole { s: s.clone(), x: x.clone() });
        }
        self.num.eval(s, x).checked_div(&d)
    }

    /// Formal partial derivative in `s` (quotient rule).
    pub fn deriv_s(&self) -> BiFrac {
        let den_s = self.den.deriv_s();
        if den_s.is_zero() {
            return Self::tidy(self.num.deriv_s(), self.den.clone());
        }
        let top = &(&self.num.deriv_s() * &self.den) - &(&self.num * &den_s);
        Self::tidy(top, &self.den * &self.den)
    }

    /// Substitutes `x = c`. A removable singularity (both parts vanishing
    /// identically at `x = c`) is cancelled by dividing out `x - c`.
    pub fn subst_x(&self, c: &Rational) -> Result<BiFrac, ArithError> {
        let lin = &BiPoly::x() - &BiPoly::constant(c.clone());
        self.subst_with(|p| p.subst_x(c), &lin, || ArithError::XPole(c.clone()))
    }

    /// Substitutes `s = c`, cancelling removable singularities as
    /// [`BiFrac::subst_x`] does.
    pub fn subst_s(&self, c: &Rational) -> Result<BiFrac, ArithError> {
        let lin = &BiPoly::s() - &BiPoly::constant(c.clone());
        self.subst_with(|p| p.subst_s(c), &lin, || ArithError::Pole(c.clone()))
    }

    fn subst_with(
        &self,
        subst: impl Fn(&BiPoly) -> BiPoly,
        lin: &BiPoly,
        pole: impl Fn() -> ArithError,
    ) -> Result<BiFrac, ArithError> {
        let (mut num, mut den) = (self.num.clone(), self.den.clone());
        loop {
            let d = subst(&den);
            if !d.is_zero() {
                return BiFrac::new(subst(&num), d);
            }
            if !subst(&num).is_zero() {
                return Err(pole());
            }
            num = num.exact_div(lin).expect("vanishing at the point implies divisibility");
            den = den.exact_div(lin).expect("vanishing at the point implies divisibility");
        }
    }
}

impl From<Rational> for BiFrac {
    fn from(c: Rational) -> Self {
        BiFrac::constant(c)
    }
}

impl From<&RatFunc> for BiFrac {
    fn from(f: &RatFunc) -> Self {
        BiFrac::from_ratfunc(f)
    }
}

impl From<Poly> for BiFrac {
    fn from(p: Poly) -> Self {
        BiFrac::from_bipoly(BiPoly::from_poly_s(&p))
    }
}

impl PartialEq for BiFrac {
    fn eq(&self, other: &BiFrac) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        if let Some(q) = other.den.exact_div(&self.den) {
            return &self.num * &q == other.num;
        }
        if let Some(q) = self.den.exact_div(&other.den) {
            return self.num == &other.num * &q;
        }
        self.cross_difference(other).is_zero()
    }
}

impl Eq for BiFrac {}

impl Add<&BiFrac> for &BiFrac {
    type Output = BiFrac;
    fn add(self, rhs: &BiFrac) -> BiFrac {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return BiFrac::tidy(&self.num + &rhs.num, self.den.clone());
        }
        if let Some(q) = rhs.den.exact_div(&self.den) {
            return BiFrac::tidy(&(&self.num * &q) + &rhs.num, rhs.den.clone());
        }
        if let Some(q) = self.den.exact_div(&rhs.den) {
            return BiFrac::tidy(&self.num + &(&rhs.num * &q), self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        BiFrac::tidy(num, &self.den * &rhs.den)
    }
}

impl Neg for &BiFrac {
    type Output = BiFrac;
    fn neg(self) -> BiFrac {
        BiFrac { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for BiFrac {
    type Output = BiFrac;
    fn neg(self) -> BiFrac {
        BiFrac { num: -self.num, den: self.den }
    }
}

impl Sub<&BiFrac> for &BiFrac {
    type Output = BiFrac;
    fn sub(self, rhs: &BiFrac) -> BiFrac {
        self + &(-rhs)
    }
}

impl Mul<&BiFrac> for &BiFrac {
    type Output = BiFrac;
    fn mul(self, rhs: &BiFrac) -> BiFrac {
        if self.is_zero() || rhs.is_zero() {
            return BiFrac::zero();
        }
        BiFrac::tidy(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<BiFrac> for BiFrac {
            type Output = BiFrac;
            fn $m(self, rhs: BiFrac) -> BiFrac { (&self).$m(&rhs) }
        }
        impl $tr<&BiFrac> for BiFrac {
            type Output = BiFrac;
            fn $m(self, rhs: &BiFrac) -> BiFrac { (&self).$m(rhs) }
        }
        impl $tr<BiFrac> for &BiFrac {
            type Output = BiFrac;
            fn $m(self, rhs: BiFrac) -> BiFrac { self.$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl fmt::Display for BiFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_ratfunc() {
            return write!(f, "{r}");
        }
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &BiPoly| if p.len() > 1 { format!("({p})") } else { p.to_string() };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for BiFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiFrac(({}) / ({}))", self.num, self.den)
    }
}
