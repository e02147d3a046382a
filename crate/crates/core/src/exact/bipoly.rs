use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Poly, Rational};

/// Exponent pair `(deg_x, deg_s)`. The derived ordering is lexicographic
/// with `x` major, which is the term order used for division.
pub type Exponents = (u32, u32);

/// Sparse polynomial in `(s, x)` with rational coefficients. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<Exponents, Rational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        BiPoly::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        BiPoly::monomial(Rational::one(), 1, 0)
    }

    pub fn s() -> Self {
        BiPoly::monomial(Rational::one(), 0, 1)
    }

    pub fn monomial(c: Rational, deg_x: u32, deg_s: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((deg_x, deg_s), c);
        }
        BiPoly { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Exponents, Rational)>) -> Self {
        let mut out = BiPoly::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }

    /// Embeds a polynomial in `s`.
    pub fn from_poly_s(p: &Poly) -> Self {
        BiPoly::from_terms(p.coeffs().iter().enumerate().map(|(i, c)| ((0, i as u32), c.clone())))
    }

    /// Embeds a polynomial whose variable is read as `x`.
    pub fn from_poly_x(p: &Poly) -> Self {
        BiPoly::from_terms(p.coeffs().iter().enumerate().map(|(i, c)| ((i as u32, 0), c.clone())))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(Rational::is_one)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn coeff(&self, deg_x: u32, deg_s: u32) -> Rational {
        self.terms.get(&(deg_x, deg_s)).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<(&Exponents, &Rational)> {
        self.terms.last_key_value()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn degree_s(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    /// Smallest exponents appearing in every term, i.e. the largest monomial
    /// dividing `self`.
    pub fn monomial_content(&self) -> Option<Exponents> {
        let mut it = self.terms.keys();
        let first = *it.next()?;
        Some(it.fold(first, |(ax, as_), &(bx, bs)| (ax.min(bx), as_.min(bs))))
    }

    fn add_term(&mut self, key: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    /// Divides every exponent by the monomial `x^dx s^ds`, which must divide
    /// every term.
    pub fn shift_down(&self, (dx, ds): Exponents) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(&(a, b), v)| ((a - dx, b - ds), v.clone())).collect() }
    }

    pub fn mul_monomial(&self, c: &Rational, (dx, ds): Exponents) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly { terms: self.terms.iter().map(|(&(a, b), v)| ((a + dx, b + ds), v * c)).collect() }
    }

    pub fn pow(&self, mut exp: u32) -> BiPoly {
        let mut acc = BiPoly::one();
        let mut sq = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &sq;
            }
            exp >>= 1;
            if exp > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    pub fn eval(&self, s: &Rational, x: &Rational) -> Rational {
        let mut total = Rational::zero();
        let mut xpow: Vec<Rational> = vec![Rational::one()];
        let mut spow: Vec<Rational> = vec![Rational::one()];
        for ((a, b), c) in &self.terms {
            while xpow.len() <= *a as usize {
                let next = xpow.last().unwrap() * x;
                xpow.push(next);
            }
            while spow.len() <= *b as usize {
                let next = spow.last().unwrap() * s;
                spow.push(next);
            }
            total += c * &xpow[*a as usize] * &spow[*b as usize];
        }
        total
    }

    /// Substitutes `x = c`, leaving a polynomial in `s` only.
    pub fn subst_x(&self, c: &Rational) -> BiPoly {
        let mut out = BiPoly::zero();
        let mut powers = vec![Rational::one()];
        for (&(a, b), v) in &self.terms {
            while powers.len() <= a as usize {
                let next = powers.last().unwrap() * c;
                powers.push(next);
            }
            out.add_term((0, b), v * &powers[a as usize]);
        }
        out
    }

    /// Substitutes `s = c`, leaving a polynomial in `x` only.
    pub fn subst_s(&self, c: &Rational) -> BiPoly {
        let mut out = BiPoly::zero();
        let mut powers = vec![Rational::one()];
        for (&(a, b), v) in &self.terms {
            while powers.len() <= b as usize {
                let next = powers.last().unwrap() * c;
                powers.push(next);
            }
            out.add_term((a, 0), v * &powers[b as usize]);
        }
        out
    }

    /// Partial derivative with respect to `s`.
    pub fn deriv_s(&self) -> BiPoly {
        BiPoly::from_terms(
            self.terms
                .iter()
                .filter(|((_, b), _)| *b > 0)
                .map(|(&(a, b), v)| ((a, b - 1), v * Rational::from(b as i64))),
        )
    }

    /// The polynomial in `s` if `self` has no `x` dependence.
    pub fn to_poly_s(&self) -> Option<Poly> {
        if self.degree_x().unwrap_or(0) > 0 {
            return None;
        }
        let deg = self.degree_s().unwrap_or(0) as usize;
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (&(_, b), v) in &self.terms {
            coeffs[b as usize] = v.clone();
        }
        Some(Poly::from_coeffs(coeffs))
    }

    /// Quotient if `divisor` divides `self` exactly in `Q[s, x]`.
    ///
    /// Lex division: if the divisor's leading monomial ever fails to divide
    /// the remainder's leading monomial, no exact quotient exists.
    pub fn exact_div(&self, divisor: &BiPoly) -> Option<BiPoly> {
        let (&(dx, ds), dc) = divisor.leading()?;
        let dc_inv = dc.recip().ok()?;
        if divisor.terms.len() == 1 {
            if self.terms.keys().any(|&(a, b)| a < dx || b < ds) {
                return None;
            }
            return Some(self.shift_down((dx, ds)).scale(&dc_inv));
        }
        let mut rem = self.clone();
        let mut quot = BiPoly::zero();
        while let Some((&(rx, rs), rc)) = rem.leading() {
            if rx < dx || rs < ds {
                return None;
            }
            let key = (rx - dx, rs - ds);
            let qc = rc * &dc_inv;
            for (&(a, b), v) in &divisor.terms {
                rem.add_term((a + key.0, b + key.1), -(v * &qc));
            }
            quot.terms.insert(key, qc);
        }
        Some(quot)
    }
}

impl From<Rational> for BiPoly {
    fn from(c: Rational) -> Self {
        BiPoly::constant(c)
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let (long, short) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = long.clone();
        for (k, v) in &short.terms {
            out.add_term(*k, v.clone());
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect() }
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(mut self) -> BiPoly {
        for v in self.terms.values_mut() {
            *v = -std::mem::take(v);
        }
        self
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, -v);
        }
        out
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut acc: BTreeMap<Exponents, Rational> = BTreeMap::new();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                *acc.entry((a1 + a2, b1 + b2)).or_default() += c1 * c2;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        BiPoly { terms: acc }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly { (&self).$m(&rhs) }
        }
        impl $tr<&BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: &BiPoly) -> BiPoly { (&self).$m(rhs) }
        }
        impl $tr<BiPoly> for &BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly { self.$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&(a, b), c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors = Vec::new();
            match a {
                0 => {}
                1 => factors.push("x".to_string()),
                _ => factors.push(format!("x^{a}")),
            }
            match b {
                0 => {}
                1 => factors.push("s".to_string()),
                _ => factors.push(format!("s^{b}")),
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}
