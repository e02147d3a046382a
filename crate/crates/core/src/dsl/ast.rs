use std::fmt;

use num_bigint::BigInt;

/// Half-open byte range into the source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, serde::Serialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn to(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }

    pub fn shift(self, by: usize) -> Span {
        Span::new(self.start + by, self.end + by)
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// `H(n)`, harmonic number.
    H,
    /// `Hr(n, r)`, harmonic number of order `r`.
    Hr,
    /// `C(a, b)`, integer binomial.
    C,
    /// `CS(a, b)`, `binom(s + a, b)`.
    CS,
    /// `PSID(a, b)`, `psi(s + a) - psi(s + b)`.
    Psid,
    /// `PSI1D(a, b)`, `psi'(s + a) - psi'(s + b)`.
    Psi1d,
}

impl Builtin {
    pub const ALL: [Builtin; 6] = [Builtin::H, Builtin::Hr, Builtin::C, Builtin::CS, Builtin::Psid, Builtin::Psi1d];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::H => "H",
            Builtin::Hr => "Hr",
            Builtin::C => "C",
            Builtin::CS => "CS",
            Builtin::Psid => "PSID",
            Builtin::Psi1d => "PSI1D",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Builtin::H => 1,
            _ => 2,
        }
    }

    pub fn from_name(name: &str) -> Option<Builtin> {
        Builtin::ALL.into_iter().find(|b| b.name() == name)
    }
}

/// Value domain of a node, ordered by inclusion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dom {
    Int,
    Rational,
    RatFuncS,
    BiFrac,
}

impl fmt::Display for Dom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dom::Int => "integer",
            Dom::Rational => "rational",
            Dom::RatFuncS => "ratfunc-in-s",
            Dom::BiFrac => "bifrac",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Int(BigInt),
    /// Literal `p/q`, kept as written.
    Rat(BigInt, BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Sum { binder: String, binder_span: Span, lo: Box<Expr>, hi: Box<Expr>, body: Box<Expr> },
    Call(Builtin, Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
    /// Filled in by the checker.
    pub dom: Option<Dom>,
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Expr { kind, span, dom: None }
    }

    /// Structural equality ignoring spans and annotations.
    pub fn same_shape(&self, other: &Expr) -> bool {
        use ExprKind::*;
        match (&self.kind, &other.kind) {
            (Int(a), Int(b)) => a == b,
            (Rat(a, b), Rat(c, d)) => a == c && b == d,
            (Var(a), Var(b)) => a == b,
            (Neg(a), Neg(b)) => a.same_shape(b),
            (Add(a, b), Add(c, d))
            | (Sub(a, b), Sub(c, d))
            | (Mul(a, b), Mul(c, d))
            | (Div(a, b), Div(c, d))
            | (Pow(a, b), Pow(c, d)) => a.same_shape(c) && b.same_shape(d),
            (
                Sum { binder: k1, lo: l1, hi: h1, body: b1, .. },
                Sum { binder: k2, lo: l2, hi: h2, body: b2, .. },
            ) => k1 == k2 && l1.same_shape(l2) && h1.same_shape(h2) && b1.same_shape(b2),
            (Call(f, xs), Call(g, ys)) => {
                f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| x.same_shape(y))
            }
            _ => false,
        }
    }

    /// Pre-order traversal.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Expr)) {
        f(self);
        match &self.kind {
            ExprKind::Int(_) | ExprKind::Rat(..) | ExprKind::Var(_) => {}
            ExprKind::Neg(a) => a.walk(f),
            ExprKind::Add(a, b)
            | ExprKind::Sub(a, b)
            | ExprKind::Mul(a, b)
            | ExprKind::Div(a, b)
            | ExprKind::Pow(a, b) => {
                a.walk(f);
                b.walk(f);
            }
            ExprKind::Sum { lo, hi, body, .. } => {
                lo.walk(f);
                hi.walk(f);
                body.walk(f);
            }
            ExprKind::Call(_, args) => args.iter().for_each(|a| a.walk(f)),
        }
    }
}

/// `lhs == rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Identity {
    pub lhs: Expr,
    pub rhs: Expr,
}

impl Identity {
    pub fn same_shape(&self, other: &Identity) -> bool {
        self.lhs.same_shape(&other.lhs) && self.rhs.same_shape(&other.rhs)
    }
}
