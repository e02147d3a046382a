use thiserror::Error;

use crate::exact::{ArithError, BiFrac, RatFunc, Rational};
use crate::special::{binom_int, binom_shift, psi1_diff, psi_diff, Harmonics};

use super::ast::{Builtin, Expr, ExprKind, Span};
use super::diag::Diagnostic;

const MAX_SUM_TERMS: i64 = 1_000_000;
const MAX_EXPONENT: i64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message}")]
pub struct EvalError {
    pub message: String,
    pub span: Span,
}

impl EvalError {
    fn new(message: impl Into<String>, span: Span) -> Self {
        EvalError { message: message.into(), span }
    }

    fn arith(err: ArithError, span: Span) -> Self {
        EvalError::new(err.to_string(), span)
    }
}

impl From<EvalError> for Diagnostic {
    fn from(e: EvalError) -> Self {
        Diagnostic::error(e.message, e.span)
    }
}

/// An evaluated node, kept in the smallest field that holds it.
#[derive(Clone, Debug)]
pub enum Value {
    Q(Rational),
    S(RatFunc),
    SX(BiFrac),
}

impl Value {
    pub fn into_bifrac(self) -> BiFrac {
        match self {
            Value::Q(q) => BiFrac::constant(q),
            Value::S(f) => BiFrac::from_ratfunc(&f),
            Value::SX(b) => b,
        }
    }

    fn level(&self) -> u8 {
        match self {
            Value::Q(_) => 0,
            Value::S(_) => 1,
            Value::SX(_) => 2,
        }
    }

    fn lift(self, level: u8) -> Value {
        match (self, level) {
            (Value::Q(q), 1) => Value::S(RatFunc::constant(q)),
            (v, 2) => Value::SX(v.into_bifrac()),
            (v, _) => v,
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Value::Q(q) => q.is_zero(),
            Value::S(f) => f.is_zero(),
            Value::SX(b) => b.is_zero(),
        }
    }
}

fn binary(a: Value, b: Value, op: Op) -> Result<Value, ArithError> {
    let level = a.level().max(b.level());
    Ok(match (a.lift(level), b.lift(level)) {
        (Value::Q(a), Value::Q(b)) => Value::Q(match op {
            Op::Add => a + b,
            Op::Sub => a - b,
            Op::Mul => a * b,
            Op::Div => a.checked_div(&b)?,
        }),
        (Value::S(a), Value::S(b)) => Value::S(match op {
            Op::Add => &a + &b,
            Op::Sub => &a - &b,
            Op::Mul => &a * &b,
            Op::Div => a.checked_div(&b)?,
        }),
        (Value::SX(a), Value::SX(b)) => Value::SX(match op {
            Op::Add => &a + &b,
            Op::Sub => &a - &b,
            Op::Mul => &a * &b,
            Op::Div => a.checked_div(&b)?,
        }),
        _ => unreachable!("operands lifted to a common level"),
    })
}

#[derive(Clone, Copy)]
enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

/// Evaluates a checked expression at a concrete `n`.
pub fn eval(e: &Expr, n: u64) -> Result<BiFrac, EvalError> {
    eval_with(e, n, Harmonics::default()).map(Value::into_bifrac)
}

pub fn eval_with(e: &Expr, n: u64, h: Harmonics<'_>) -> Result<Value, EvalError> {
    let n = i64::try_from(n).map_err(|_| EvalError::new("n out of range", e.span))?;
    Evaluator { h, env: vec![("n".to_string(), n)] }.eval(e)
}

struct Evaluator<'a> {
    h: Harmonics<'a>,
    /// Integer bindings, innermost last; `n` sits at the bottom.
    env: Vec<(String, i64)>,
}

impl Evaluator<'_> {
    fn lookup(&self, name: &str) -> Option<i64> {
        self.env.iter().rev().find(|(k, _)| k == name).map(|(_, v)| *v)
    }

    fn int(&mut self, e: &Expr, what: &str) -> Result<i64, EvalError> {
        match self.eval(e)? {
            Value::Q(q) if q.is_integer() => {
                q.to_i64().ok_or_else(|| EvalError::new(format!("{what}: {q} is out of range"), e.span))
            }
            Value::Q(q) => Err(EvalError::new(format!("{what}: expected an integer, got {q}"), e.span)),
            _ => Err(EvalError::new(format!("{what}: expected an integer"), e.span)),
        }
    }

    fn nonneg(&mut self, e: &Expr, what: &str) -> Result<u64, EvalError> {
        let v = self.int(e, what)?;
        u64::try_from(v).map_err(|_| EvalError::new(format!("{what}: argument {v} is negative"), e.span))
    }

    fn eval(&mut self, e: &Expr) -> Result<Value, EvalError> {
        let arith = |err| EvalError::arith(err, e.span);
        match &e.kind {
            ExprKind::Int(v) => Ok(Value::Q(Rational::from_int(v.clone()))),
            ExprKind::Rat(p, q) => Rational::try_new(p.clone(), q.clone()).map(Value::Q).map_err(arith),
            ExprKind::Var(name) => match self.lookup(name) {
                Some(v) => Ok(Value::Q(Rational::from(v))),
                None => match name.as_str() {
                    "s" => Ok(Value::S(RatFunc::s())),
                    "x" => Ok(Value::SX(BiFrac::x())),
                    _ => Err(EvalError::new(format!("unbound variable '{name}'"), e.span)),
                },
            },
            ExprKind::Neg(a) => Ok(match self.eval(a)? {
                Value::Q(q) => Value::Q(-q),
                Value::S(f) => Value::S(-f),
                Value::SX(b) => Value::SX(-b),
            }),
            ExprKind::Add(a, b) => binary(self.eval(a)?, self.eval(b)?, Op::Add).map_err(arith),
            ExprKind::Sub(a, b) => binary(self.eval(a)?, self.eval(b)?, Op::Sub).map_err(arith),
            ExprKind::Mul(a, b) => binary(self.eval(a)?, self.eval(b)?, Op::Mul).map_err(arith),
            ExprKind::Div(a, b) => {
                let (num, den) = (self.eval(a)?, self.eval(b)?);
                if den.is_zero() {
                    return Err(EvalError::new("division by an identically zero denominator", b.span));
                }
                binary(num, den, Op::Div).map_err(arith)
            }
            ExprKind::Pow(b, x) => {
                let base = self.eval(b)?;
                let k = self.int(x, "exponent")?;
                if k.abs() > MAX_EXPONENT {
                    return Err(EvalError::new(format!("exponent {k} is too large"), x.span));
                }
                if k < 0 && base.is_zero() {
                    return Err(EvalError::new("zero raised to a negative power", e.span));
                }
                Ok(match base {
                    Value::Q(q) => Value::Q(q.pow(k).map_err(arith)?),
                    Value::S(f) => Value::S(f.pow(k).map_err(arith)?),
                    Value::SX(v) => Value::SX(v.pow(k).map_err(arith)?),
                })
            }
            ExprKind::Sum { binder, lo, hi, body, .. } => {
                let lo_v = self.int(lo, "sum lower bound")?;
                let hi_v = self.int(hi, "sum upper bound")?;
                if hi_v.saturating_sub(lo_v) >= MAX_SUM_TERMS {
                    return Err(EvalError::new(format!("sum over {lo_v}..{hi_v} is too long"), e.span));
                }
                let mut acc = Value::Q(Rational::zero());
                for j in lo_v..=hi_v {
                    self.env.push((binder.clone(), j));
                    let term = self.eval(body);
                    self.env.pop();
                    acc = binary(acc, term?, Op::Add).map_err(arith)?;
                }
                Ok(acc)
            }
            ExprKind::Call(f, args) => self.call(*f, args, e.span),
        }
    }

    fn call(&mut self, f: Builtin, args: &[Expr], span: Span) -> Result<Value, EvalError> {
        let name = f.name();
        match f {
            Builtin::H => {
                let m = self.nonneg(&args[0], name)?;
                Ok(Value::Q(self.h.h(m)))
            }
            Builtin::Hr => {
                let m = self.nonneg(&args[0], name)?;
                let r = self.nonneg(&args[1], name)?;
                let r = u32::try_from(r)
                    .ok()
                    .filter(|&r| r >= 1)
                    .ok_or_else(|| EvalError::new(format!("Hr: order {r} must be a positive integer"), args[1].span))?;
                Ok(Value::Q(self.h.hr(m, r)))
            }
            Builtin::C => {
                let top = self.nonneg(&args[0], name)?;
                let k = self.int(&args[1], name)?;
                Ok(Value::Q(binom_int(top, k)))
            }
            Builtin::CS => {
                let a = self.int(&args[0], name)?;
                let k = self.int(&args[1], name)?;
                if k < 0 {
                    return Ok(Value::Q(Rational::zero()));
                }
                let k = u32::try_from(k).map_err(|_| EvalError::new("CS: order too large", args[1].span))?;
                Ok(Value::S(binom_shift(a, k)))
            }
            Builtin::Psid | Builtin::Psi1d => {
                let a = self.nonneg(&args[0], name)?;
                let b = self.nonneg(&args[1], name)?;
                let diff = if f == Builtin::Psid { psi_diff } else { psi1_diff };
                let v = if a >= b {
                    diff(a, b)
                } else {
                    diff(b, a).map(|d| -d)
                };
                v.map(Value::S).map_err(|err| EvalError::new(err.to_string(), span))
            }
        }
    }
}
