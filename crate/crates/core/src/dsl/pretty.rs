//! Source rendering that reparses to the same tree.

use std::fmt;

use super::ast::{Expr, ExprKind, Identity};

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&expr(self))
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} == {}", self.lhs, self.rhs)
    }
}

fn expr(e: &Expr) -> String {
    match &e.kind {
        ExprKind::Add(a, b) => format!("{} + {}", expr(a), term(b, true)),
        ExprKind::Sub(a, b) => format!("{} - {}", expr(a), term(b, true)),
        _ => term(e, true),
    }
}

fn is_int_text(s: &str) -> bool {
    let digits = s.strip_prefix('-').unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

fn term(e: &Expr, start: bool) -> String {
    match &e.kind {
        ExprKind::Mul(a, b) => format!("{}*{}", term(a, start), factor(b, false)),
        ExprKind::Div(a, b) => {
            let mut left = term(a, start);
            let right = factor(b, false);
            // `2/3` at the start of a term would reparse as one literal.
            if start && is_int_text(&left) && right.starts_with(|c: char| c.is_ascii_digit()) {
                left = format!("({left})");
            }
            format!("{left}/{right}")
        }
        ExprKind::Add(..) | ExprKind::Sub(..) => format!("({})", expr(e)),
        _ => factor(e, start),
    }
}

fn factor(e: &Expr, start: bool) -> String {
    match &e.kind {
        ExprKind::Neg(a) => match a.kind {
            ExprKind::Neg(_) => format!("-({})", expr(a)),
            _ => format!("-{}", power(a, start)),
        },
        _ => power(e, start),
    }
}

fn power(e: &Expr, start: bool) -> String {
    match &e.kind {
        ExprKind::Pow(b, x) => format!("{}^{}", atom(b, false), atom(x, false)),
        _ => atom(e, start),
    }
}

fn atom(e: &Expr, start: bool) -> String {
    match &e.kind {
        ExprKind::Int(v) => v.to_string(),
        ExprKind::Rat(p, q) if start => format!("{p}/{q}"),
        ExprKind::Rat(p, q) => format!("({p}/{q})"),
        ExprKind::Var(name) => name.clone(),
        ExprKind::Call(b, args) => {
            let args: Vec<_> = args.iter().map(expr).collect();
            format!("{}({})", b.name(), args.join(", "))
        }
        ExprKind::Sum { binder, lo, hi, body, .. } => {
            format!("sum({binder}={}..{}, {})", expr(lo), expr(hi), expr(body))
        }
        _ => format!("({})", expr(e)),
    }
}
