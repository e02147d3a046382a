use super::ast::{Builtin, Dom, Expr, ExprKind, Identity};
use super::diag::Diagnostic;

/// The free symbols a program may mention.
pub const FREE_SYMBOLS: [(&str, Dom); 3] = [("n", Dom::Int), ("s", Dom::RatFuncS), ("x", Dom::BiFrac)];

/// Annotates every node with its value domain, or reports every violation
/// found.
pub fn check(mut e: Expr) -> Result<Expr, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    annotate(&mut e, &mut Vec::new(), &mut diags);
    if diags.is_empty() {
        Ok(e)
    } else {
        Err(diags)
    }
}

pub fn check_sides(id: Identity) -> Result<Identity, Vec<Diagnostic>> {
    match (check(id.lhs), check(id.rhs)) {
        (Ok(lhs), Ok(rhs)) => Ok(Identity { lhs, rhs }),
        (l, r) => Err(l.err().into_iter().chain(r.err()).flatten().collect()),
    }
}

fn require_int(e: &Expr, what: &str, diags: &mut Vec<Diagnostic>) {
    if let Some(d) = e.dom {
        if d != Dom::Int {
            diags.push(
                Diagnostic::error(format!("{what} requires an integer-valued argument"), e.span)
                    .with_hint(format!("this expression is {d}; integer contexts accept n, summation variables and integer arithmetic on them")),
            );
        }
    }
}

/// Returns the node's domain; `None` marks a subtree that already failed.
fn annotate(e: &mut Expr, scope: &mut Vec<String>, diags: &mut Vec<Diagnostic>) -> Option<Dom> {
    let dom = match &mut e.kind {
        ExprKind::Int(_) => Some(Dom::Int),
        ExprKind::Rat(..) => Some(Dom::Rational),
        ExprKind::Var(name) => {
            if scope.iter().any(|b| b == name) {
                Some(Dom::Int)
            } else if let Some((_, d)) = FREE_SYMBOLS.iter().find(|(sym, _)| sym == name) {
                Some(*d)
            } else {
                diags.push(
                    Diagnostic::error(format!("unbound variable '{name}'"), e.span)
                        .with_hint("free symbols are n, s and x; other names must be bound by sum"),
                );
                None
            }
        }
        ExprKind::Neg(a) => annotate(a, scope, diags),
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) => {
            let (da, db) = (annotate(a, scope, diags), annotate(b, scope, diags));
            Some(da?.max(db?))
        }
        ExprKind::Div(a, b) => {
            let (da, db) = (annotate(a, scope, diags), annotate(b, scope, diags));
            Some(da?.max(db?).max(Dom::Rational))
        }
        ExprKind::Pow(b, x) => {
            let db = annotate(b, scope, diags);
            if annotate(x, scope, diags).is_some() {
                if x.dom != Some(Dom::Int) {
                    diags.push(
                        Diagnostic::error("non-integer exponent", x.span)
                            .with_hint("exponents must be integer-valued expressions in n and summation variables"),
                    );
                }
            }
            db
        }
        ExprKind::Sum { binder, lo, hi, body, .. } => {
            let (dl, dh) = (annotate(lo, scope, diags), annotate(hi, scope, diags));
            if dl.is_some() {
                require_int(lo, "sum lower bound", diags);
            }
            if dh.is_some() {
                require_int(hi, "sum upper bound", diags);
            }
            scope.push(binder.clone());
            let d = annotate(body, scope, diags);
            scope.pop();
            d
        }
        ExprKind::Call(f, args) => {
            let f = *f;
            let mut ok = true;
            for a in args.iter_mut() {
                if annotate(a, scope, diags).is_some() {
                    require_int(a, f.name(), diags);
                } else {
                    ok = false;
                }
            }
            ok.then_some(match f {
                Builtin::H | Builtin::Hr => Dom::Rational,
                Builtin::C => Dom::Int,
                Builtin::CS | Builtin::Psid | Builtin::Psi1d => Dom::RatFuncS,
            })
        }
    };
    e.dom = dom;
    dom
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::ast::Span;
    use crate::dsl::parser::parse_expr;

    fn checked(src: &str) -> Result<Expr, Vec<Diagnostic>> {
        check(parse_expr(src).unwrap())
    }

    #[test]
    fn domains() {
        assert_eq!(checked("sum(k=0..n-1, CS(k,k)/(k+1))").unwrap().dom, Some(Dom::RatFuncS));
        assert_eq!(checked("C(n, 2)*n").unwrap().dom, Some(Dom::Int));
        assert_eq!(checked("H(n)").unwrap().dom, Some(Dom::Rational));
        assert_eq!(checked("n/2").unwrap().dom, Some(Dom::Rational));
        assert_eq!(checked("(x/(x+1))^(k+1)").unwrap_err()[0].message, "unbound variable 'k'");
        assert_eq!(checked("sum(k=1..n, (x/(x+1))^(k+1))").unwrap().dom, Some(Dom::BiFrac));
    }

    #[test]
    fn integer_contexts() {
        let d = checked("H(x)").unwrap_err();
        assert_eq!(d[0].message, "H requires an integer-valued argument");
        assert_eq!(d[0].span, Span::new(2, 3));
        assert_eq!(checked("x^s").unwrap_err()[0].message, "non-integer exponent");
        assert!(checked("sum(k=1..n/2, k)").is_err());
        let d = checked("PSID(n+1, n-k+1)").unwrap_err();
        assert_eq!((d[0].message.as_str(), d[0].span), ("unbound variable 'k'", Span::new(12, 13)));
    }

    #[test]
    fn binders_shadow() {
        assert_eq!(checked("sum(s=1..n, s)").unwrap().dom, Some(Dom::Int));
        assert_eq!(checked("sum(k=1..n, sum(k=1..k, k))").unwrap().dom, Some(Dom::Int));
    }

    #[test]
    fn collects_every_problem() {
        assert_eq!(checked("H(x) + y + C(s, n)").unwrap_err().len(), 3);
    }
}
