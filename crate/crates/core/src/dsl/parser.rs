//! Recursive-descent parser.
//!
//! ```text
//! identity := expr "==" expr
//! expr     := term (("+" | "-") term)*
//! term     := factor (("*" | "/") factor)*
//! factor   := "-"? atom ("^" atom)?
//! atom     := INT | INT "/" INT | NAME | "(" expr ")" | NAME "(" args ")"
//!           | "sum" "(" NAME "=" expr ".." expr "," expr ")"
//! ```
//!
//! `INT "/" INT` is read as a single rational literal only at the start of a
//! term and only when no `^` follows, so `a/2/3` stays `(a/2)/3` and
//! `1/2^k` stays `1/(2^k)`.

use num_traits::Zero;

use super::ast::{Builtin, Expr, ExprKind, Identity, Span};
use super::diag::Diagnostic;
use super::lexer::{lex, Tok, Token};

const MAX_DEPTH: usize = 200;

type PResult<T> = Result<T, Diagnostic>;

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    depth: usize,
}

pub fn parse_identity(src: &str) -> Result<Identity, Vec<Diagnostic>> {
    let mut p = Parser::new(src)?;
    let lhs = p.expr().map_err(|d| vec![d])?;
    if p.peek() != &Tok::EqEq {
        let t = p.cur();
        let msg = if t.tok == Tok::Eof {
            "expected '==' between the two sides of an identity".to_string()
        } else {
            format!("expected '==', found {}", t.tok.describe())
        };
        return Err(vec![Diagnostic::error(msg, t.span)]);
    }
    p.bump();
    let rhs = p.expr().map_err(|d| vec![d])?;
    p.finish().map_err(|d| vec![d])?;
    Ok(Identity { lhs, rhs })
}

pub fn parse_expr(src: &str) -> Result<Expr, Vec<Diagnostic>> {
    let mut p = Parser::new(src)?;
    let e = p.expr().map_err(|d| vec![d])?;
    p.finish().map_err(|d| vec![d])?;
    Ok(e)
}

impl Parser {
    fn new(src: &str) -> Result<Self, Vec<Diagnostic>> {
        let toks = lex(src).map_err(|d| vec![d])?;
        Ok(Parser { toks, pos: 0, depth: 0 })
    }

    fn cur(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek(&self) -> &Tok {
        &self.cur().tok
    }

    fn peek_at(&self, ahead: usize) -> &Tok {
        let i = (self.pos + ahead).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> PResult<Token> {
        if *self.peek() == want {
            Ok(self.bump())
        } else {
            let t = self.cur();
            Err(Diagnostic::error(format!("expected {what}, found {}", t.tok.describe()), t.span))
        }
    }

    fn finish(&mut self) -> PResult<()> {
        match self.peek() {
            Tok::Eof => Ok(()),
            Tok::RParen => Err(Diagnostic::error("unmatched ')'", self.cur().span)),
            other => Err(Diagnostic::error(
                format!("unexpected {} after complete expression", other.describe()),
                self.cur().span,
            )),
        }
    }

    fn enter(&mut self) -> PResult<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(Diagnostic::error("expression nested too deeply", self.cur().span));
        }
        Ok(())
    }

    fn expr(&mut self) -> PResult<Expr> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            let ctor: fn(Box<Expr>, Box<Expr>) -> ExprKind = match self.peek() {
                Tok::Plus => ExprKind::Add,
                Tok::Minus => ExprKind::Sub,
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            let span = lhs.span.to(rhs.span);
            lhs = Expr::new(ctor(Box::new(lhs), Box::new(rhs)), span);
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.factor(true)?;
        loop {
            let ctor: fn(Box<Expr>, Box<Expr>) -> ExprKind = match self.peek() {
                Tok::Star => ExprKind::Mul,
                Tok::Slash => ExprKind::Div,
                _ => break,
            };
            self.bump();
            let rhs = self.factor(false)?;
            let span = lhs.span.to(rhs.span);
            lhs = Expr::new(ctor(Box::new(lhs), Box::new(rhs)), span);
        }
        Ok(lhs)
    }

    fn factor(&mut self, term_start: bool) -> PResult<Expr> {
        if *self.peek() == Tok::Minus {
            let minus = self.bump().span;
            if *self.peek() == Tok::Minus {
                return Err(Diagnostic::error("repeated unary '-'", self.cur().span)
                    .with_hint("parenthesize the inner negation: -(-a)"));
            }
            let inner = self.power(term_start)?;
            let span = minus.to(inner.span);
            return Ok(Expr::new(ExprKind::Neg(Box::new(inner)), span));
        }
        self.power(term_start)
    }

    fn power(&mut self, term_start: bool) -> PResult<Expr> {
        let base = self.atom(term_start)?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        if *self.peek() == Tok::Minus {
            return Err(Diagnostic::error("exponent must be an atom", self.cur().span)
                .with_hint("parenthesize a negative exponent: x^(-1)"));
        }
        let exp = self.atom(false)?;
        if *self.peek() == Tok::Caret {
            return Err(Diagnostic::error("'^' is not associative", self.cur().span)
                .with_hint("add parentheses: (a^b)^c or a^(b^c)"));
        }
        let span = base.span.to(exp.span);
        Ok(Expr::new(ExprKind::Pow(Box::new(base), Box::new(exp)), span))
    }

    fn atom(&mut self, term_start: bool) -> PResult<Expr> {
        self.enter()?;
        let e = self.atom_inner(term_start)?;
        self.depth -= 1;
        Ok(e)
    }

    fn atom_inner(&mut self, term_start: bool) -> PResult<Expr> {
        let t = self.cur().clone();
        match t.tok {
            Tok::Int(v) => {
                self.bump();
                let literal_fraction = term_start
                    && *self.peek() == Tok::Slash
                    && matches!(self.peek_at(1), Tok::Int(_))
                    && *self.peek_at(2) != Tok::Caret;
                if !literal_fraction {
                    return Ok(Expr::new(ExprKind::Int(v), t.span));
                }
                self.bump();
                let den_tok = self.bump();
                let Tok::Int(den) = den_tok.tok else { unreachable!("checked by lookahead") };
                let span = t.span.to(den_tok.span);
                if den.is_zero() {
                    return Err(Diagnostic::error("zero denominator in rational literal", span));
                }
                Ok(Expr::new(ExprKind::Rat(v, den), span))
            }
            Tok::Name(ref name) if name == "sum" => self.sum(t.span),
            Tok::Name(name) => {
                self.bump();
                if *self.peek() != Tok::LParen {
                    return Ok(Expr::new(ExprKind::Var(name), t.span));
                }
                let Some(builtin) = Builtin::from_name(&name) else {
                    let known: Vec<_> = Builtin::ALL.iter().map(|b| b.name()).collect();
                    return Err(Diagnostic::error(format!("unknown builtin '{name}'"), t.span)
                        .with_hint(format!("available: {}, sum", known.join(", "))));
                };
                let open = self.bump().span;
                let mut args = vec![self.expr()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    args.push(self.expr()?);
                }
                let close = self.close(open)?;
                let span = t.span.to(close);
                if args.len() != builtin.arity() {
                    return Err(Diagnostic::error(
                        format!("{} takes {} argument(s), found {}", builtin.name(), builtin.arity(), args.len()),
                        span,
                    ));
                }
                Ok(Expr::new(ExprKind::Call(builtin, args), span))
            }
            Tok::LParen => {
                let open = self.bump().span;
                let mut inner = self.expr()?;
                let close = self.close(open)?;
                inner.span = open.to(close);
                Ok(inner)
            }
            ref other => {
                Err(Diagnostic::error(format!("expected an expression, found {}", other.describe()), t.span))
            }
        }
    }

    fn close(&mut self, open: Span) -> PResult<Span> {
        match self.peek() {
            Tok::RParen => Ok(self.bump().span),
            Tok::Eof => Err(Diagnostic::error("unclosed '('", self.cur().span)
                .with_hint(format!("'(' opened at offset {}", open.start))),
            other => Err(Diagnostic::error(format!("expected ')', found {}", other.describe()), self.cur().span)
                .with_hint(format!("'(' opened at offset {}", open.start))),
        }
    }

    fn sum(&mut self, kw: Span) -> PResult<Expr> {
        self.bump();
        if *self.peek() != Tok::LParen {
            return Err(Diagnostic::error("expected '(' after 'sum'", self.cur().span)
                .with_hint("write sum(k=lo..hi, body)"));
        }
        let open = self.bump().span;
        let binder_tok = self.cur().clone();
        let binder = match binder_tok.tok {
            Tok::Name(ref n) if n != "sum" && Builtin::from_name(n).is_none() => n.clone(),
            ref other => {
                return Err(Diagnostic::error(
                    format!("expected a summation variable, found {}", other.describe()),
                    binder_tok.span,
                ))
            }
        };
        self.bump();
        self.expect(Tok::Assign, "'='")?;
        let lo = self.expr()?;
        if *self.peek() != Tok::DotDot {
            return Err(Diagnostic::error(
                format!("malformed range: expected '..', found {}", self.peek().describe()),
                self.cur().span,
            )
            .with_hint("write sum(k=lo..hi, body)"));
        }
        self.bump();
        let hi = self.expr()?;
        if *self.peek() != Tok::Comma {
            return Err(Diagnostic::error(
                format!("malformed range: expected ',' before the summand, found {}", self.peek().describe()),
                self.cur().span,
            ));
        }
        self.bump();
        let body = self.expr()?;
        let close = self.close(open)?;
        Ok(Expr::new(
            ExprKind::Sum {
                binder,
                binder_span: binder_tok.span,
                lo: Box::new(lo),
                hi: Box::new(hi),
                body: Box::new(body),
            },
            kw.to(close),
        ))
    }
}
