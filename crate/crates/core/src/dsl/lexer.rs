use num_bigint::BigInt;

use super::ast::Span;
use super::diag::Diagnostic;

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Assign,
    EqEq,
    DotDot,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Int(v) => format!("integer {v}"),
            Tok::Name(n) => format!("name '{n}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Assign => "'='".into(),
            Tok::EqEq => "'=='".into(),
            Tok::DotDot => "'..'".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

pub fn lex(src: &str) -> Result<Vec<Token>, Diagnostic> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        let single = |tok| Token { tok, span: Span::new(start, start + 1) };
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = src[start..i].parse().expect("ascii digits");
                out.push(Token { tok: Tok::Int(v), span: Span::new(start, i) });
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token { tok: Tok::Name(src[start..i].to_string()), span: Span::new(start, i) });
                continue;
            }
            b'+' => out.push(single(Tok::Plus)),
            b'-' => out.push(single(Tok::Minus)),
            b'*' => out.push(single(Tok::Star)),
            b'/' => out.push(single(Tok::Slash)),
            b'^' => out.push(single(Tok::Caret)),
            b'(' => out.push(single(Tok::LParen)),
            b')' => out.push(single(Tok::RParen)),
            b',' => out.push(single(Tok::Comma)),
            b'=' if bytes.get(i + 1) == Some(&b'=') => {
                out.push(Token { tok: Tok::EqEq, span: Span::new(start, start + 2) });
                i += 2;
                continue;
            }
            b'=' => out.push(single(Tok::Assign)),
            b'.' if bytes.get(i + 1) == Some(&b'.') => {
                out.push(Token { tok: Tok::DotDot, span: Span::new(start, start + 2) });
                i += 2;
                continue;
            }
            b'.' => {
                return Err(Diagnostic::error("stray '.'", Span::new(start, start + 1))
                    .with_hint("ranges are written 'lo..hi'; decimal literals are not supported"));
            }
            _ => {
                let ch = src[start..].chars().next().expect("in bounds");
                let span = Span::new(start, start + ch.len_utf8());
                return Err(Diagnostic::error(format!("unexpected character {ch:?}"), span));
            }
        }
        i += 1;
    }
    out.push(Token { tok: Tok::Eof, span: Span::new(src.len(), src.len()) });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<Tok> {
        lex(src).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn ranges_and_equality() {
        assert_eq!(
            kinds("1..n==k"),
            vec![
                Tok::Int(1.into()),
                Tok::DotDot,
                Tok::Name("n".into()),
                Tok::EqEq,
                Tok::Name("k".into()),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn spans_are_bytes() {
        let toks = lex("  H(12)").unwrap();
        assert_eq!(toks[0].span, Span::new(2, 3));
        assert_eq!(toks[2].span, Span::new(4, 6));
        assert_eq!(toks.last().unwrap().span, Span::new(7, 7));
    }

    #[test]
    fn rejects_unknown_characters() {
        let d = lex("n % 2").unwrap_err();
        assert_eq!(d.span, Span::new(2, 3));
        assert!(lex("1.5").is_err());
    }
}
