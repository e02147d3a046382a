//! Identity corpus files: one `NAME : LHS == RHS` per line, `#` starts a
//! comment, blank lines are ignored.

use std::collections::HashSet;
use std::ops::RangeInclusive;

use crate::catalog::{fan_out, IdentityId, Params, Report, VerifyOptions};

use super::ast::{Identity, Span};
use super::check::check_sides;
use super::diag::Diagnostic;
use super::parser::parse_identity;
use super::{check_cell, EvalError};

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    /// 1-based line number.
    pub line: usize,
    /// Byte offset of the identity text within the file; spans inside
    /// `identity` are relative to it.
    pub offset: usize,
    pub identity: Identity,
}

impl CorpusEntry {
    /// The catalog row this entry restates, for names like `ID-13[m=2]`.
    pub fn catalog_key(&self) -> Option<(IdentityId, Params)> {
        catalog_key(&self.name)
    }
}

pub fn catalog_key(name: &str) -> Option<(IdentityId, Params)> {
    let (tag, params) = match name.split_once('[') {
        Some((tag, rest)) => (tag, rest.strip_suffix(']')?),
        None => (name, ""),
    };
    Some((tag.parse().ok()?, params.parse().ok()?))
}

/// Parses and checks every line, reporting diagnostics with spans into
/// `text`.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, Vec<Diagnostic>> {
    let mut entries = Vec::new();
    let mut diags = Vec::new();
    let mut seen = HashSet::new();
    let mut line_start = 0;
    for (idx, raw) in text.split('\n').enumerate() {
        let start = line_start;
        line_start += raw.len() + 1;
        let content = raw.split('#').next().unwrap_or("").trim_end();
        if content.trim().is_empty() {
            continue;
        }
        let line_span = Span::new(start, start + content.len());
        let Some(colon) = content.find(':') else {
            diags.push(
                Diagnostic::error("expected 'NAME : LHS == RHS'", line_span).with_hint("every identity needs a name"),
            );
            continue;
        };
        let name = content[..colon].trim();
        let name_at = start + content[..colon].find(name).unwrap_or(0);
        if name.is_empty() || name.contains(char::is_whitespace) {
            let span = if name.is_empty() { Span::new(start + colon, start + colon + 1) } else { Span::new(name_at, name_at + name.len()) };
            diags.push(Diagnostic::error("identity names must be a single non-empty word", span));
            continue;
        }
        if !seen.insert(name.to_string()) {
            diags.push(Diagnostic::error(format!("duplicate identity name '{name}'"), Span::new(name_at, name_at + name.len())));
            continue;
        }
        let offset = start + colon + 1;
        let source = &content[colon + 1..];
        match parse_identity(source).and_then(check_sides) {
            Ok(identity) => entries.push(CorpusEntry { name: name.to_string(), line: idx + 1, offset, identity }),
            Err(ds) => diags.extend(ds.into_iter().map(|d| d.shifted(offset))),
        }
    }
    if diags.is_empty() {
        Ok(entries)
    } else {
        Err(diags)
    }
}

/// Checks every entry over `ns`, rows ordered by entry then `n`. Evaluation
/// errors are returned with spans into the corpus text.
pub fn run_corpus(entries: &[CorpusEntry], ns: RangeInclusive<u64>, opts: &VerifyOptions) -> Result<Report, Diagnostic> {
    let cells: Vec<(&CorpusEntry, u64)> = entries.iter().flat_map(|e| ns.clone().map(move |n| (e, n))).collect();
    let h = opts.harmonics();
    let results = fan_out(&cells, opts.workers, |(e, n)| {
        check_cell(&e.name, &e.identity, *n, h).map_err(|err: EvalError| Diagnostic::from(err).shifted(e.offset))
    });
    let rows = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(Report::from_rows(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Variant;

    #[test]
    fn names_map_to_catalog_rows() {
        assert_eq!(catalog_key("ID-5"), Some((IdentityId::Id5, Params::none())));
        assert_eq!(catalog_key("ID-13[m=4]"), Some((IdentityId::Id13, Params::m(4))));
        assert_eq!(catalog_key("INTRO-2[corrected]"), Some((IdentityId::Intro2, Params::variant(Variant::Corrected))));
        assert_eq!(catalog_key("MINE"), None);
    }

    #[test]
    fn parses_lines_and_comments() {
        let text = "# header\n\nA : H(n) == H(n-1) + 1/n  # recurrence\nB: n == n\n";
        let entries = parse_corpus(text).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!((entries[0].name.as_str(), entries[0].line), ("A", 3));
        assert_eq!(entries[1].offset, text.find("B:").unwrap() + 2);
    }

    #[test]
    fn diagnostics_point_into_the_file() {
        let text = "OK : n == n\nBAD : H(n == n\n";
        let d = parse_corpus(text).unwrap_err();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].span.start, text.rfind("== n").unwrap());
        assert!(parse_corpus("A : n == n\nA : n == n").is_err());
        assert!(parse_corpus("no colon here").is_err());
    }

    #[test]
    fn wrong_identity_fails_with_witness() {
        let entries = parse_corpus("WRONG : H(n) == n").unwrap();
        let report = run_corpus(&entries, 1..=3, &VerifyOptions::default()).unwrap();
        let failed: Vec<_> = report.rows.iter().filter(|r| !r.passed).map(|r| r.n).collect();
        assert_eq!(failed, vec![2, 3]);
        assert!(report.rows[1].witness.is_some());
        assert!(!report.all_ok());
    }
}
