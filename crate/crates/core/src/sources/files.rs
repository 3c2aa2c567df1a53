use serde::{Deserialize, Serialize};

use super::TermList;
use crate::arith::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// Parses an OEIS-style b-file: `index value` per line, `#` comments.
pub fn parse_bfile(text: &str) -> Result<TermList> {
    let mut offset = None;
    let mut terms = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse { line: i + 1, message };
        let mut fields = line.split_whitespace();
        let (Some(idx), Some(val), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(err(format!("expected `index value`, got `{line}`")));
        };
        let idx: usize = idx.parse().map_err(|_| err(format!("bad index `{idx}`")))?;
        let val: num_bigint::BigInt = val.parse().map_err(|_| err(format!("bad integer `{val}`")))?;
        let start = *offset.get_or_insert(idx);
        if idx != start + terms.len() {
            return Err(err(format!(
                "index {idx} breaks the run; expected {}",
                start + terms.len()
            )));
        }
        terms.push(Rational::from_integer(val));
    }
    match offset {
        Some(offset) => Ok(TermList { offset, terms }),
        None => Err(Error::Parse {
            line: 0,
            message: "no terms found".into(),
        }),
    }
}

#[derive(Serialize, Deserialize)]
struct TermsDoc {
    #[serde(default)]
    offset: usize,
    terms: Vec<String>,
}

/// Parses either one rational per line or `{"offset": n, "terms": ["p/q", ...]}`.
pub fn parse_terms_file(text: &str) -> Result<TermList> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let doc: TermsDoc = serde_json::from_str(trimmed).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        let terms = doc
            .terms
            .iter()
            .enumerate()
            .map(|(i, t)| {
                parse_rational(t).map_err(|_| Error::Parse {
                    line: 0,
                    message: format!("term {i}: not a rational number: `{t}`"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        return non_empty(TermList {
            offset: doc.offset,
            terms,
        });
    }
    let mut terms = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let q = parse_rational(line).map_err(|_| Error::Parse {
            line: i + 1,
            message: format!("not a rational number: `{line}`"),
        })?;
        terms.push(q);
    }
    non_empty(TermList { offset: 0, terms })
}

fn non_empty(t: TermList) -> Result<TermList> {
    if t.terms.is_empty() {
        return Err(Error::Parse {
            line: 0,
            message: "no terms found".into(),
        });
    }
    Ok(t)
}

/// Writes `index value` lines. Fails on non-integral terms.
pub fn emit_bfile(t: &TermList) -> Result<String> {
    let mut out = String::new();
    for (i, q) in t.terms.iter().enumerate() {
        if !q.is_integer() {
            return Err(Error::InvalidInput(format!(
                "term {} = {} is not an integer",
                t.offset + i,
                format_rational(q)
            )));
        }
        out.push_str(&format!("{} {}\n", t.offset + i, q.numer()));
    }
    Ok(out)
}

/// One rational per line. The offset is not representable here; see [`emit_terms_json`].
pub fn emit_terms_lines(t: &TermList) -> String {
    t.terms.iter().map(|q| format_rational(q) + "\n").collect()
}

pub fn emit_terms_json(t: &TermList) -> String {
    let doc = TermsDoc {
        offset: t.offset,
        terms: t.terms.iter().map(format_rational).collect(),
    };
    serde_json::to_string(&doc).expect("plain strings serialize")
}
