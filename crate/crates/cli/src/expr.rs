//! Divisor expressions: `7H - 2E1 - E2`, `1/2H + 3/2 E1`, `2*L1 + D`, or a raw
//! coordinate vector `[7, -2, 1/2]`.

use okounkov_core::rat::parse_rat;
use okounkov_core::{DivClass, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError(msg.into()))
}

/// Parses `text` against the given basis labels.
pub fn parse_divisor(text: &str, labels: &[String]) -> Result<DivClass, ParseError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return err("empty divisor expression");
    }
    if let Some(inner) = compact.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| ParseError(format!("unterminated vector {text:?}")))?;
        let coords = if inner.is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|c| parse_rat(c).ok_or_else(|| ParseError(format!("bad coordinate {c:?}"))))
                .collect::<Result<Vec<_>, _>>()?
        };
        if coords.len() != labels.len() {
            return err(format!(
                "vector has {} coordinates, surface has rank {}",
                coords.len(),
                labels.len()
            ));
        }
        return Ok(DivClass::from_rats(&coords));
    }
    if compact == "0" {
        return Ok(DivClass::zero(labels.len()));
    }
    let mut coords = vec![Rat::from_integer(0.into()); labels.len()];
    for (negative, term) in split_terms(&compact)? {
        let (coef, label) = split_coefficient(&term)?;
        let idx = labels.iter().position(|l| l == label).ok_or_else(|| {
            ParseError(format!(
                "unknown label {label:?} in {text:?}; labels are {}",
                labels.join(", ")
            ))
        })?;
        coords[idx] += if negative { -coef } else { coef };
    }
    Ok(DivClass::from_rats(&coords))
}

fn split_terms(s: &str) -> Result<Vec<(bool, String)>, ParseError> {
    let mut out = Vec::new();
    let mut negative = false;
    let mut cur = String::new();
    for (i, ch) in s.char_indices() {
        if ch == '+' || ch == '-' {
            if cur.is_empty() && i > 0 {
                return err(format!("dangling sign in {s:?}"));
            }
            if !cur.is_empty() {
                out.push((negative, std::mem::take(&mut cur)));
            }
            negative = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return err(format!("expression {s:?} ends with a sign"));
    }
    out.push((negative, cur));
    Ok(out)
}

fn split_coefficient(term: &str) -> Result<(Rat, &str), ParseError> {
    let digits_end = |s: &str| s.find(|c: char| !c.is_ascii_digit()).unwrap_or(s.len());
    let n = digits_end(term);
    if n == 0 {
        return Ok((Rat::from_integer(1.into()), term.trim_start_matches('*')));
    }
    let mut end = n;
    if term[n..].starts_with('/') {
        let d = digits_end(&term[n + 1..]);
        if d == 0 {
            return err(format!("bad rational coefficient in {term:?}"));
        }
        end = n + 1 + d;
    }
    let coef = parse_rat(&term[..end])
        .ok_or_else(|| ParseError(format!("bad rational coefficient in {term:?}")))?;
    let label = term[end..].strip_prefix('*').unwrap_or(&term[end..]);
    if label.is_empty() {
        return err(format!("term {term:?} has no label"));
    }
    Ok((coef, label))
}
