//! Text forms used on the command line and in JSON documents.
//!
//! Type A indecomposables are written `S2`, `P1`, `I2` or `[a,b]`, with an
//! optional shift suffix such as `I2[-1]`. Objects are `+`-separated sums,
//! optionally with a multiplicity prefix (`2*S1`). Decompositions are written
//! `(P1,S2|I2)`: blocks separated by `|`, generators within a block by `,`.

use crate::error::{Error, Result};
use crate::typea::{DerivedObject, Interval};

/// Splits on `sep` at bracket depth zero.
pub fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' | '(' | '{' => depth += 1,
            ']' | ')' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_usize(s: &str, what: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::invalid(format!("bad {what} {s:?}")))
}

/// Parses an interval token and an optional shift suffix.
pub fn parse_shifted_interval(n: usize, tok: &str) -> Result<(Interval, i32)> {
    let tok = tok.trim();
    if tok.is_empty() {
        return Err(Error::invalid("empty object token"));
    }
    let (head, rest) = if let Some(stripped) = tok.strip_prefix('[') {
        let close = stripped
            .find(']')
            .ok_or_else(|| Error::invalid(format!("unclosed bracket in {tok:?}")))?;
        let inner = &stripped[..close];
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 2 {
            return Err(Error::invalid(format!("interval {tok:?} needs two endpoints")));
        }
        let a = parse_usize(parts[0], "endpoint")?;
        let b = parse_usize(parts[1], "endpoint")?;
        (Interval::checked(n, a, b)?, &stripped[close + 1..])
    } else {
        let letter = tok.chars().next().expect("nonempty");
        let digits_end = tok[1..]
            .find(|c: char| !c.is_ascii_digit())
            .map_or(tok.len(), |p| p + 1);
        let i = parse_usize(&tok[1..digits_end], "vertex index")?;
        if i == 0 || i > n {
            return Err(Error::invalid(format!("vertex {i} out of range for A{n}")));
        }
        let iv = match letter {
            'S' => Interval::simple(i),
            'P' => Interval::projective(n, i),
            'I' => Interval::injective(i),
            _ => return Err(Error::invalid(format!("unknown object token {tok:?}"))),
        };
        (iv, &tok[digits_end..])
    };
    let rest = rest.trim();
    let shift = if rest.is_empty() {
        0
    } else {
        let inner = rest
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::invalid(format!("bad shift suffix in {tok:?}")))?;
        inner
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("bad shift in {tok:?}")))?
    };
    Ok((head, shift))
}

pub fn parse_interval(n: usize, tok: &str) -> Result<Interval> {
    match parse_shifted_interval(n, tok)? {
        (iv, 0) => Ok(iv),
        _ => Err(Error::invalid(format!("{tok:?}: a shift is not allowed here"))),
    }
}

/// Parses `I2[-1]+2*S1` or `0`.
pub fn parse_object(n: usize, s: &str) -> Result<DerivedObject> {
    let s = s.trim();
    if s == "0" {
        return Ok(DerivedObject::zero());
    }
    let mut obj = DerivedObject::zero();
    for part in split_top(s, '+') {
        let part = part.trim();
        let (mult, tok) = match part.split_once('*') {
            Some((m, t)) => (
                m.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::invalid(format!("bad multiplicity in {part:?}")))?,
                t,
            ),
            None => (1, part),
        };
        let (iv, shift) = parse_shifted_interval(n, tok)?;
        obj.add_term(iv, shift, mult);
    }
    Ok(obj)
}

/// Parses an object given either in token form or as the JSON term list.
pub fn parse_object_any(n: usize, s: &str) -> Result<DerivedObject> {
    let t = s.trim();
    let obj = if t.starts_with('[') && t.contains('{') {
        serde_json::from_str::<DerivedObject>(t)
            .map_err(|e| Error::invalid(format!("object JSON: {e}")))?
    } else {
        parse_object(n, t)?
    };
    obj.validate(n)?;
    Ok(obj)
}

fn strip_parens(s: &str) -> Result<&str> {
    let s = s.trim();
    s.strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::invalid(format!("expected parenthesized list, got {s:?}")))
}

/// Parses `(P1,S2,I2)`.
pub fn parse_sequence(n: usize, s: &str) -> Result<Vec<Interval>> {
    let inner = strip_parens(s)?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top(inner, ',')
        .into_iter()
        .map(|t| parse_interval(n, t))
        .collect()
}

/// Parses `(P1,S2|I2)` into generator lists per block.
pub fn parse_blocks(n: usize, s: &str) -> Result<Vec<Vec<Interval>>> {
    let inner = strip_parens(s)?;
    split_top(inner, '|')
        .into_iter()
        .map(|block| {
            if block.trim().is_empty() {
                return Err(Error::invalid("empty block"));
            }
            split_top(block, ',')
                .into_iter()
                .map(|t| parse_interval(n, t))
                .collect()
        })
        .collect()
}
