//! Parsing of inline or `@path` value sequences and `n` ranges.

use std::fs;

use ordered_float::OrderedFloat;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("token {position} (byte {offset}): cannot parse {token:?} as a number")]
    BadNumber {
        token: String,
        position: usize,
        offset: usize,
    },
    #[error("token {position} (byte {offset}): {token:?} is not finite")]
    NotFinite {
        token: String,
        position: usize,
        offset: usize,
    },
    #[error("cannot read {path}: {reason}")]
    File { path: String, reason: String },
    #[error("bad size list {spec:?}: {reason}")]
    Sizes { spec: String, reason: String },
}

/// Parsed values alongside their source text, so output can echo the input verbatim.
#[derive(Debug, Clone, PartialEq)]
pub struct Values {
    pub tokens: Vec<String>,
    pub values: Vec<OrderedFloat<f64>>,
}

/// Resolves `@path` to file contents; any other argument is used as is.
pub fn read_source(arg: &str) -> Result<String, ParseError> {
    match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| ParseError::File {
            path: path.to_string(),
            reason: e.to_string(),
        }),
        None => Ok(arg.to_string()),
    }
}

/// Splits on commas and whitespace; positions in errors are 1-based token numbers.
pub fn parse_values(text: &str) -> Result<Values, ParseError> {
    let mut tokens = Vec::new();
    let mut values = Vec::new();
    let mut offset = 0;
    for piece in text.split(|c: char| c == ',' || c.is_whitespace()) {
        let start = offset;
        offset += piece.len() + 1;
        if piece.is_empty() {
            continue;
        }
        let position = tokens.len() + 1;
        let v: f64 = piece.parse().map_err(|_| ParseError::BadNumber {
            token: piece.to_string(),
            position,
            offset: start,
        })?;
        if !v.is_finite() {
            return Err(ParseError::NotFinite {
                token: piece.to_string(),
                position,
                offset: start,
            });
        }
        tokens.push(piece.to_string());
        values.push(OrderedFloat(v));
    }
    Ok(Values { tokens, values })
}

/// `5`, `2..10` (inclusive), `2..=10`, or a comma list of those; sorted and deduplicated.
pub fn parse_sizes(spec: &str) -> Result<Vec<usize>, ParseError> {
    let err = |reason: String| ParseError::Sizes {
        spec: spec.to_string(),
        reason,
    };
    let num = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| err(format!("{:?} is not a non-negative integer", s.trim())))
    };
    let mut out = Vec::new();
    for item in spec.split(',').filter(|s| !s.trim().is_empty()) {
        if let Some((lo, hi)) = item.split_once("..") {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            let (lo, hi) = (num(lo)?, num(hi)?);
            if lo > hi {
                return Err(err(format!("empty range {lo}..{hi}")));
            }
            out.extend(lo..=hi);
        } else {
            out.push(num(item)?);
        }
    }
    if out.is_empty() {
        return Err(err("no sizes given".into()));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}
