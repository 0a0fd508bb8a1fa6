//! Parsers for permutation, point and range arguments.

use std::ops::Range;

use natperm::rotation::{parse_digits, BinarySeq};
use natperm::sets::parse_set_spec;
use natperm::{transposition, Error, Permutation, Rearrangement, Result};

/// `identity | adjacent:<k> | transpose:<i>,<j> | rearrange:<set-spec>`.
/// A bare set spec is read as `rearrange:<set-spec>`.
pub fn parse_permutation(text: &str, fuel: u64) -> Result<Permutation> {
    if text == "identity" {
        return Ok(Permutation::identity());
    }
    if let Some(k) = text.strip_prefix("adjacent:") {
        return Ok(Permutation::adjacent(number(k, "adjacent:".len())?));
    }
    if let Some(rest) = text.strip_prefix("transpose:") {
        let offset = "transpose:".len();
        let (i, j) = rest
            .split_once(',')
            .ok_or_else(|| Error::parse(offset, "expected <i>,<j>"))?;
        let i = number(i, offset)?;
        let j = number(j, offset + rest.find(',').unwrap_or(0) + 1)?;
        return Ok(Permutation::from(transposition(i, j)?));
    }
    let (body, offset) = match text.strip_prefix("rearrange:") {
        Some(body) => (body, "rearrange:".len()),
        None => (text, 0),
    };
    let set = parse_set_spec(body).map_err(|e| shift(e, offset))?;
    Ok(Permutation::rearrangement(Rearrangement::new(set).with_fuel(fuel)))
}

/// `zero | half | golden | rational:<p>/<q> | bits:<01…> | prng:<seed>`.
pub fn parse_point(text: &str) -> Result<BinarySeq> {
    match text {
        "zero" => return Ok(BinarySeq::zero()),
        "half" => return Ok(BinarySeq::from_digits(vec![1])),
        "golden" => return Ok(BinarySeq::golden()),
        _ => {}
    }
    if let Some(rest) = text.strip_prefix("rational:") {
        let offset = "rational:".len();
        let (p, q) = rest
            .split_once('/')
            .ok_or_else(|| Error::parse(offset, "expected <p>/<q>"))?;
        let slash = offset + p.len() + 1;
        return BinarySeq::rational(number(p, offset)?, number(q, slash)?);
    }
    if let Some(rest) = text.strip_prefix("bits:") {
        let digits = parse_digits(rest).map_err(|e| shift(e, "bits:".len()))?;
        return Ok(BinarySeq::from_digits(digits));
    }
    if let Some(rest) = text.strip_prefix("prng:") {
        return Ok(BinarySeq::prng(number(rest, "prng:".len())?));
    }
    Err(Error::parse(0, "unknown point"))
}

/// `a..b` (end exclusive) or a single index `a`.
pub fn parse_range(text: &str) -> Result<Range<u64>> {
    match text.split_once("..") {
        Some((a, b)) => {
            let start = number(a, 0)?;
            let end = number(b, a.len() + 2)?;
            if end < start {
                return Err(Error::parse(0, "range end precedes start"));
            }
            Ok(start..end)
        }
        None => {
            let x = number(text, 0)?;
            Ok(x..x + 1)
        }
    }
}

/// Comma-separated naturals; empty text is the empty list.
pub fn parse_list(text: &str) -> Result<Vec<u64>> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let mut offset = 0;
    let mut out = Vec::new();
    for part in text.split(',') {
        out.push(number(part, offset)?);
        offset += part.len() + 1;
    }
    Ok(out)
}

fn number(text: &str, position: usize) -> Result<u64> {
    text.parse()
        .map_err(|_| Error::parse(position, "expected a natural number"))
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { position, message } => Error::Parse {
            position: position + by,
            message,
        },
        other => other,
    }
}
