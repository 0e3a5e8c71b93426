//! Text and JSON grammars.
//!
//! * multiset: `v^c` runs separated by whitespace, `^1` optional: `7^3 1^2`
//! * pair: `A | B`, e.g. `7^3 1^2 | 6^3 5`
//! * pair JSON: `{"A": [[7,3],[1,2]], "B": [[6,3],[5,1]]}`
//! * product plan: `a,b^c` triples separated by `;`, e.g. `7,6^2;7,5`
//! * chain: `a,b` steps separated by `;`, applied left to right
//!
//! Input runs may come in any order and repeat values; they are normalized.
//! Output is always canonical: values decreasing, no duplicate runs.

use std::fmt;

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::derivation::{DerivationPlan, PlanStep};
use crate::multiset::{normalize, Multiset};
use crate::pair::{pair_canonical, Pair};

/// A parse failure at a 1-based character column of the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at column {column}: {message}")]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn at(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            column: offset + 1,
            message: message.into(),
        }
    }
}

/// Splits on `sep`, yielding `(byte offset, piece)`.
fn split_with_offsets(text: &str, sep: char) -> impl Iterator<Item = (usize, &str)> {
    let mut start = 0;
    text.split(sep).map(move |piece| {
        let at = start;
        start += piece.len() + sep.len_utf8();
        (at, piece)
    })
}

/// Whitespace-separated tokens with their byte offsets.
fn tokens(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out
}

fn number(offset: usize, text: &str, what: &str) -> Result<i64, ParseError> {
    let t = text.trim();
    let lead = text.len() - text.trim_start().len();
    if t.is_empty() {
        return Err(ParseError::at(offset, format!("expected {what}")));
    }
    if !t
        .bytes()
        .all(|b| b.is_ascii_digit() || b == b'-' || b == b'+')
    {
        return Err(ParseError::at(
            offset + lead,
            format!("invalid {what} `{t}`"),
        ));
    }
    t.parse()
        .map_err(|_| ParseError::at(offset + lead, format!("invalid {what} `{t}`")))
}

fn parse_multiset_at(offset: usize, text: &str) -> Result<Multiset, ParseError> {
    let toks = tokens(text);
    if toks.is_empty() {
        return Err(ParseError::at(offset, "expected at least one element"));
    }
    let mut raw = Vec::with_capacity(toks.len());
    for (at, tok) in toks {
        let (value, count) = match tok.split_once('^') {
            Some((v, c)) => (
                number(offset + at, v, "value")?,
                number(offset + at + v.len() + 1, c, "count")?,
            ),
            None => (number(offset + at, tok, "value")?, 1),
        };
        raw.push((value, count));
    }
    normalize(raw).map_err(|e| ParseError::at(offset, e.to_string()))
}

pub fn parse_multiset(text: &str) -> Result<Multiset, ParseError> {
    parse_multiset_at(0, text)
}

/// Parses `A | B`, keeping the sides in the order written.
pub fn parse_sides(text: &str) -> Result<(Multiset, Multiset), ParseError> {
    let bars: Vec<usize> = text.match_indices('|').map(|(i, _)| i).collect();
    match bars.as_slice() {
        [bar] => {
            let left = parse_multiset_at(0, &text[..*bar])?;
            let right = parse_multiset_at(bar + 1, &text[bar + 1..])?;
            Ok((left, right))
        }
        [] => Err(ParseError::at(
            text.len(),
            "expected `|` separating the two sides",
        )),
        [_, second, ..] => Err(ParseError::at(*second, "unexpected second `|`")),
    }
}

pub fn parse_pair(text: &str) -> Result<Pair, ParseError> {
    let (a, b) = parse_sides(text)?;
    Ok(pair_canonical(a, b))
}

/// Text form of two sides in the given order.
pub fn format_sides(left: &Multiset, right: &Multiset) -> String {
    format!("{left} | {right}")
}

fn parse_value_pair(offset: usize, text: &str) -> Result<(u32, u32), ParseError> {
    let Some((a, b)) = text.split_once(',') else {
        return Err(ParseError::at(
            offset,
            format!("expected `a,b`, found `{}`", text.trim()),
        ));
    };
    let a = positive(offset, a, "a")?;
    let b = positive(offset + a.1 + 1, b, "b")?;
    Ok((a.0, b.0))
}

/// A positive u32 field; returns it with the consumed length.
fn positive(offset: usize, text: &str, what: &str) -> Result<(u32, usize), ParseError> {
    let n = number(offset, text, what)?;
    if n <= 0 || n > u32::MAX as i64 {
        let lead = text.len() - text.trim_start().len();
        return Err(ParseError::at(
            offset + lead,
            format!("{what} must be a positive integer, got {n}"),
        ));
    }
    Ok((n as u32, text.len()))
}

pub fn parse_plan(text: &str) -> Result<DerivationPlan, ParseError> {
    let mut steps = Vec::new();
    if !text.trim().is_empty() {
        for (at, piece) in split_with_offsets(text, ';') {
            let (pair_text, count) = match piece.split_once('^') {
                Some((p, c)) => (p, positive(at + p.len() + 1, c, "count")?.0),
                None => (piece, 1),
            };
            let (a, b) = parse_value_pair(at, pair_text)?;
            steps.push(PlanStep { a, b, count });
        }
    }
    DerivationPlan::new(steps).map_err(|e| ParseError::at(0, e.to_string()))
}

pub fn format_plan(plan: &DerivationPlan) -> String {
    plan.steps()
        .iter()
        .map(|s| format!("{},{}^{}", s.a, s.b, s.count))
        .collect::<Vec<_>>()
        .join(";")
}

pub fn parse_chain(text: &str) -> Result<Vec<(u32, u32)>, ParseError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_with_offsets(text, ';')
        .map(|(at, piece)| parse_value_pair(at, piece))
        .collect()
}

struct Runs<'a>(&'a Multiset);

impl fmt::Display for Runs<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, r) in self.0.runs().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "[{},{}]", r.value, r.count)?;
        }
        f.write_str("]")
    }
}

/// Canonical JSON form of a pair: `{"A": [[v,c],...], "B": [[v,c],...]}`.
pub fn pair_to_json(p: &Pair) -> String {
    format!("{{\"A\": {}, \"B\": {}}}", Runs(p.a()), Runs(p.b()))
}

#[derive(Deserialize)]
struct RawPair {
    #[serde(rename = "A")]
    a: Vec<(i64, i64)>,
    #[serde(rename = "B")]
    b: Vec<(i64, i64)>,
}

impl RawPair {
    fn into_pair(self) -> Result<Pair, String> {
        let a = normalize(self.a).map_err(|e| format!("A: {e}"))?;
        let b = normalize(self.b).map_err(|e| format!("B: {e}"))?;
        Ok(pair_canonical(a, b))
    }
}

pub fn parse_pair_json(text: &str) -> Result<Pair, ParseError> {
    let raw: RawPair = serde_json::from_str(text).map_err(|e| {
        // serde_json reports 1-based line/column; inputs are single-line
        ParseError {
            column: e.column().max(1),
            message: e.to_string(),
        }
    })?;
    raw.into_pair().map_err(|m| ParseError::at(0, m))
}

impl Serialize for Pair {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let runs = |ms: &Multiset| -> Vec<[u32; 2]> {
            ms.runs().iter().map(|r| [r.value, r.count]).collect()
        };
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("A", &runs(self.a()))?;
        map.serialize_entry("B", &runs(self.b()))?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for Pair {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        RawPair::deserialize(deserializer)?
            .into_pair()
            .map_err(D::Error::custom)
    }
}
