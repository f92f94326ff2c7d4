//! Text and JSON formats for arrangements and incidence structures.
//!
//! Arrangement text: one line `a b c` per projective line, entries like `2`,
//! `-3/4` or `1+w`; `#` starts a comment. Incidence text: a header `d=<n>`,
//! then one multiple point per line as 0-based line indices. The JSON forms are
//! `{"lines": [[a,b,c], ...]}` and `{"d": n, "points": [[i,j,k], ...]}`.

use serde::{Deserialize, Serialize};

use super::{Arrangement, IncidenceStructure, ProjLine};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A parsed input file: coordinates, or only the lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Arrangement(Arrangement),
    Incidence(IncidenceStructure),
}

impl Input {
    pub fn incidence(&self) -> IncidenceStructure {
        match self {
            Input::Arrangement(a) => a.incidence(),
            Input::Incidence(s) => s.clone(),
        }
    }

    pub fn realization(&self) -> Option<&Arrangement> {
        match self {
            Input::Arrangement(a) => Some(a),
            Input::Incidence(_) => None,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ArrangementJson {
    lines: Vec<[Scalar; 3]>,
}

#[derive(Serialize, Deserialize)]
struct IncidenceJson {
    d: usize,
    points: Vec<Vec<usize>>,
}

/// Strips a trailing comment and yields `(line_no, column, token)` triples,
/// 1-based.
fn tokens(text: &str) -> impl Iterator<Item = (usize, Vec<(usize, &str)>)> {
    text.lines().enumerate().filter_map(|(no, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let mut toks = Vec::new();
        let mut start = None;
        for (i, ch) in body.char_indices() {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    toks.push((s + 1, &body[s..i]));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            toks.push((s + 1, &body[s..]));
        }
        (!toks.is_empty()).then_some((no + 1, toks))
    })
}

pub fn parse_arrangement_text(text: &str) -> Result<Arrangement> {
    let mut lines = Vec::new();
    for (no, toks) in tokens(text) {
        if toks.len() != 3 {
            let col = toks.get(3).map_or(toks.last().map_or(1, |t| t.0), |t| t.0);
            return Err(Error::parse(no, col, format!("expected 3 coefficients, found {}", toks.len())));
        }
        let mut c: [Scalar; 3] = Default::default();
        for (slot, (col, tok)) in c.iter_mut().zip(&toks) {
            *slot = tok.parse().map_err(|e: crate::scalar::ScalarParseError| Error::parse(no, *col, e.to_string()))?;
        }
        let line = ProjLine::new(c).map_err(|e| Error::parse(no, 1, e.to_string()))?;
        lines.push((no, line));
    }
    let linenos: Vec<usize> = lines.iter().map(|l| l.0).collect();
    Arrangement::new(lines.into_iter().map(|l| l.1).collect()).map_err(|e| match e {
        Error::RepeatedLine(i, j) => {
            Error::parse(linenos[i], 1, format!("line {i} repeats line {j}; arrangements must be reduced"))
        }
        Error::EmptyArrangement => Error::parse(1, 1, "no lines found"),
        other => other,
    })
}

pub fn parse_incidence_text(text: &str) -> Result<IncidenceStructure> {
    let mut iter = tokens(text);
    let (no, header) = iter.next().ok_or_else(|| Error::parse(1, 1, "missing `d=<n>` header"))?;
    let d = match header.as_slice() {
        [(_, tok)] => tok.strip_prefix("d=").and_then(|v| v.parse::<usize>().ok()),
        _ => None,
    }
    .ok_or_else(|| Error::parse(no, 1, "expected header `d=<n>`"))?;
    let mut sets = Vec::new();
    for (no, toks) in iter {
        let mut set = Vec::new();
        for (col, tok) in toks {
            let i: usize = tok.parse().map_err(|_| Error::parse(no, col, format!("bad line index `{tok}`")))?;
            if i >= d {
                return Err(Error::parse(no, col, format!("line index {i} out of range for d={d}")));
            }
            set.push(i);
        }
        sets.push(set);
    }
    IncidenceStructure::new(d, sets)
}

fn json_error(e: serde_json::Error) -> Error {
    Error::parse(e.line(), e.column(), e.to_string())
}

pub fn parse_arrangement_json(text: &str) -> Result<Arrangement> {
    let raw: ArrangementJson = serde_json::from_str(text).map_err(json_error)?;
    Arrangement::from_coeffs(raw.lines)
}

pub fn parse_incidence_json(text: &str) -> Result<IncidenceStructure> {
    let raw: IncidenceJson = serde_json::from_str(text).map_err(json_error)?;
    IncidenceStructure::new(raw.d, raw.points)
}

/// Detects the format from the content: JSON objects by their keys, text
/// incidence files by the `d=` header.
pub fn parse_input(text: &str) -> Result<Input> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let value: serde_json::Value = serde_json::from_str(text).map_err(json_error)?;
        return if value.get("lines").is_some() {
            parse_arrangement_json(text).map(Input::Arrangement)
        } else if value.get("points").is_some() {
            parse_incidence_json(text).map(Input::Incidence)
        } else {
            Err(Error::parse(1, 1, "JSON input needs a `lines` or `points` key"))
        };
    }
    let first = tokens(text).next();
    match first {
        Some((_, toks)) if toks[0].1.starts_with("d=") => parse_incidence_text(text).map(Input::Incidence),
        _ => parse_arrangement_text(text).map(Input::Arrangement),
    }
}

pub fn arrangement_to_text(arr: &Arrangement) -> String {
    let mut out = String::new();
    for l in arr.lines() {
        let c = l.coeffs();
        out.push_str(&format!("{} {} {}\n", c[0], c[1], c[2]));
    }
    out
}

pub fn arrangement_to_json(arr: &Arrangement) -> serde_json::Value {
    let lines: Vec<[Scalar; 3]> = arr.lines().iter().map(|l| l.coeffs().clone()).collect();
    serde_json::to_value(ArrangementJson { lines }).expect("serializable")
}

pub fn incidence_to_json(s: &IncidenceStructure) -> serde_json::Value {
    serde_json::to_value(IncidenceJson { d: s.d(), points: s.heavy_points().to_vec() }).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn arrangement_text_round_trip() {
        let arr = corpus::ceva3();
        let text = arrangement_to_text(&arr);
        assert_eq!(parse_arrangement_text(&text).unwrap(), arr);
        let json = arrangement_to_json(&arr).to_string();
        assert_eq!(parse_arrangement_json(&json).unwrap(), arr);
    }

    #[test]
    fn comments_and_rationals() {
        let arr = parse_arrangement_text("# triangle\n1 0 0\n0 2/3 0  # y\n\n0 0 -5\n").unwrap();
        assert_eq!(arr, corpus::triangle());
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse_arrangement_text("1 0 0\n0 1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 5, .. }), "{err:?}");
        let err = parse_arrangement_text("1 0 0\n0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        let err = parse_arrangement_text("1 0 0\n2 0 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        let err = parse_incidence_text("d=3\n0 1 7\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 5, .. }), "{err:?}");
        let err = parse_input("{\"lines\": [[1,0]]}").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err:?}");
    }

    #[test]
    fn incidence_formats() {
        let s = corpus::a2(2).incidence();
        assert_eq!(parse_incidence_text(&s.to_string()).unwrap(), s);
        assert_eq!(parse_incidence_json(&incidence_to_json(&s).to_string()).unwrap(), s);
        match parse_input(&s.to_string()).unwrap() {
            Input::Incidence(t) => assert_eq!(t, s),
            other => panic!("{other:?}"),
        }
    }
}
