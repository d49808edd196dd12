//! Reading and writing tuples.
//!
//! The text format has one element per line as whitespace-separated integers.
//! Blank lines and lines starting with `#` are skipped. Input whose first
//! non-blank character is `{` is read as JSON `{"dim": .., "elements": [..]}`.

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lattice::GroupElement;
use crate::tuple::GroupTuple;

pub fn parse_tuple(input: &str) -> Result<GroupTuple> {
    if input.trim_start().starts_with('{') {
        return serde_json::from_str(input).map_err(|e| Error::Json(e.to_string()));
    }
    parse_text(input)
}

pub fn parse_text(input: &str) -> Result<GroupTuple> {
    let mut elements = Vec::new();
    let mut dim = None;
    for (n, line) in input.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let coords = line
            .split_whitespace()
            .map(|w| {
                w.parse::<BigInt>().map_err(|_| Error::Parse { line: n + 1, msg: format!("not an integer: {w:?}") })
            })
            .collect::<Result<Vec<_>>>()?;
        match dim {
            None => dim = Some(coords.len()),
            Some(d) if d != coords.len() => {
                return Err(Error::Parse {
                    line: n + 1,
                    msg: format!("expected {d} coordinates, found {}", coords.len()),
                })
            }
            _ => {}
        }
        elements.push(GroupElement::new(coords)?);
    }
    if elements.is_empty() {
        return Err(Error::EmptyTuple);
    }
    GroupTuple::new(elements)
}

pub fn write_text(t: &GroupTuple) -> String {
    let mut out = String::new();
    for e in t.elements() {
        let words: Vec<String> = e.coords().iter().map(BigInt::to_string).collect();
        let _ = writeln!(out, "{}", words.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let t = parse_tuple("# a tuple\n0 0\n\n 1 -2\n123456789012345678901234567890 3\n").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.dim(), 2);
        assert_eq!(parse_tuple(&write_text(&t)).unwrap(), t);
    }

    #[test]
    fn json_input() {
        let t = parse_tuple(r#" {"dim":1,"elements":[[0],[5]]}"#).unwrap();
        assert_eq!(t, GroupTuple::from_i64s(&[&[0], &[5]]).unwrap());
    }

    #[test]
    fn errors() {
        assert_eq!(parse_tuple("# nothing\n\n").unwrap_err(), Error::EmptyTuple);
        assert!(matches!(parse_tuple("1 2\n3\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_tuple("1 x\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_tuple("{\"dim\":1"), Err(Error::Json(_))));
    }
}
