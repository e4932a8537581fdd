//! Plain-text arrangement and shape files.
//!
//! One record per line:
//!
//! ```text
//! # comment
//! line a b c              # a·x + b·y = c
//! point x y
//! segment x1 y1 x2 y2
//! ```
//!
//! Numbers are integers or fractions `p/q`. Decimals are rejected. A file
//! with no `point` records describes the arrangement whose marks are all
//! pairwise intersections of its lines.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arrangement::{Arrangement, Segment, Shape};
use crate::error::{Error, Result};
use crate::geometry::{Line, Point, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ArrangementFile {
    pub lines: Vec<Line>,
    pub points: Vec<Point>,
    pub segments: Vec<Segment>,
}

impl ArrangementFile {
    /// The arrangement described by the `line` and `point` records. Without
    /// point records the marks are computed.
    pub fn to_arrangement(&self) -> Result<Arrangement> {
        if self.points.is_empty() {
            Arrangement::from_lines(self.lines.clone())
        } else {
            Arrangement::new(self.lines.clone(), self.points.clone())
        }
    }

    pub fn to_shape(&self) -> Shape {
        crate::arrangement::canonicalize_shape(&self.segments)
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Integer or `p/q`, reduced to lowest terms.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let valid = |t: &str| {
        let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(p) || !valid(q) {
        return None;
    }
    let p: BigInt = p.parse().ok()?;
    let q: BigInt = q.parse().ok()?;
    if q.is_zero() {
        return None;
    }
    Some(Rational::new(p, q))
}

pub fn parse(text: &str) -> Result<ArrangementFile> {
    let mut file = ArrangementFile::default();
    let mut seen_lines: BTreeMap<Line, usize> = BTreeMap::new();
    let mut seen_points: BTreeMap<Point, usize> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut fields = content.split_whitespace();
        let keyword = fields.next().expect("nonempty");
        let args: Vec<&str> = fields.collect();
        let numbers = |want: usize| -> Result<Vec<Rational>> {
            if args.len() != want {
                return Err(parse_error(
                    lineno,
                    format!("`{keyword}` takes {want} numbers, found {}", args.len()),
                ));
            }
            args.iter()
                .map(|a| parse_rational(a).ok_or_else(|| parse_error(lineno, format!("not an exact number: `{a}`"))))
                .collect()
        };
        match keyword {
            "line" => {
                let v = numbers(3)?;
                let l = Line::from_rationals(&v[0], &v[1], &v[2]).map_err(|e| parse_error(lineno, e.to_string()))?;
                if let Some(first) = seen_lines.insert(l.clone(), lineno) {
                    return Err(parse_error(lineno, format!("line {l} already given on line {first}")));
                }
                file.lines.push(l);
            }
            "point" => {
                let v = numbers(2)?;
                let p = Point::new(v[0].clone(), v[1].clone());
                if let Some(first) = seen_points.insert(p.clone(), lineno) {
                    return Err(parse_error(lineno, format!("point {p} already given on line {first}")));
                }
                file.points.push(p);
            }
            "segment" => {
                let v = numbers(4)?;
                let s = Segment::new(
                    Point::new(v[0].clone(), v[1].clone()),
                    Point::new(v[2].clone(), v[3].clone()),
                )
                .map_err(|e| parse_error(lineno, e.to_string()))?;
                file.segments.push(s);
            }
            other => return Err(parse_error(lineno, format!("unknown record `{other}`"))),
        }
    }
    Ok(file)
}

/// Lines, then marks, in sorted order. Always writes the marks so the file
/// reads back to the same pair even when it breaks the rules.
pub fn serialize(a: &Arrangement) -> String {
    let mut out = String::new();
    writeln!(out, "# {} lines, {} marks", a.num_lines(), a.num_points()).unwrap();
    for l in a.lines() {
        writeln!(out, "line {} {} {}", l.a(), l.b(), l.c()).unwrap();
    }
    for p in a.points() {
        writeln!(out, "point {} {}", p.x, p.y).unwrap();
    }
    out
}

pub fn serialize_shape(shape: &Shape) -> String {
    let mut out = String::new();
    writeln!(out, "# {} segments", shape.segments().len()).unwrap();
    for s in shape.segments() {
        let (p, q) = (s.start(), s.end());
        writeln!(out, "segment {} {} {} {}", p.x, p.y, q.x, q.y).unwrap();
    }
    out
}

/// Reads a file; I/O failures are reported as parse errors at line 0.
pub fn read_file(path: &Path) -> Result<ArrangementFile> {
    let text = std::fs::read_to_string(path).map_err(|e| parse_error(0, format!("{}: {e}", path.display())))?;
    parse(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rat;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3"), Some(rat(3, 1)));
        assert_eq!(parse_rational("-6/4"), Some(rat(-3, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("0.5"), None);
        assert_eq!(parse_rational("1/-2"), Some(rat(-1, 2)));
        assert_eq!(parse_rational(""), None);
        assert_eq!(parse_rational("--1"), None);
    }

    #[test]
    fn computed_marks_when_absent() {
        let f = parse("line 0 1 0\nline 0 1 1 # upper\nline 1 0 0\n").unwrap();
        let a = f.to_arrangement().unwrap();
        assert_eq!(a.num_points(), 2);
        assert!(a.is_valid());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse("# header\nline 0 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        assert!(matches!(parse("line 0 0 1").unwrap_err(), Error::Parse { line: 1, .. }));
        assert!(matches!(parse("circle 1 2").unwrap_err(), Error::Parse { line: 1, .. }));
        assert!(matches!(parse("line 1 0 0\nline 2 0 0").unwrap_err(), Error::Parse { line: 2, .. }));
        assert!(matches!(parse("segment 0 0 0 0").unwrap_err(), Error::Parse { line: 1, .. }));
    }

    #[test]
    fn round_trip() {
        let a = Arrangement::from_lines(vec![
            Line::from_rationals(&rat(1, 3), &rat(2, 1), &rat(5, 7)).unwrap(),
            Line::from_i64(1, 0, 0),
            Line::from_i64(0, 1, 1),
        ])
        .unwrap();
        let text = serialize(&a);
        assert_eq!(parse(&text).unwrap().to_arrangement().unwrap(), a);
        assert_eq!(serialize(&parse(&text).unwrap().to_arrangement().unwrap()), text);
    }
}
