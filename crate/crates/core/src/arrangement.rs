//! Arrangements of construction lines and registration marks.
//!
//! An [`Arrangement`] is a pair `(L, P)`. It is a *valid* arrangement when
//! every mark lies on at least two lines and every pair of nonparallel lines
//! meets at a mark. Marks are stored explicitly so that user input with a
//! wrong `P` can be reported rather than silently repaired; use
//! [`Arrangement::from_lines`] to build the closure of a line set.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::geometry::{dot_along, intersect, line_through, Line, Point, Rational, Slope};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    p: Point,
    q: Point,
}

impl Segment {
    /// Endpoints are stored in sorted order.
    pub fn new(p: Point, q: Point) -> Result<Self> {
        if p == q {
            return Err(Error::IdenticalPoints(p));
        }
        let (p, q) = if p < q { (p, q) } else { (q, p) };
        Ok(Segment { p, q })
    }

    pub fn from_ints(x1: i64, y1: i64, x2: i64, y2: i64) -> Self {
        Segment::new(Point::from_ints(x1, y1), Point::from_ints(x2, y2))
            .expect("segment endpoints coincide")
    }

    pub fn start(&self) -> &Point {
        &self.p
    }

    pub fn end(&self) -> &Point {
        &self.q
    }

    pub fn supporting_line(&self) -> Line {
        line_through(&self.p, &self.q).expect("segment endpoints are distinct")
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -- {}", self.p, self.q)
    }
}

/// A finite set of maximal segments: no two are collinear and touching.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Shape {
    segments: Vec<Segment>,
}

impl Shape {
    pub fn empty() -> Self {
        Shape::default()
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }
}

/// Merges collinear segments whose intervals overlap or share an endpoint.
pub fn canonicalize_shape(segments: &[Segment]) -> Shape {
    let mut by_line: BTreeMap<Line, Vec<(Rational, Rational, &Segment)>> = BTreeMap::new();
    for seg in segments {
        let line = seg.supporting_line();
        let dir = line.slope();
        let origin = line.anchor();
        let t0 = dot_along(&origin, &seg.p, &dir);
        let t1 = dot_along(&origin, &seg.q, &dir);
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        by_line.entry(line).or_default().push((lo, hi, seg));
    }

    let mut merged = Vec::new();
    for (line, mut intervals) in by_line {
        intervals.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        let dir = line.slope();
        let origin = line.anchor();
        let mut current: Option<(Rational, Rational)> = None;
        let mut flush = |lo: &Rational, hi: &Rational| {
            let at = |t: &Rational| {
                let dx = Rational::from_integer(dir.dx().clone());
                let dy = Rational::from_integer(dir.dy().clone());
                let norm = &dx * &dx + &dy * &dy;
                Point::new(&origin.x + t * &dx / &norm, &origin.y + t * &dy / &norm)
            };
            merged.push(Segment::new(at(lo), at(hi)).expect("merged interval is nondegenerate"));
        };
        for (lo, hi, _) in intervals {
            current = match current {
                Some((clo, chi)) if lo <= chi => Some((clo, if hi > chi { hi } else { chi })),
                Some((clo, chi)) => {
                    flush(&clo, &chi);
                    Some((lo, hi))
                }
                None => Some((lo, hi)),
            };
        }
        if let Some((lo, hi)) = current {
            flush(&lo, &hi);
        }
    }
    merged.sort();
    Shape { segments: merged }
}

/// One broken construction rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Rule 1: a mark that lies on fewer than two lines.
    LonelyPoint { point: Point, lines_through: usize },
    /// Rule 2: two nonparallel lines whose intersection is not a mark.
    MissingIntersection { first: Line, second: Line, at: Point },
}

impl Violation {
    pub fn rule(&self) -> u8 {
        match self {
            Violation::LonelyPoint { .. } => 1,
            Violation::MissingIntersection { .. } => 2,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LonelyPoint { point, lines_through } => write!(
                f,
                "rule 1: mark {point} lies on {lines_through} line(s), needs at least 2"
            ),
            Violation::MissingIntersection { first, second, at } => write!(
                f,
                "rule 2: lines [{first}] and [{second}] meet at {at}, which is not a mark"
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return writeln!(f, "valid");
        }
        writeln!(f, "invalid ({} violation(s))", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

fn sorted_unique_lines(lines: impl IntoIterator<Item = Line>) -> Result<Vec<Line>> {
    let mut seen = BTreeSet::new();
    for l in lines {
        if let Some(dup) = seen.replace(l) {
            return Err(Error::DuplicateLine(dup));
        }
    }
    Ok(seen.into_iter().collect())
}

fn sorted_unique_points(points: impl IntoIterator<Item = Point>) -> Result<Vec<Point>> {
    let mut seen = BTreeSet::new();
    for p in points {
        if let Some(dup) = seen.replace(p) {
            return Err(Error::DuplicatePoint(dup));
        }
    }
    Ok(seen.into_iter().collect())
}

/// Checks both construction rules for an explicit `(L, P)` pair.
pub fn validate(lines: &[Line], points: &[Point]) -> Result<ValidationReport> {
    let lines = sorted_unique_lines(lines.iter().cloned())?;
    let points = sorted_unique_points(points.iter().cloned())?;
    Ok(check_rules(&lines, &points))
}

fn check_rules(lines: &[Line], points: &[Point]) -> ValidationReport {
    let mut violations = Vec::new();
    for p in points {
        let through = lines.iter().filter(|l| l.contains(p)).count();
        if through < 2 {
            violations.push(Violation::LonelyPoint {
                point: p.clone(),
                lines_through: through,
            });
        }
    }
    for (i, l1) in lines.iter().enumerate() {
        for l2 in &lines[i + 1..] {
            if let Some(x) = intersect(l1, l2).expect("lines are distinct") {
                if points.binary_search(&x).is_err() {
                    violations.push(Violation::MissingIntersection {
                        first: l1.clone(),
                        second: l2.clone(),
                        at: x,
                    });
                }
            }
        }
    }
    ValidationReport { violations }
}

/// Incidence lists between the (sorted) lines and points of an arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incidences {
    pub line_points: Vec<Vec<usize>>,
    pub point_lines: Vec<Vec<usize>>,
}

/// The pair `(L, P)`. Lines and points are kept sorted and distinct.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrangement {
    lines: Vec<Line>,
    points: Vec<Point>,
}

impl Arrangement {
    /// The empty arrangement: no lines, no marks.
    pub fn empty() -> Self {
        Arrangement {
            lines: Vec::new(),
            points: Vec::new(),
        }
    }

    /// Stores `(L, P)` as given, without checking the construction rules.
    pub fn new(lines: Vec<Line>, points: Vec<Point>) -> Result<Self> {
        Ok(Arrangement {
            lines: sorted_unique_lines(lines)?,
            points: sorted_unique_points(points)?,
        })
    }

    /// `(L, P)` with `P` the set of all pairwise intersections of `L`.
    pub fn from_lines(lines: Vec<Line>) -> Result<Self> {
        let lines = sorted_unique_lines(lines)?;
        let mut points = BTreeSet::new();
        for (i, l1) in lines.iter().enumerate() {
            for l2 in &lines[i + 1..] {
                if let Some(x) = intersect(l1, l2)? {
                    points.insert(x);
                }
            }
        }
        Ok(Arrangement {
            lines,
            points: points.into_iter().collect(),
        })
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty() && self.points.is_empty()
    }

    pub fn point_index(&self, p: &Point) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    pub fn validate(&self) -> ValidationReport {
        check_rules(&self.lines, &self.points)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// Fails with [`Error::Invalid`] unless both rules hold.
    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        match report.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::Invalid(v.to_string())),
        }
    }

    pub fn incidences(&self) -> Incidences {
        let mut line_points = vec![Vec::new(); self.lines.len()];
        let mut point_lines = vec![Vec::new(); self.points.len()];
        for (li, l) in self.lines.iter().enumerate() {
            for (pi, p) in self.points.iter().enumerate() {
                if l.contains(p) {
                    line_points[li].push(pi);
                    point_lines[pi].push(li);
                }
            }
        }
        Incidences {
            line_points,
            point_lines,
        }
    }

    /// Image under `(x, y) ↦ (m00·x + m01·y + t0, m10·x + m11·y + t1)`.
    ///
    /// Panics if the linear part is singular.
    pub fn map_affine(&self, m: [[Rational; 3]; 2]) -> Arrangement {
        let apply = |p: &Point| {
            Point::new(
                &m[0][0] * &p.x + &m[0][1] * &p.y + &m[0][2],
                &m[1][0] * &p.x + &m[1][1] * &p.y + &m[1][2],
            )
        };
        let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
        assert!(det != Rational::from_integer(0.into()), "singular affine map");
        let lines = self
            .lines
            .iter()
            .map(|l| {
                let base = apply(&l.anchor());
                let s = l.slope();
                let (dx, dy) = (
                    Rational::from_integer(s.dx().clone()),
                    Rational::from_integer(s.dy().clone()),
                );
                let img = Slope::from_rationals(
                    &(&m[0][0] * &dx + &m[0][1] * &dy),
                    &(&m[1][0] * &dx + &m[1][1] * &dy),
                )
                .expect("nonsingular map keeps directions nonzero");
                Line::through_with_slope(&base, &img)
            })
            .collect();
        let points = self.points.iter().map(apply).collect();
        Arrangement::new(lines, points).expect("bijective map keeps elements distinct")
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} line(s), {} mark(s)", self.lines.len(), self.points.len())?;
        for l in &self.lines {
            writeln!(f, "  line {l}")?;
        }
        for p in &self.points {
            writeln!(f, "  mark {p}")?;
        }
        Ok(())
    }
}

/// Supporting lines of a shape, closed under intersection. The empty shape
/// gives the empty arrangement.
pub fn from_shape(shape: &Shape) -> Arrangement {
    let lines: BTreeSet<Line> = shape.segments.iter().map(Segment::supporting_line).collect();
    Arrangement::from_lines(lines.into_iter().collect()).expect("lines are distinct")
}

/// The three arrangement types that exist for every `k >= 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    /// One line with `k - 1` marks; every other line joins the remaining
    /// mark to one of them.
    NearPencil,
    /// A near-pencil plus the line through the apex parallel to the base.
    AugmentedNearPencil,
    /// One line with all `k` marks, crossed once at each mark.
    Railtrack,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 3] = [
        FamilyKind::NearPencil,
        FamilyKind::AugmentedNearPencil,
        FamilyKind::Railtrack,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::NearPencil => "near-pencil",
            FamilyKind::AugmentedNearPencil => "augmented near-pencil",
            FamilyKind::Railtrack => "railtrack",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Concrete realization of a named family with `k` marks.
///
/// Near-pencils use the base `y = 0` with marks `(1,0) .. (k-1,0)` and apex
/// `(0,1)`; the augmented variant adds `y = 1`; railtracks use `y = 0`
/// crossed by `x = 1 .. k`.
pub fn generate_family(kind: FamilyKind, k: usize) -> Result<Arrangement> {
    if k < 3 {
        return Err(Error::BadK(k));
    }
    let mut lines = Vec::with_capacity(k + 1);
    lines.push(Line::from_i64(0, 1, 0));
    match kind {
        FamilyKind::NearPencil | FamilyKind::AugmentedNearPencil => {
            // apex (0,1) to (i,0): x + i·y = i
            for i in 1..k as i64 {
                lines.push(Line::from_i64(1, i, i));
            }
            if kind == FamilyKind::AugmentedNearPencil {
                lines.push(Line::from_i64(0, 1, 1));
            }
        }
        FamilyKind::Railtrack => {
            for i in 1..=k as i64 {
                lines.push(Line::from_i64(1, 0, i));
            }
        }
    }
    Arrangement::from_lines(lines)
}

/// `n` concurrent lines through the origin with directions
/// `(1,0), (0,1), (1,1), (1,2), ...`.
pub fn pencil(n: usize) -> Arrangement {
    let lines = (0..n)
        .map(|i| {
            let (dx, dy) = match i {
                0 => (1, 0),
                1 => (0, 1),
                _ => (1, i as i64 - 1),
            };
            Line::new(BigInt::from(dy), BigInt::from(-dx), BigInt::from(0)).expect("nonzero")
        })
        .collect();
    Arrangement::from_lines(lines).expect("pencil lines are distinct")
}

/// `n` horizontal lines `y = 0 .. n-1`; no marks.
pub fn parallel_family(n: usize) -> Arrangement {
    let lines = (0..n as i64).map(|c| Line::from_i64(0, 1, c)).collect();
    Arrangement::from_lines(lines).expect("distinct offsets")
}
