//! Exact planar primitives.
//!
//! Coordinates are arbitrary-precision rationals and lines are stored as
//! primitive integer triples `(a, b, c)` meaning `a·x + b·y = c`, so two
//! lines are equal exactly when their triples are equal. No predicate in
//! this crate ever touches floating point.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Builds the rational `numer / denom`.
///
/// Panics if `denom` is zero.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// A registration mark candidate: a point with exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(int(x), int(y))
    }

    pub fn sub(&self, other: &Point) -> (Rational, Rational) {
        (&self.x - &other.x, &self.y - &other.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A construction line `a·x + b·y = c` with a primitive, sign-normalized
/// integer triple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl Line {
    /// Normalizes `(a, b, c)`: divides by the gcd and makes the leading
    /// nonzero of `(a, b)` positive.
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::DegenerateLine);
        }
        let g = a.gcd(&b).gcd(&c);
        let (mut a, mut b, mut c) = (a / &g, b / &g, c / &g);
        if a.is_negative() || (a.is_zero() && b.is_negative()) {
            a = -a;
            b = -b;
            c = -c;
        }
        Ok(Line { a, b, c })
    }

    /// Builds a line from rational coefficients by clearing denominators.
    pub fn from_rationals(a: &Rational, b: &Rational, c: &Rational) -> Result<Self> {
        let l = a.denom().lcm(b.denom()).lcm(c.denom());
        let scale = |r: &Rational| r.numer() * (&l / r.denom());
        Line::new(scale(a), scale(b), scale(c))
    }

    /// Convenience constructor for literal coefficients.
    ///
    /// Panics when `a` and `b` are both zero.
    pub fn from_i64(a: i64, b: i64, c: i64) -> Self {
        Line::new(a.into(), b.into(), c.into()).expect("degenerate line literal")
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    /// `a·x + b·y - c` at `p`; zero exactly on the line.
    pub fn evaluate(&self, p: &Point) -> Rational {
        Rational::from_integer(self.a.clone()) * &p.x + Rational::from_integer(self.b.clone()) * &p.y
            - Rational::from_integer(self.c.clone())
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.evaluate(p).is_zero()
    }

    pub fn slope(&self) -> Slope {
        slope_of(self)
    }

    pub fn is_parallel_to(&self, other: &Line) -> bool {
        (&self.a * &other.b - &self.b * &other.a).is_zero()
    }

    /// The line through `p` with direction `slope`.
    pub fn through_with_slope(p: &Point, slope: &Slope) -> Self {
        // normal (dy, -dx)
        let a = Rational::from_integer(slope.dy.clone());
        let b = Rational::from_integer(-slope.dx.clone());
        let c = &a * &p.x + &b * &p.y;
        Line::from_rationals(&a, &b, &c).expect("slope is never the zero vector")
    }

    /// Some point on the line: the foot of the perpendicular from the origin.
    pub fn anchor(&self) -> Point {
        let a = Rational::from_integer(self.a.clone());
        let b = Rational::from_integer(self.b.clone());
        let c = Rational::from_integer(self.c.clone());
        let norm = &a * &a + &b * &b;
        Point::new(&a * &c / &norm, &b * &c / &norm)
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x + {}y = {}", self.a, self.b, self.c)
    }
}

/// Direction of a line as a primitive integer vector; equal slopes are
/// exactly the parallel lines.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    dx: BigInt,
    dy: BigInt,
}

impl Slope {
    pub fn new(dx: BigInt, dy: BigInt) -> Result<Self> {
        if dx.is_zero() && dy.is_zero() {
            return Err(Error::ZeroDirection);
        }
        let g = dx.gcd(&dy);
        let (mut dx, mut dy) = (dx / &g, dy / &g);
        if dx.is_negative() || (dx.is_zero() && dy.is_negative()) {
            dx = -dx;
            dy = -dy;
        }
        Ok(Slope { dx, dy })
    }

    pub fn from_i64(dx: i64, dy: i64) -> Self {
        Slope::new(dx.into(), dy.into()).expect("zero direction literal")
    }

    /// Direction from rational components.
    pub fn from_rationals(dx: &Rational, dy: &Rational) -> Result<Self> {
        let l = dx.denom().lcm(dy.denom());
        Slope::new(dx.numer() * (&l / dx.denom()), dy.numer() * (&l / dy.denom()))
    }

    pub fn dx(&self) -> &BigInt {
        &self.dx
    }

    pub fn dy(&self) -> &BigInt {
        &self.dy
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.dx, self.dy)
    }
}

/// The line through two distinct points.
pub fn line_through(p: &Point, q: &Point) -> Result<Line> {
    if p == q {
        return Err(Error::IdenticalPoints(p.clone()));
    }
    let a = &q.y - &p.y;
    let b = &p.x - &q.x;
    let c = &a * &p.x + &b * &p.y;
    Line::from_rationals(&a, &b, &c)
}

/// Intersection of two distinct lines; `None` when they are parallel.
pub fn intersect(l1: &Line, l2: &Line) -> Result<Option<Point>> {
    if l1 == l2 {
        return Err(Error::IdenticalLines(l1.clone()));
    }
    let det = &l1.a * &l2.b - &l2.a * &l1.b;
    if det.is_zero() {
        return Ok(None);
    }
    let x = &l1.c * &l2.b - &l2.c * &l1.b;
    let y = &l1.a * &l2.c - &l2.a * &l1.c;
    Ok(Some(Point::new(
        Rational::new(x, det.clone()),
        Rational::new(y, det),
    )))
}

pub fn slope_of(l: &Line) -> Slope {
    Slope::new(-l.b.clone(), l.a.clone()).expect("normalized line has a nonzero normal")
}

/// Sign of the cross product `(q - p) × (r - p)`: `+1` for a
/// counter-clockwise turn, `-1` for clockwise, `0` when collinear.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> i32 {
    let (ux, uy) = q.sub(p);
    let (vx, vy) = r.sub(p);
    match (ux * vy - uy * vx).cmp(&Rational::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Whether `b` lies strictly between `a` and `c` on their common line.
pub fn between(a: &Point, b: &Point, c: &Point) -> Result<bool> {
    if a == b || b == c || a == c {
        return Err(Error::DuplicatePoints);
    }
    if orientation(a, b, c) != 0 {
        return Err(Error::NotCollinear);
    }
    let (ux, uy) = a.sub(b);
    let (vx, vy) = c.sub(b);
    Ok((ux * vx + uy * vy).is_negative())
}

/// Signed position of `p` along `direction` measured from `origin`.
pub(crate) fn dot_along(origin: &Point, p: &Point, direction: &Slope) -> Rational {
    let (ux, uy) = p.sub(origin);
    ux * Rational::from_integer(direction.dx.clone()) + uy * Rational::from_integer(direction.dy.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    #[test]
    fn line_through_examples() {
        assert_eq!(line_through(&p(0, 0), &p(1, 0)).unwrap(), Line::from_i64(0, 1, 0));
        assert_eq!(line_through(&p(0, 1), &p(1, 0)).unwrap(), Line::from_i64(1, 1, 1));
        let l = line_through(&Point::new(rat(1, 2), int(0)), &Point::new(int(0), rat(1, 3))).unwrap();
        assert_eq!(l, Line::from_i64(2, 3, 1));
        // substitute both points back
        assert!(l.contains(&Point::new(rat(1, 2), int(0))));
        assert!(l.contains(&Point::new(int(0), rat(1, 3))));
        assert_eq!(
            line_through(&p(2, 2), &p(2, 2)),
            Err(Error::IdenticalPoints(p(2, 2)))
        );
    }

    #[test]
    fn intersect_examples() {
        let y0 = Line::from_i64(0, 1, 0);
        let x0 = Line::from_i64(1, 0, 0);
        let y1 = Line::from_i64(0, 1, 1);
        assert_eq!(intersect(&y0, &x0).unwrap(), Some(p(0, 0)));
        assert_eq!(intersect(&y0, &y1).unwrap(), None);
        let got = intersect(&Line::from_i64(2, 3, 1), &Line::from_i64(1, -1, 0))
            .unwrap()
            .unwrap();
        assert_eq!(got, Point::new(rat(1, 5), rat(1, 5)));
        assert!(matches!(intersect(&y0, &y0), Err(Error::IdenticalLines(_))));
    }

    #[test]
    fn slope_examples() {
        assert_eq!(slope_of(&Line::from_i64(0, 1, 0)), Slope::from_i64(1, 0));
        assert_eq!(slope_of(&Line::from_i64(1, 0, 0)), Slope::from_i64(0, 1));
        let s = slope_of(&Line::from_i64(2, 3, 1));
        assert_eq!((s.dx().clone(), s.dy().clone()), (BigInt::from(3), BigInt::from(-2)));
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(orientation(&p(0, 0), &p(1, 0), &p(0, 1)), 1);
        assert_eq!(orientation(&p(0, 0), &p(1, 0), &p(2, 0)), 0);
        assert_eq!(orientation(&p(0, 0), &p(0, 1), &p(1, 0)), -1);
    }

    #[test]
    fn between_examples() {
        assert!(between(&p(0, 0), &p(1, 0), &p(2, 0)).unwrap());
        assert!(!between(&p(1, 0), &p(0, 0), &p(2, 0)).unwrap());
        let third = Point::new(rat(1, 3), rat(1, 3));
        assert!(between(&p(0, 0), &third, &p(1, 1)).unwrap());
        assert_eq!(between(&p(0, 0), &p(1, 1), &p(2, 0)), Err(Error::NotCollinear));
        assert_eq!(between(&p(0, 0), &p(0, 0), &p(2, 0)), Err(Error::DuplicatePoints));
    }

    #[test]
    fn normalization_is_canonical() {
        assert_eq!(Line::from_i64(-4, -6, -2), Line::from_i64(2, 3, 1));
        assert_eq!(Line::from_i64(0, -3, 6), Line::from_i64(0, 1, -2));
        assert_eq!(Line::new(0.into(), 0.into(), 1.into()), Err(Error::DegenerateLine));
        let l = Line::from_rationals(&rat(1, 2), &rat(1, 3), &rat(1, 6)).unwrap();
        assert_eq!(l, Line::from_i64(3, 2, 1));
    }

    #[test]
    fn through_with_slope_and_anchor() {
        let l = Line::through_with_slope(&p(1, 1), &Slope::from_i64(1, 2));
        assert!(l.contains(&p(1, 1)) && l.contains(&p(2, 3)));
        assert!(l.contains(&l.anchor()));
        assert_eq!(l.slope(), Slope::from_i64(1, 2));
    }
}
