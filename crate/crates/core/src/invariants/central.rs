use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::geometry::{dot_along, Point};

/// Spokes around a centrex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralSignature {
    pub centrex: Point,
    /// Number of construction lines through the centrex.
    pub degree: usize,
    /// Marks on each of the `2d` spokes, counter-clockwise, starting from
    /// the spoke with the lexicographically smallest direction vector.
    pub spokes: Vec<usize>,
}

impl CentralSignature {
    /// `(v_1, ..., v_d)`.
    pub fn signature(&self) -> &[usize] {
        &self.spokes[..self.degree]
    }
}

impl fmt::Display for CentralSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.signature().iter().map(|v| v.to_string()).collect();
        write!(
            f,
            "centrex {} central degree {} signature ({})",
            self.centrex,
            self.degree,
            parts.join(", ")
        )
    }
}

type Dir = (BigInt, BigInt);

/// Marks strictly on the positive and negative side of `z` along each line
/// through `z`, with the line's direction.
fn sides(a: &Arrangement, z: &Point) -> Vec<(Dir, usize, usize)> {
    let inc = a.incidences();
    let zi = a.point_index(z).expect("caller checked membership");
    inc.point_lines[zi]
        .iter()
        .map(|&l| {
            let slope = a.lines()[l].slope();
            let (mut pos, mut neg) = (0, 0);
            for &p in &inc.line_points[l] {
                if p == zi {
                    continue;
                }
                if dot_along(z, &a.points()[p], &slope).is_positive() {
                    pos += 1;
                } else {
                    neg += 1;
                }
            }
            ((slope.dx().clone(), slope.dy().clone()), pos, neg)
        })
        .collect()
}

fn is_balanced(sides: &[(Dir, usize, usize)]) -> bool {
    !sides.is_empty() && sides.iter().all(|&(_, pos, neg)| pos == neg && pos >= 1)
}

/// Marks at which every line through them carries equally many marks on
/// both sides, at least one per side.
pub fn find_centrexes(a: &Arrangement) -> Vec<Point> {
    a.points()
        .iter()
        .filter(|z| is_balanced(&sides(a, z)))
        .cloned()
        .collect()
}

fn cross(u: &Dir, v: &Dir) -> BigInt {
    &u.0 * &v.1 - &u.1 * &v.0
}

fn dot(u: &Dir, v: &Dir) -> BigInt {
    &u.0 * &v.0 + &u.1 * &v.1
}

/// Counter-clockwise angular order measured from `start`.
fn ccw_from(start: &Dir, u: &Dir, v: &Dir) -> Ordering {
    let half = |w: &Dir| {
        let c = cross(start, w);
        if c.is_positive() || (c.is_zero() && dot(start, w).is_positive()) {
            0
        } else {
            1
        }
    };
    half(u).cmp(&half(v)).then_with(|| {
        let c = cross(u, v);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

pub fn central_signature(a: &Arrangement, z: &Point) -> Result<CentralSignature> {
    if a.point_index(z).is_none() {
        return Err(Error::UnknownPoint(z.clone()));
    }
    let sides = sides(a, z);
    if !is_balanced(&sides) {
        return Err(Error::NotACentrex(z.clone()));
    }
    let mut spokes: Vec<(Dir, usize)> = Vec::with_capacity(2 * sides.len());
    for (d, pos, neg) in sides {
        let opposite = (-d.0.clone(), -d.1.clone());
        spokes.push((d, pos));
        spokes.push((opposite, neg));
    }
    let start = spokes.iter().map(|(d, _)| d).min().expect("nonempty").clone();
    spokes.sort_by(|(u, _), (v, _)| ccw_from(&start, u, v));
    Ok(CentralSignature {
        centrex: z.clone(),
        degree: spokes.len() / 2,
        spokes: spokes.into_iter().map(|(_, c)| c).collect(),
    })
}

/// Smallest rotation or reflection of a cyclic sequence.
pub fn canonical_cyclic(seq: &[usize]) -> Vec<usize> {
    let n = seq.len();
    let mut best: Option<Vec<usize>> = None;
    let rev: Vec<usize> = seq.iter().rev().copied().collect();
    for base in [seq.to_vec(), rev] {
        for r in 0..n.max(1) {
            let cand: Vec<usize> = (0..n).map(|i| base[(i + r) % n]).collect();
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// The arrangement's signature: the smallest cyclic-canonical signature over
/// all centrexes, or `None` when there is no centrex.
pub fn canonical_signature(a: &Arrangement) -> Option<Vec<usize>> {
    find_centrexes(a)
        .iter()
        .map(|z| canonical_cyclic(central_signature(a, z).expect("centrex").signature()))
        .min()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{generate_family, pencil, FamilyKind};
    use crate::geometry::{between, Line};

    fn square_with_diagonals() -> Arrangement {
        Arrangement::from_lines(vec![
            Line::from_i64(1, 0, 1),
            Line::from_i64(1, 0, -1),
            Line::from_i64(0, 1, 1),
            Line::from_i64(0, 1, -1),
            Line::from_i64(1, -1, 0),
            Line::from_i64(1, 1, 0),
        ])
        .unwrap()
    }

    #[test]
    fn square_with_diagonals_centrex() {
        let a = square_with_diagonals();
        assert_eq!(a.num_points(), 5);
        assert_eq!(find_centrexes(&a), vec![Point::from_ints(0, 0)]);
        let sig = central_signature(&a, &Point::from_ints(0, 0)).unwrap();
        assert_eq!(sig.degree, 2);
        assert_eq!(sig.signature(), &[1, 1]);
        assert_eq!(sig.spokes, vec![1, 1, 1, 1]);
        assert!(matches!(
            central_signature(&a, &Point::from_ints(1, 1)),
            Err(Error::NotACentrex(_))
        ));
    }

    #[test]
    fn triangle_has_no_centrex() {
        let tri = generate_family(FamilyKind::NearPencil, 3).unwrap();
        // oracle: at each vertex the other two marks are never on opposite sides
        for z in tri.points() {
            let others: Vec<&Point> = tri.points().iter().filter(|p| *p != z).collect();
            let collinear_split = crate::geometry::orientation(z, others[0], others[1]) == 0
                && between(others[0], z, others[1]).unwrap();
            assert!(!collinear_split);
        }
        assert!(find_centrexes(&tri).is_empty());
    }

    #[test]
    fn pencil_has_no_spokes() {
        assert!(find_centrexes(&pencil(4)).is_empty());
    }

    #[test]
    fn unbalanced_line_disqualifies() {
        let a = Arrangement::from_lines(vec![
            Line::from_i64(0, 1, 0),
            Line::from_i64(1, 0, 0),
            Line::from_i64(1, -1, 0),
            Line::from_i64(0, 1, 1),
            Line::from_i64(0, 1, -1),
        ])
        .unwrap();
        // x=0 and y=x are balanced at the origin but y=0 carries no other mark
        assert!(find_centrexes(&a).is_empty());
    }

    #[test]
    fn ccw_spoke_order() {
        // y=0 carries two marks per side of the origin, x=0 one per side
        let a = Arrangement::from_lines(vec![
            Line::from_i64(0, 1, 0),
            Line::from_i64(1, 0, 0),
            Line::from_i64(1, 0, 1),
            Line::from_i64(1, 0, -1),
            Line::from_i64(1, 0, 2),
            Line::from_i64(1, 0, -2),
            Line::from_i64(0, 1, 1),
            Line::from_i64(0, 1, -1),
        ])
        .unwrap();
        assert_eq!(find_centrexes(&a), vec![Point::from_ints(0, 0)]);
        let sig = central_signature(&a, &Point::from_ints(0, 0)).unwrap();
        // start at (-1,0), then (0,-1), (1,0), (0,1)
        assert_eq!(sig.spokes, vec![2, 1, 2, 1]);
        assert_eq!(sig.signature(), &[2, 1]);
        assert_eq!(canonical_signature(&a), Some(vec![1, 2]));
    }

    #[test]
    fn cyclic_canonical_form() {
        assert_eq!(canonical_cyclic(&[2, 1, 3]), vec![1, 2, 3]);
        assert_eq!(canonical_cyclic(&[3, 1, 2]), vec![1, 2, 3]);
        assert_eq!(canonical_cyclic(&[1, 3, 2]), vec![1, 2, 3]);
    }
}
