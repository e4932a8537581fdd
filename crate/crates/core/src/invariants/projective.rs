//! Affine and projective equivalence with exact witnesses.
//!
//! Every incidence isomorphism is a candidate point correspondence. For each
//! one the transformation is solved for exactly: point pairs and the
//! directions of corresponding lines give linear equations in the matrix
//! entries. A member of the solution space that is nonsingular and carries
//! the first arrangement onto the second is the witness.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::geometry::{Line, Point, Rational};
use crate::invariants::{summary_triple, type_vectors};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EquivalenceMode {
    Affine,
    Projective,
}

impl EquivalenceMode {
    pub fn name(self) -> &'static str {
        match self {
            EquivalenceMode::Affine => "affine",
            EquivalenceMode::Projective => "projective",
        }
    }

    fn required_points(self) -> usize {
        match self {
            EquivalenceMode::Affine => 3,
            EquivalenceMode::Projective => 4,
        }
    }
}

/// A homogeneous 3×3 matrix; affine maps have last row `(0, 0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transformation {
    pub mode: EquivalenceMode,
    pub matrix: [[Rational; 3]; 3],
    /// `point_map[i]` is the index in the second arrangement of the image of
    /// point `i` of the first.
    pub point_map: Vec<usize>,
}

impl Transformation {
    pub fn apply(&self, p: &Point) -> Option<Point> {
        let m = &self.matrix;
        let h = |r: usize| &m[r][0] * &p.x + &m[r][1] * &p.y + &m[r][2];
        let w = h(2);
        if w.is_zero() {
            return None;
        }
        Some(Point::new(h(0) / &w, h(1) / &w))
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} map", self.mode.name())?;
        for row in &self.matrix {
            writeln!(f, "  [{}  {}  {}]", row[0], row[1], row[2])?;
        }
        Ok(())
    }
}

/// Searches for an affine or projective map carrying `a1` onto `a2`.
pub fn projective_equivalent(
    a1: &Arrangement,
    a2: &Arrangement,
    mode: EquivalenceMode,
) -> Result<Option<Transformation>> {
    let required = mode.required_points();
    for a in [a1, a2] {
        if a.num_points() < required {
            return Err(Error::UnsupportedDegenerate {
                mode: mode.name(),
                required,
                found: a.num_points(),
            });
        }
    }
    if summary_triple(a1) != summary_triple(a2) || type_vectors(a1) != type_vectors(a2) {
        return Ok(None);
    }
    let ctx = Context::new(a1, a2);
    let mut found = None;
    ctx.for_each_isomorphism(&mut |point_map, line_map| {
        found = solve_for_map(a1, a2, mode, point_map, line_map);
        found.is_some()
    });
    Ok(found)
}

struct Context {
    k: usize,
    /// `join[p][q]`: the line through both marks, if any.
    join1: Vec<Vec<Option<usize>>>,
    join2: Vec<Vec<Option<usize>>>,
    size1: Vec<usize>,
    size2: Vec<usize>,
    signature1: Vec<Vec<usize>>,
    signature2: Vec<Vec<usize>>,
    lines1: Vec<Vec<usize>>,
    line_of_set2: HashMap<Vec<usize>, usize>,
}

fn joins(a: &Arrangement) -> (Vec<Vec<Option<usize>>>, Vec<Vec<usize>>, Vec<usize>) {
    let inc = a.incidences();
    let k = a.num_points();
    let mut join = vec![vec![None; k]; k];
    for (l, pts) in inc.line_points.iter().enumerate() {
        for &p in pts {
            for &q in pts {
                if p != q {
                    join[p][q] = Some(l);
                }
            }
        }
    }
    let sizes = inc.line_points.iter().map(Vec::len).collect();
    let signatures = inc
        .point_lines
        .iter()
        .map(|ls| {
            let mut s: Vec<usize> = ls.iter().map(|&l| inc.line_points[l].len()).collect();
            s.sort_unstable();
            s
        })
        .collect();
    (join, signatures, sizes)
}

impl Context {
    fn new(a1: &Arrangement, a2: &Arrangement) -> Self {
        let (join1, signature1, size1) = joins(a1);
        let (join2, signature2, size2) = joins(a2);
        let inc2 = a2.incidences();
        Context {
            k: a1.num_points(),
            join1,
            join2,
            size1,
            size2,
            signature1,
            signature2,
            lines1: a1.incidences().line_points,
            line_of_set2: inc2
                .line_points
                .into_iter()
                .enumerate()
                .map(|(l, pts)| (pts, l))
                .collect(),
        }
    }

    /// Calls `visit` with every incidence isomorphism until it returns true.
    fn for_each_isomorphism(&self, visit: &mut dyn FnMut(&[usize], &[usize]) -> bool) {
        let mut map = Vec::with_capacity(self.k);
        let mut used = vec![false; self.k];
        self.extend(&mut map, &mut used, visit);
    }

    fn extend(
        &self,
        map: &mut Vec<usize>,
        used: &mut [bool],
        visit: &mut dyn FnMut(&[usize], &[usize]) -> bool,
    ) -> bool {
        let p = map.len();
        if p == self.k {
            let line_map: Option<Vec<usize>> = self
                .lines1
                .iter()
                .map(|pts| {
                    let mut img: Vec<usize> = pts.iter().map(|&q| map[q]).collect();
                    img.sort_unstable();
                    self.line_of_set2.get(&img).copied()
                })
                .collect();
            return match line_map {
                Some(lm) => visit(map, &lm),
                None => false,
            };
        }
        for cand in 0..self.k {
            if used[cand] || self.signature1[p] != self.signature2[cand] {
                continue;
            }
            let consistent = (0..p).all(|q| match (self.join1[p][q], self.join2[cand][map[q]]) {
                (None, None) => true,
                (Some(l1), Some(l2)) => self.size1[l1] == self.size2[l2],
                _ => false,
            });
            if !consistent {
                continue;
            }
            used[cand] = true;
            map.push(cand);
            if self.extend(map, used, visit) {
                return true;
            }
            map.pop();
            used[cand] = false;
        }
        false
    }
}

/// Reduced row echelon solve of `rows · x = rhs`. Returns a particular
/// solution and a basis of the null space, or `None` when inconsistent.
fn solve_linear(
    mut rows: Vec<Vec<Rational>>,
    mut rhs: Vec<Rational>,
    dim: usize,
) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..dim {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        rhs.swap(r, piv);
        let inv = Rational::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        rhs[r] = &rhs[r] * &inv;
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..dim {
                    let d = &f * &rows[r][j];
                    rows[i][j] -= d;
                }
                let d = &f * &rhs[r];
                rhs[i] -= d;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    if rhs[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut particular = vec![Rational::zero(); dim];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = rhs[i].clone();
    }
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); dim];
            v[f] = Rational::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -rows[i][f].clone();
            }
            v
        })
        .collect();
    Some((particular, basis))
}

fn big(x: &num_bigint::BigInt) -> Rational {
    Rational::from_integer(x.clone())
}

fn direction(l: &Line) -> (Rational, Rational) {
    let s = l.slope();
    (big(s.dx()), big(s.dy()))
}

fn det3(m: &[[Rational; 3]; 3]) -> Rational {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

fn image_line(m: &[[Rational; 3]; 3], l: &Line) -> Option<Line> {
    // lines transform by the inverse transpose, proportional to the adjugate transpose
    let cof = |r: usize, c: usize| {
        let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..3).filter(|&j| j != c).collect();
        let minor = &m[rows[0]][cols[0]] * &m[rows[1]][cols[1]] - &m[rows[0]][cols[1]] * &m[rows[1]][cols[0]];
        if (r + c) % 2 == 0 {
            minor
        } else {
            -minor
        }
    };
    let v = [big(l.a()), big(l.b()), -big(l.c())];
    // (adj M)^T = cofactor matrix
    let img: Vec<Rational> = (0..3)
        .map(|i| (0..3).map(|j| cof(i, j) * &v[j]).fold(Rational::zero(), |acc, x| acc + x))
        .collect();
    if img[0].is_zero() && img[1].is_zero() {
        return None;
    }
    Line::from_rationals(&img[0], &img[1], &-img[2].clone()).ok()
}

fn carries_onto(m: &[[Rational; 3]; 3], a1: &Arrangement, a2: &Arrangement, point_map: &[usize]) -> bool {
    if det3(m).is_zero() {
        return false;
    }
    let t = Transformation {
        mode: EquivalenceMode::Projective,
        matrix: m.clone(),
        point_map: Vec::new(),
    };
    for (i, p) in a1.points().iter().enumerate() {
        match t.apply(p) {
            Some(img) if img == a2.points()[point_map[i]] => {}
            _ => return false,
        }
    }
    let mut lines: Vec<Line> = Vec::with_capacity(a1.num_lines());
    for l in a1.lines() {
        match image_line(m, l) {
            Some(img) => lines.push(img),
            None => return false,
        }
    }
    lines.sort();
    lines == a2.lines()
}

fn solve_for_map(
    a1: &Arrangement,
    a2: &Arrangement,
    mode: EquivalenceMode,
    point_map: &[usize],
    line_map: &[usize],
) -> Option<Transformation> {
    let zero = Rational::zero;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    let dim = match mode {
        EquivalenceMode::Affine => 6,
        EquivalenceMode::Projective => 9,
    };
    for (i, p) in a1.points().iter().enumerate() {
        let q = &a2.points()[point_map[i]];
        match mode {
            EquivalenceMode::Affine => {
                rows.push(vec![p.x.clone(), p.y.clone(), Rational::one(), zero(), zero(), zero()]);
                rhs.push(q.x.clone());
                rows.push(vec![zero(), zero(), zero(), p.x.clone(), p.y.clone(), Rational::one()]);
                rhs.push(q.y.clone());
            }
            EquivalenceMode::Projective => {
                let one = Rational::one();
                rows.push(vec![
                    p.x.clone(),
                    p.y.clone(),
                    one.clone(),
                    zero(),
                    zero(),
                    zero(),
                    -&q.x * &p.x,
                    -&q.x * &p.y,
                    -q.x.clone(),
                ]);
                rows.push(vec![
                    zero(),
                    zero(),
                    zero(),
                    p.x.clone(),
                    p.y.clone(),
                    one,
                    -&q.y * &p.x,
                    -&q.y * &p.y,
                    -q.y.clone(),
                ]);
                rhs.push(zero());
                rhs.push(zero());
            }
        }
    }
    for (l, target) in a1.lines().iter().zip(line_map) {
        let target = &a2.lines()[*target];
        let (dx, dy) = direction(l);
        match mode {
            EquivalenceMode::Affine => {
                let (ex, ey) = direction(target);
                rows.push(vec![&dx * &ey, &dy * &ey, zero(), -&dx * &ex, -&dy * &ex, zero()]);
            }
            EquivalenceMode::Projective => {
                // the point at infinity of l must land on the target line
                let v = [big(target.a()), big(target.b()), -big(target.c())];
                let mut row = Vec::with_capacity(9);
                for vi in &v {
                    row.push(vi * &dx);
                    row.push(vi * &dy);
                    row.push(zero());
                }
                rows.push(row);
            }
        }
        rhs.push(zero());
    }

    let (particular, basis) = solve_linear(rows, rhs, dim)?;
    if mode == EquivalenceMode::Projective && basis.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for attempt in 0..12 {
        let mut x = particular.clone();
        for (bi, b) in basis.iter().enumerate() {
            let coeff = if attempt == 0 {
                if mode == EquivalenceMode::Projective && bi == 0 {
                    Rational::one()
                } else {
                    zero()
                }
            } else {
                Rational::from_integer(rng.gen_range(-9i64..=9).into())
            };
            for (xi, bv) in x.iter_mut().zip(b) {
                *xi += &coeff * bv;
            }
        }
        let m = match mode {
            EquivalenceMode::Affine => [
                [x[0].clone(), x[1].clone(), x[2].clone()],
                [x[3].clone(), x[4].clone(), x[5].clone()],
                [zero(), zero(), Rational::one()],
            ],
            EquivalenceMode::Projective => [
                [x[0].clone(), x[1].clone(), x[2].clone()],
                [x[3].clone(), x[4].clone(), x[5].clone()],
                [x[6].clone(), x[7].clone(), x[8].clone()],
            ],
        };
        if carries_onto(&m, a1, a2, point_map) {
            return Some(Transformation {
                mode,
                matrix: m,
                point_map: point_map.to_vec(),
            });
        }
        if basis.is_empty() {
            break;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{generate_family, FamilyKind};
    use crate::geometry::{int, rat};

    fn b1_realization() -> Arrangement {
        Arrangement::from_lines(vec![
            Line::from_i64(0, 1, 0),
            Line::from_i64(1, -1, 0),
            Line::from_i64(3, -2, 3),
            Line::from_i64(3, -2, 6),
            Line::from_i64(6, -5, 6),
        ])
        .unwrap()
    }

    #[test]
    fn triangles_are_affinely_equivalent() {
        let t1 = Arrangement::from_lines(vec![
            Line::from_i64(1, 0, 0),
            Line::from_i64(0, 1, 0),
            Line::from_i64(1, 1, 1),
        ])
        .unwrap();
        let t2 = Arrangement::from_lines(vec![
            Line::from_i64(1, 0, 0),
            Line::from_i64(0, 1, 0),
            Line::from_i64(1, 2, 2),
        ])
        .unwrap();
        let w = projective_equivalent(&t1, &t2, EquivalenceMode::Affine).unwrap().unwrap();
        for (i, p) in t1.points().iter().enumerate() {
            assert_eq!(w.apply(p).unwrap(), t2.points()[w.point_map[i]]);
        }
    }

    #[test]
    fn b1_affine_image() {
        let a = b1_realization();
        let img = a.map_affine([[int(2), int(0), int(0)], [int(0), int(1), int(1)]]);
        let w = projective_equivalent(&a, &img, EquivalenceMode::Affine).unwrap();
        assert!(w.is_some());
        let w = projective_equivalent(&a, &img, EquivalenceMode::Projective).unwrap();
        assert!(w.is_some());
    }

    #[test]
    fn families_are_not_equivalent() {
        let rt = generate_family(FamilyKind::Railtrack, 4).unwrap();
        let anp = generate_family(FamilyKind::AugmentedNearPencil, 4).unwrap();
        assert_eq!(projective_equivalent(&rt, &anp, EquivalenceMode::Affine).unwrap(), None);
        assert_eq!(projective_equivalent(&rt, &anp, EquivalenceMode::Projective).unwrap(), None);
    }

    #[test]
    fn collinear_marks_still_solve() {
        let rt = generate_family(FamilyKind::Railtrack, 4).unwrap();
        let img = rt.map_affine([[int(3), int(1), int(2)], [int(1), rat(1, 2), int(0)]]);
        assert!(projective_equivalent(&rt, &img, EquivalenceMode::Affine).unwrap().is_some());

        // marks at 1,2,3,5 on the base: the ratio along the base differs
        let other = Arrangement::from_lines(vec![
            Line::from_i64(0, 1, 0),
            Line::from_i64(1, 0, 1),
            Line::from_i64(1, 0, 2),
            Line::from_i64(1, 0, 3),
            Line::from_i64(1, 0, 5),
        ])
        .unwrap();
        assert!(projective_equivalent(&rt, &other, EquivalenceMode::Affine).unwrap().is_none());
    }

    #[test]
    fn projective_witness_on_square() {
        let square = Arrangement::from_lines(vec![
            Line::from_i64(1, 0, 1),
            Line::from_i64(1, 0, -1),
            Line::from_i64(0, 1, 1),
            Line::from_i64(0, 1, -1),
            Line::from_i64(1, -1, 0),
            Line::from_i64(1, 1, 0),
        ])
        .unwrap();
        let img = square.map_affine([[int(1), int(2), int(3)], [int(0), int(1), rat(-1, 4)]]);
        let w = projective_equivalent(&square, &img, EquivalenceMode::Projective)
            .unwrap()
            .unwrap();
        assert!(!det3(&w.matrix).is_zero());
        for (i, p) in square.points().iter().enumerate() {
            assert_eq!(w.apply(p).unwrap(), img.points()[w.point_map[i]]);
        }
        let mut lines: Vec<Line> = square.lines().iter().map(|l| image_line(&w.matrix, l).unwrap()).collect();
        lines.sort();
        assert_eq!(lines, img.lines());
        // a map that pulls a parallel class to a finite point breaks rule 2 on the image
        let m = [
            [int(1), int(0), int(0)],
            [int(0), int(1), int(0)],
            [rat(1, 5), int(0), int(1)],
        ];
        let pulled: Vec<Line> = square.lines().iter().map(|l| image_line(&m, l).unwrap()).collect();
        let pulled = Arrangement::from_lines(pulled).unwrap();
        assert_eq!(pulled.num_points(), 6);
        assert!(projective_equivalent(&square, &pulled, EquivalenceMode::Projective).unwrap().is_none());
    }

    #[test]
    fn too_few_marks() {
        let p = crate::arrangement::pencil(3);
        assert!(matches!(
            projective_equivalent(&p, &p, EquivalenceMode::Affine),
            Err(Error::UnsupportedDegenerate { required: 3, .. })
        ));
        let tri = generate_family(FamilyKind::NearPencil, 3).unwrap();
        assert!(matches!(
            projective_equivalent(&tri, &tri, EquivalenceMode::Projective),
            Err(Error::UnsupportedDegenerate { required: 4, .. })
        ));
    }
}
