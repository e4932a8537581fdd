//! Comparison measures for arrangements.
//!
//! Measures are layered from coarse to fine: the summary triple `(n k s)`,
//! the line/slope/point type vectors, per-mark degree types, the incidence
//! class (canonical code), and finally the central signature, which needs
//! betweenness and so separates arrangements that share incidences.

mod canon;
mod central;
mod projective;
mod structure;

use std::collections::BTreeSet;
use std::fmt;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::geometry::{Point, Slope};

pub use canon::{CanonicalCode, CanonicalForm, IncidenceStructure};
pub use central::{canonical_cyclic, canonical_signature, central_signature, find_centrexes, CentralSignature};
pub use projective::{projective_equivalent, EquivalenceMode, Transformation};
pub use structure::{classify, debruijn_erdos_check, is_linear_space, DeBruijnErdosReport, EqualityCase};

/// `(n k s)`: lines, marks, distinct slopes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SummaryTriple {
    pub n: usize,
    pub k: usize,
    pub s: usize,
}

impl fmt::Display for SummaryTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {} {})", self.n, self.k, self.s)
    }
}

pub fn distinct_slopes(a: &Arrangement) -> BTreeSet<Slope> {
    a.lines().iter().map(|l| l.slope()).collect()
}

pub fn summary_triple(a: &Arrangement) -> SummaryTriple {
    SummaryTriple {
        n: a.num_lines(),
        k: a.num_points(),
        s: distinct_slopes(a).len(),
    }
}

/// Line, slope and point type vectors.
///
/// All three are indexed by the count itself: `line_type[u]` is the number
/// of lines with exactly `u` marks, `slope_type[v]` the number of distinct
/// slopes among `v`-mark lines, `point_type[j]` the number of marks on
/// exactly `j` lines (so entries 0 and 1 of `point_type` are always zero).
/// Trailing zeros are trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TypeVectors {
    pub line_type: Vec<usize>,
    pub slope_type: Vec<usize>,
    pub point_type: Vec<usize>,
}

fn trim(mut v: Vec<usize>) -> Vec<usize> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

impl TypeVectors {
    /// `(t_1, t_2, ...)` as printed in reports.
    pub fn t_from_one(&self) -> &[usize] {
        self.line_type.get(1..).unwrap_or(&[])
    }

    pub fn s_from_one(&self) -> &[usize] {
        self.slope_type.get(1..).unwrap_or(&[])
    }

    /// `(p_2, p_3, ...)` as printed in reports.
    pub fn p_from_two(&self) -> &[usize] {
        self.point_type.get(2..).unwrap_or(&[])
    }

    /// Lines without marks (only possible when every line is parallel).
    pub fn t_zero(&self) -> usize {
        self.line_type.first().copied().unwrap_or(0)
    }

    /// Pads all three vectors with zeros to a common length.
    pub fn padded(&self, len: usize) -> TypeVectors {
        let len = len
            .max(self.line_type.len())
            .max(self.slope_type.len())
            .max(self.point_type.len());
        let pad = |v: &Vec<usize>| {
            let mut v = v.clone();
            v.resize(len, 0);
            v
        };
        TypeVectors {
            line_type: pad(&self.line_type),
            slope_type: pad(&self.slope_type),
            point_type: pad(&self.point_type),
        }
    }
}

fn fmt_vec(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

impl fmt::Display for TypeVectors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line type {}  slope type {}  point type {}",
            fmt_vec(self.t_from_one()),
            fmt_vec(self.s_from_one()),
            fmt_vec(self.p_from_two())
        )?;
        if self.t_zero() > 0 {
            write!(f, "  [t_0 = {}]", self.t_zero())?;
        }
        Ok(())
    }
}

pub fn type_vectors(a: &Arrangement) -> TypeVectors {
    let inc = a.incidences();
    let mut line_type = vec![0; a.num_points() + 1];
    let mut slopes_by_size: Vec<BTreeSet<Slope>> = vec![BTreeSet::new(); a.num_points() + 1];
    for (l, pts) in a.lines().iter().zip(&inc.line_points) {
        line_type[pts.len()] += 1;
        slopes_by_size[pts.len()].insert(l.slope());
    }
    let mut point_type = vec![0; a.num_lines() + 1];
    for lines in &inc.point_lines {
        point_type[lines.len()] += 1;
    }
    TypeVectors {
        line_type: trim(line_type),
        slope_type: trim(slopes_by_size.iter().map(BTreeSet::len).collect()),
        point_type: trim(point_type),
    }
}

/// Point-line degree type of a mark: its degree and `([p]_1, ..., [p]_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegreeType {
    pub point: Point,
    pub degree: usize,
    /// `by_line_size[u - 1]` counts the `u`-mark lines through the point.
    pub by_line_size: Vec<usize>,
}

impl fmt::Display for DegreeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} degree {} type {}", self.point, self.degree, fmt_vec(&self.by_line_size))
    }
}

pub fn point_line_degree_type(a: &Arrangement, p: &Point) -> Result<DegreeType> {
    let idx = a.point_index(p).ok_or_else(|| Error::UnknownPoint(p.clone()))?;
    Ok(degree_types(a).swap_remove(idx))
}

/// Degree types of all marks, in point order.
pub fn degree_types(a: &Arrangement) -> Vec<DegreeType> {
    let inc = a.incidences();
    let k = a.num_points();
    a.points()
        .iter()
        .zip(&inc.point_lines)
        .map(|(p, lines)| {
            let mut by_line_size = vec![0; k];
            for &l in lines {
                let u = inc.line_points[l].len();
                by_line_size[u - 1] += 1;
            }
            DegreeType {
                point: p.clone(),
                degree: lines.len(),
                by_line_size,
            }
        })
        .collect()
}

pub fn incidence_structure(a: &Arrangement) -> IncidenceStructure {
    IncidenceStructure::from_arrangement(a)
}

pub fn canonical_code(a: &Arrangement) -> CanonicalCode {
    incidence_structure(a).canonical_code()
}

/// Incidence-preserving relabeling between two arrangements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    /// `point_map[i]` is the index (in the second arrangement) of the image
    /// of point `i` of the first.
    pub point_map: Vec<usize>,
    pub line_map: Vec<usize>,
}

fn compose(first: &[usize], second: &[usize]) -> Vec<usize> {
    let mut map = vec![0; first.len()];
    for (&a, &b) in first.iter().zip(second) {
        map[a] = b;
    }
    map
}

pub fn structures_isomorphic(s1: &IncidenceStructure, s2: &IncidenceStructure) -> Option<Isomorphism> {
    let (c1, c2) = (s1.canonical_form(), s2.canonical_form());
    (c1.code == c2.code).then(|| Isomorphism {
        point_map: compose(&c1.point_order, &c2.point_order),
        line_map: compose(&c1.line_order, &c2.line_order),
    })
}

pub fn is_isomorphic(a1: &Arrangement, a2: &Arrangement) -> Option<Isomorphism> {
    structures_isomorphic(&incidence_structure(a1), &incidence_structure(a2))
}

/// Recomputes `(n, k, s)` and the type vectors from incidences alone:
/// two lines are parallel exactly when they share no mark.
pub fn measures_from_incidence(s: &IncidenceStructure) -> (SummaryTriple, TypeVectors) {
    let n = s.num_lines();
    let k = s.num_points();
    // union-find over "shares no point"
    let mut class: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in i + 1..n {
            if s.common_points(i, j) == 0 {
                let (ci, cj) = (class[i], class[j]);
                for c in class.iter_mut() {
                    if *c == cj {
                        *c = ci;
                    }
                }
            }
        }
    }
    let slopes: BTreeSet<usize> = class.iter().copied().collect();
    let mut line_type = vec![0; k + 1];
    let mut slopes_by_size: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k + 1];
    for (l, pts) in s.line_points().iter().enumerate() {
        line_type[pts.len()] += 1;
        slopes_by_size[pts.len()].insert(class[l]);
    }
    let mut point_type = vec![0; n + 1];
    for lines in s.point_lines() {
        point_type[lines.len()] += 1;
    }
    (
        SummaryTriple { n, k, s: slopes.len() },
        TypeVectors {
            line_type: trim(line_type),
            slope_type: trim(slopes_by_size.iter().map(BTreeSet::len).collect()),
            point_type: trim(point_type),
        },
    )
}
