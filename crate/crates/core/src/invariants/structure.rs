//! Linear spaces, the de Bruijn–Erdős bound and family recognition.

use std::fmt;

use crate::arrangement::{Arrangement, FamilyKind};
use crate::error::{Error, Result};

/// True when every line carries at least two marks and every pair of
/// distinct marks lies on a common line. Needs at least two marks.
pub fn is_linear_space(a: &Arrangement) -> bool {
    let k = a.num_points();
    if k < 2 {
        return false;
    }
    let inc = a.incidences();
    if inc.line_points.iter().any(|pts| pts.len() < 2) {
        return false;
    }
    let mut joined = vec![vec![false; k]; k];
    for pts in &inc.line_points {
        for (i, &p) in pts.iter().enumerate() {
            for &q in &pts[i + 1..] {
                joined[p][q] = true;
                joined[q][p] = true;
            }
        }
    }
    (0..k).all(|p| (p + 1..k).all(|q| joined[p][q]))
}

/// Returns the apex if the lines form a near-pencil on `k` marks.
fn near_pencil_apex(lines: &[&Vec<usize>], k: usize) -> Option<usize> {
    if lines.len() != k || k < 3 {
        return None;
    }
    lines.iter().find_map(|base| {
        if base.len() != k - 1 {
            return None;
        }
        let apex = (0..k).find(|p| base.binary_search(p).is_err())?;
        let spokes_ok = lines
            .iter()
            .filter(|l| !std::ptr::eq(**l, *base))
            .all(|l| l.len() == 2 && l.binary_search(&apex).is_ok());
        spokes_ok.then_some(apex)
    })
}

/// Recognizes the three named families from incidences alone.
pub fn classify(a: &Arrangement) -> Result<Option<FamilyKind>> {
    let k = a.num_points();
    if k < 3 {
        return Err(Error::TooFewPoints { required: 3, found: k });
    }
    let inc = a.incidences();
    let lines: Vec<&Vec<usize>> = inc.line_points.iter().collect();
    let n = lines.len();

    if near_pencil_apex(&lines, k).is_some() {
        return Ok(Some(FamilyKind::NearPencil));
    }
    if n == k + 1 {
        let singles: Vec<usize> = (0..n).filter(|&l| lines[l].len() == 1).collect();
        if singles.len() == k && lines.iter().any(|l| l.len() == k) {
            return Ok(Some(FamilyKind::Railtrack));
        }
        for &extra in &singles {
            let rest: Vec<&Vec<usize>> = (0..n).filter(|&l| l != extra).map(|l| lines[l]).collect();
            if near_pencil_apex(&rest, k) == Some(lines[extra][0]) {
                return Ok(Some(FamilyKind::AugmentedNearPencil));
            }
        }
    }
    Ok(None)
}

/// How a linear space with `n = k` lines meets the equality case.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EqualityCase {
    NearPencil,
    /// Every line has `q + 1` marks and every mark lies on `q + 1` lines.
    /// Euclidean lines should never produce this.
    ProjectivePlane,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeBruijnErdosReport {
    pub k: usize,
    pub n: usize,
    pub linear_space: bool,
    /// `n >= k`; only meaningful for linear spaces.
    pub bound_holds: Option<bool>,
    pub equality_case: Option<EqualityCase>,
}

impl DeBruijnErdosReport {
    /// A linear space that breaks the bound or lands in an unexpected
    /// equality case.
    pub fn is_anomaly(&self) -> bool {
        self.bound_holds == Some(false)
            || matches!(
                self.equality_case,
                Some(EqualityCase::ProjectivePlane | EqualityCase::Neither)
            )
    }
}

impl fmt::Display for DeBruijnErdosReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.linear_space {
            return write!(f, "not a linear space; bound not applicable");
        }
        let mark = if self.bound_holds == Some(true) { "✓" } else { "✗" };
        write!(f, "n ≥ k: {} ≥ {} {}", self.n, self.k, mark)?;
        match self.equality_case {
            Some(EqualityCase::NearPencil) => write!(f, " (equality: near-pencil)"),
            Some(EqualityCase::ProjectivePlane) => write!(f, " (equality: projective plane, ANOMALY)"),
            Some(EqualityCase::Neither) => write!(f, " (equality without near-pencil structure, ANOMALY)"),
            None => Ok(()),
        }
    }
}

pub fn debruijn_erdos_check(a: &Arrangement) -> Result<DeBruijnErdosReport> {
    let k = a.num_points();
    if k < 3 {
        return Err(Error::TooFewPoints { required: 3, found: k });
    }
    let n = a.num_lines();
    let linear_space = is_linear_space(a);
    let mut report = DeBruijnErdosReport {
        k,
        n,
        linear_space,
        bound_holds: None,
        equality_case: None,
    };
    if !linear_space {
        return Ok(report);
    }
    report.bound_holds = Some(n >= k);
    if n == k {
        let inc = a.incidences();
        let lines: Vec<&Vec<usize>> = inc.line_points.iter().collect();
        report.equality_case = Some(if near_pencil_apex(&lines, k).is_some() {
            EqualityCase::NearPencil
        } else {
            let size = lines[0].len();
            let uniform_lines = lines.iter().all(|l| l.len() == size);
            let uniform_points = inc.point_lines.iter().all(|l| l.len() == size);
            let q = size.saturating_sub(1);
            if uniform_lines && uniform_points && k == q * q + q + 1 {
                EqualityCase::ProjectivePlane
            } else {
                EqualityCase::Neither
            }
        });
    }
    Ok(report)
}
