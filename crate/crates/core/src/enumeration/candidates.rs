//! Abstract incidence structures that could be arrangements.
//!
//! Lines are split into parallel classes first. Every point is a set of at
//! least two lines from distinct classes, and every pair of lines from
//! different classes must share exactly one point. Finding the points is an
//! exact cover of the cross-class line pairs, solved by always branching on
//! the lowest uncovered pair.

use std::collections::BTreeMap;

use crate::invariants::{CanonicalCode, IncidenceStructure};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractCandidate {
    pub n: usize,
    pub k: usize,
    /// Canonically labeled.
    pub incidences: IncidenceStructure,
    /// Lines sharing no point, as sorted index lists, largest class first.
    pub parallel_classes: Vec<Vec<usize>>,
    pub code: CanonicalCode,
}

impl AbstractCandidate {
    /// Checks the candidate invariants and relabels canonically.
    pub fn from_structure(s: &IncidenceStructure) -> Option<Self> {
        parallel_classes(s)?;
        if s.point_lines().iter().any(|ls| ls.len() < 2) {
            return None;
        }
        let form = s.canonical_form();
        let canon = s.relabeled(&form.point_order, &form.line_order);
        let classes = parallel_classes(&canon).expect("relabeling preserves classes");
        Some(AbstractCandidate {
            n: s.num_lines(),
            k: s.num_points(),
            incidences: canon,
            parallel_classes: classes,
            code: form.code,
        })
    }

    pub fn class_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.n];
        for (c, ls) in self.parallel_classes.iter().enumerate() {
            for &l in ls {
                out[l] = c;
            }
        }
        out
    }
}

/// Classes of the "shares no point" relation, or `None` if some pair of
/// lines shares two points, the relation is not transitive, or a line
/// carries no point.
pub fn parallel_classes(s: &IncidenceStructure) -> Option<Vec<Vec<usize>>> {
    let n = s.num_lines();
    if s.line_points().iter().any(|p| p.is_empty()) && s.num_points() > 0 {
        return None;
    }
    let mut class: Vec<Option<usize>> = vec![None; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if class[i].is_some() {
            continue;
        }
        let members: Vec<usize> = (i..n).filter(|&j| j == i || s.common_points(i, j) == 0).collect();
        for &a in &members {
            if class[a].is_some() {
                return None;
            }
            class[a] = Some(classes.len());
        }
        classes.push(members);
    }
    for i in 0..n {
        for j in i + 1..n {
            let shared = s.common_points(i, j);
            let same = class[i] == class[j];
            if (same && shared != 0) || (!same && shared != 1) {
                return None;
            }
        }
    }
    classes.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    Some(classes)
}

/// Partitions of `n` into at least two parts, parts in non-increasing order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            if cur.len() >= 2 {
                out.push(cur.clone());
            }
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

struct CoverSearch<'a> {
    n: usize,
    k: usize,
    class_of: &'a [usize],
    max_pairs_per_row: usize,
    covered: Vec<Vec<bool>>,
    uncovered: usize,
    rows: Vec<Vec<usize>>,
    found: &'a mut BTreeMap<CanonicalCode, AbstractCandidate>,
}

impl CoverSearch<'_> {
    fn lowest_uncovered(&self) -> Option<(usize, usize)> {
        (0..self.n).find_map(|i| {
            (i + 1..self.n)
                .find(|&j| self.class_of[i] != self.class_of[j] && !self.covered[i][j])
                .map(|j| (i, j))
        })
    }

    fn set_row(&mut self, row: &[usize], value: bool) {
        for (x, &a) in row.iter().enumerate() {
            for &b in &row[x + 1..] {
                self.covered[a][b] = value;
                self.covered[b][a] = value;
            }
        }
        let pairs = row.len() * (row.len() - 1) / 2;
        if value {
            self.uncovered -= pairs;
        } else {
            self.uncovered += pairs;
        }
    }

    fn search(&mut self) {
        let left = self.k - self.rows.len();
        if self.uncovered == 0 {
            if left == 0 {
                let s = IncidenceStructure::new(self.k, self.line_points());
                if let Some(c) = AbstractCandidate::from_structure(&s) {
                    self.found.entry(c.code.clone()).or_insert(c);
                }
            }
            return;
        }
        if left == 0 || self.uncovered < left || self.uncovered > left * self.max_pairs_per_row {
            return;
        }
        let (i, j) = self.lowest_uncovered().expect("uncovered > 0");
        let mut row = vec![i, j];
        self.extend_row(&mut row, j + 1);
    }

    /// Tries `row` as a point, then every way of adding lines `>= from`.
    fn extend_row(&mut self, row: &mut Vec<usize>, from: usize) {
        self.set_row(row, true);
        self.rows.push(row.clone());
        self.search();
        self.rows.pop();
        self.set_row(row, false);

        for l in from..self.n {
            let fits = row
                .iter()
                .all(|&r| self.class_of[r] != self.class_of[l] && !self.covered[r][l]);
            if fits {
                row.push(l);
                self.extend_row(row, l + 1);
                row.pop();
            }
        }
    }

    fn line_points(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n];
        for (p, row) in self.rows.iter().enumerate() {
            for &l in row {
                out[l].push(p);
            }
        }
        out
    }
}

/// Every abstract candidate with `k` points and `n` lines, one per
/// isomorphism class, ordered by canonical code.
pub fn abstract_candidates(k: usize, n: usize) -> Vec<AbstractCandidate> {
    let mut found = BTreeMap::new();
    if k < 1 || n < 2 {
        return Vec::new();
    }
    for sizes in partitions(n) {
        let m = sizes.len();
        let class_of: Vec<usize> = sizes
            .iter()
            .enumerate()
            .flat_map(|(c, &size)| std::iter::repeat(c).take(size))
            .collect();
        let total: usize = (0..m)
            .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
            .map(|(a, b)| sizes[a] * sizes[b])
            .sum();
        let mut search = CoverSearch {
            n,
            k,
            class_of: &class_of,
            max_pairs_per_row: m * (m - 1) / 2,
            covered: vec![vec![false; n]; n],
            uncovered: total,
            rows: Vec::new(),
            found: &mut found,
        };
        search.search();
    }
    found.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_of_four() {
        assert_eq!(
            partitions(4),
            vec![vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        );
    }

    #[test]
    fn small_cells() {
        assert_eq!(abstract_candidates(2, 3).len(), 1);
        assert_eq!(abstract_candidates(3, 3).len(), 1);
        assert_eq!(abstract_candidates(3, 5).len(), 0);
        assert_eq!(abstract_candidates(2, 2).len(), 0);
        assert_eq!(abstract_candidates(1, 4).len(), 1);
        let c = &abstract_candidates(2, 3)[0];
        assert_eq!(c.parallel_classes.len(), 2);
        assert_eq!(c.parallel_classes[0].len(), 2);
    }

    #[test]
    fn rejects_bad_structures() {
        // two lines sharing two points
        let s = IncidenceStructure::new(2, vec![vec![0, 1], vec![0, 1]]);
        assert!(AbstractCandidate::from_structure(&s).is_none());
        // line 0 misses lines 1 and 3, which meet each other
        let s = IncidenceStructure::new(2, vec![vec![0], vec![1], vec![0], vec![1]]);
        assert!(parallel_classes(&s).is_none());
    }
}
