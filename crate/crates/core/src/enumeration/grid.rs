//! Sampling oracle: arrangements built from lines through points of a small
//! integer grid.

use std::collections::{BTreeSet, HashMap};

use crate::geometry::{intersect, line_through, Line, Point};
use crate::invariants::{CanonicalCode, IncidenceStructure};

/// Every line through two points of the `g × g` grid, sorted.
pub fn grid_lines(g: usize) -> Vec<Line> {
    let pts: Vec<Point> = (0..g as i64)
        .flat_map(|x| (0..g as i64).map(move |y| Point::from_ints(x, y)))
        .collect();
    let mut lines = BTreeSet::new();
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            lines.insert(line_through(p, q).expect("distinct grid points"));
        }
    }
    lines.into_iter().collect()
}

struct Oracle {
    k: usize,
    n_max: usize,
    /// Crossing ids on each grid line.
    on_line: Vec<Vec<usize>>,
    /// Chosen lines through each crossing.
    count: Vec<usize>,
    marks: usize,
    chosen: Vec<usize>,
    codes: BTreeSet<CanonicalCode>,
}

impl Oracle {
    fn record(&mut self) {
        let mut id = HashMap::new();
        let line_points = self
            .chosen
            .iter()
            .map(|&l| {
                self.on_line[l]
                    .iter()
                    .filter(|&&p| self.count[p] >= 2)
                    .map(|&p| {
                        let next = id.len();
                        *id.entry(p).or_insert(next)
                    })
                    .collect()
            })
            .collect();
        let s = IncidenceStructure::new(self.k, line_points);
        self.codes.insert(s.canonical_code());
    }

    fn search(&mut self, from: usize) {
        if self.marks == self.k && self.chosen.len() >= 2 {
            self.record();
        }
        if self.chosen.len() == self.n_max {
            return;
        }
        for l in from..self.on_line.len() {
            let mut added = 0;
            for &p in &self.on_line[l] {
                self.count[p] += 1;
                if self.count[p] == 2 {
                    added += 1;
                }
            }
            // marks only accumulate, so an overfull set stays overfull
            if self.marks + added <= self.k {
                self.marks += added;
                self.chosen.push(l);
                self.search(l + 1);
                self.chosen.pop();
                self.marks -= added;
            }
            for &p in &self.on_line[l] {
                self.count[p] -= 1;
            }
        }
    }
}

/// Incidence classes with exactly `k` marks among arrangements of at most
/// `n_max` lines through pairs of points of the `g × g` grid.
///
/// Panics if `g < 3`.
pub fn grid_oracle(k: usize, g: usize, n_max: usize) -> Vec<CanonicalCode> {
    assert!(g >= 3, "grid must be at least 3 × 3");
    let lines = grid_lines(g);
    let mut ids: HashMap<Point, usize> = HashMap::new();
    let mut on_line = vec![Vec::new(); lines.len()];
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if let Some(p) = intersect(&lines[i], &lines[j]).expect("distinct lines") {
                let next = ids.len();
                let id = *ids.entry(p).or_insert(next);
                for l in [i, j] {
                    if !on_line[l].contains(&id) {
                        on_line[l].push(id);
                    }
                }
            }
        }
    }
    let mut oracle = Oracle {
        k,
        n_max,
        on_line,
        count: vec![0; ids.len()],
        marks: 0,
        chosen: Vec::new(),
        codes: BTreeSet::new(),
    };
    oracle.search(0);
    oracle.codes.into_iter().collect()
}
