//! Canonical labeling of point-line incidence structures.
//!
//! The structure is treated as a bipartite graph (points first, then lines)
//! and labeled by individualization-refinement: an equitable partition is
//! refined, a vertex of the first non-singleton cell is individualized, and
//! the search recurses. Every discrete leaf yields an incidence matrix; the
//! lexicographically smallest one is the canonical code. Leaves that match
//! an earlier leaf give automorphisms, which prune equivalent branches.

use std::fmt;

use crate::arrangement::Arrangement;

/// Abstract incidences between `num_points` points and `num_lines` lines.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IncidenceStructure {
    num_points: usize,
    line_points: Vec<Vec<usize>>,
}

impl IncidenceStructure {
    /// `line_points[l]` lists the points on line `l`. Lists are sorted and
    /// deduplicated.
    ///
    /// Panics if a point index is out of range.
    pub fn new(num_points: usize, mut line_points: Vec<Vec<usize>>) -> Self {
        for pts in &mut line_points {
            pts.sort_unstable();
            pts.dedup();
            assert!(pts.iter().all(|&p| p < num_points), "point index out of range");
        }
        IncidenceStructure {
            num_points,
            line_points,
        }
    }

    pub fn from_arrangement(a: &Arrangement) -> Self {
        IncidenceStructure::new(a.num_points(), a.incidences().line_points)
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn num_lines(&self) -> usize {
        self.line_points.len()
    }

    pub fn line_points(&self) -> &[Vec<usize>] {
        &self.line_points
    }

    pub fn point_lines(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_points];
        for (l, pts) in self.line_points.iter().enumerate() {
            for &p in pts {
                out[p].push(l);
            }
        }
        out
    }

    pub fn is_incident(&self, point: usize, line: usize) -> bool {
        self.line_points[line].binary_search(&point).is_ok()
    }

    /// All `(point, line)` incidence pairs in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self
            .line_points
            .iter()
            .enumerate()
            .flat_map(|(l, pts)| pts.iter().map(move |&p| (p, l)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Number of points shared by two lines.
    pub fn common_points(&self, l1: usize, l2: usize) -> usize {
        let (a, b) = (&self.line_points[l1], &self.line_points[l2]);
        a.iter().filter(|p| b.binary_search(p).is_ok()).count()
    }

    /// Relabels points and lines: new point `i` is old `point_order[i]`, new
    /// line `j` is old `line_order[j]`.
    pub fn relabeled(&self, point_order: &[usize], line_order: &[usize]) -> Self {
        let mut new_of_point = vec![0; self.num_points];
        for (new, &old) in point_order.iter().enumerate() {
            new_of_point[old] = new;
        }
        let line_points = line_order
            .iter()
            .map(|&old| self.line_points[old].iter().map(|&p| new_of_point[p]).collect())
            .collect();
        IncidenceStructure::new(self.num_points, line_points)
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        canonical_form(self)
    }

    pub fn canonical_code(&self) -> CanonicalCode {
        canonical_form(self).code
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let k = self.num_points;
        let mut adj = vec![Vec::new(); k + self.line_points.len()];
        for (l, pts) in self.line_points.iter().enumerate() {
            for &p in pts {
                adj[p].push(k + l);
                adj[k + l].push(p);
            }
        }
        adj
    }
}

/// Byte string identifying an incidence-isomorphism class: point and line
/// counts followed by the canonical incidence matrix, row-major, packed
/// eight bits per byte.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        if s.len() % 2 != 0 {
            return None;
        }
        (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(s.get(i..i + 2)?, 16).ok())
            .collect::<Option<Vec<u8>>>()
            .map(CanonicalCode)
    }

    /// Rebuilds the canonically labeled structure the code describes.
    pub fn decode(&self) -> Option<IncidenceStructure> {
        let b = &self.0;
        if b.len() < 4 {
            return None;
        }
        let k = u16::from_be_bytes([b[0], b[1]]) as usize;
        let n = u16::from_be_bytes([b[2], b[3]]) as usize;
        let bits = &b[4..];
        if bits.len() != (k * n).div_ceil(8) {
            return None;
        }
        let mut line_points = vec![Vec::new(); n];
        for p in 0..k {
            for (l, pts) in line_points.iter_mut().enumerate() {
                let i = p * n + l;
                if bits[i / 8] & (0x80 >> (i % 8)) != 0 {
                    pts.push(p);
                }
            }
        }
        Some(IncidenceStructure::new(k, line_points))
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// A canonical code together with the labeling that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub code: CanonicalCode,
    /// `point_order[i]` is the original point placed at canonical position `i`.
    pub point_order: Vec<usize>,
    /// `line_order[j]` is the original line placed at canonical position `j`.
    pub line_order: Vec<usize>,
}

type Cells = Vec<Vec<usize>>;

/// Splits cells until the partition is equitable. Cells are split in place
/// and the pieces ordered by neighbour count, so the result depends only on
/// the structure and not on vertex names.
fn refine(adj: &[Vec<usize>], cells: &mut Cells) {
    let mut counts = vec![0usize; adj.len()];
    'restart: loop {
        for w in 0..cells.len() {
            counts.iter_mut().for_each(|c| *c = 0);
            for &u in &cells[w] {
                for &v in &adj[u] {
                    counts[v] += 1;
                }
            }
            for x in 0..cells.len() {
                let cell = &cells[x];
                if cell.len() < 2 {
                    continue;
                }
                let first = counts[cell[0]];
                if cell.iter().all(|&v| counts[v] == first) {
                    continue;
                }
                let mut sorted = cell.clone();
                sorted.sort_by_key(|&v| (counts[v], v));
                let mut pieces: Cells = Vec::new();
                for v in sorted {
                    match pieces.last_mut() {
                        Some(last) if counts[last[0]] == counts[v] => last.push(v),
                        _ => pieces.push(vec![v]),
                    }
                }
                cells.splice(x..=x, pieces);
                continue 'restart;
            }
        }
        return;
    }
}

fn individualize(cells: &Cells, target: usize, v: usize) -> Cells {
    let mut out = Vec::with_capacity(cells.len() + 1);
    out.extend_from_slice(&cells[..target]);
    out.push(vec![v]);
    out.push(cells[target].iter().copied().filter(|&u| u != v).collect());
    out.extend_from_slice(&cells[target + 1..]);
    out
}

struct Searcher<'a> {
    adj: &'a [Vec<usize>],
    num_points: usize,
    num_lines: usize,
    first: Option<(Vec<u8>, Vec<usize>)>,
    first_path: Vec<usize>,
    best: Option<(Vec<u8>, Vec<usize>)>,
    generators: Vec<Vec<usize>>,
}

impl<'a> Searcher<'a> {
    fn new(adj: &'a [Vec<usize>], num_points: usize, num_lines: usize) -> Self {
        Searcher {
            adj,
            num_points,
            num_lines,
            first: None,
            first_path: Vec::new(),
            best: None,
            generators: Vec::new(),
        }
    }

    fn encode(&self, order: &[usize]) -> Vec<u8> {
        let (k, n) = (self.num_points, self.num_lines);
        let mut bits = vec![0u8; (k * n).div_ceil(8)];
        for i in 0..k {
            let p = order[i];
            for j in 0..n {
                let l = order[k + j];
                if self.adj[p].binary_search(&l).is_ok() {
                    let idx = i * n + j;
                    bits[idx / 8] |= 0x80 >> (idx % 8);
                }
            }
        }
        bits
    }

    fn record_automorphism(&mut self, from: &[usize], to: &[usize]) {
        let mut perm = vec![0; from.len()];
        for (a, b) in from.iter().zip(to) {
            perm[*a] = *b;
        }
        if perm.iter().enumerate().any(|(i, &j)| i != j) {
            self.generators.push(perm);
        }
    }

    fn orbit_root(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }

    /// Orbits of the group generated by the known automorphisms that fix
    /// `prefix` pointwise.
    fn orbits_fixing(&self, prefix: &[usize]) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.adj.len()).collect();
        for g in &self.generators {
            if prefix.iter().all(|&v| g[v] == v) {
                for (v, &w) in g.iter().enumerate() {
                    let (a, b) = (
                        Self::orbit_root(&mut parent, v),
                        Self::orbit_root(&mut parent, w),
                    );
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        (0..parent.len())
            .map(|v| Self::orbit_root(&mut parent, v))
            .collect()
    }

    /// Explores the subtree below `cells`. Returns `Some(level)` to abandon
    /// every node deeper than `level` (the subtree was found equivalent to
    /// the first path).
    fn search(&mut self, mut cells: Cells, prefix: &mut Vec<usize>) -> Option<usize> {
        refine(self.adj, &mut cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let order: Vec<usize> = cells.into_iter().map(|c| c[0]).collect();
            let code = self.encode(&order);
            match &self.first {
                None => {
                    self.first_path = prefix.clone();
                    self.first = Some((code.clone(), order.clone()));
                    self.best = Some((code, order));
                    return None;
                }
                Some((first_code, first_order)) if *first_code == code => {
                    let first_order = first_order.clone();
                    self.record_automorphism(&order, &first_order);
                    // the automorphism fixes the deepest common ancestor with
                    // the first path, so the branch below it is redundant
                    let common = prefix
                        .iter()
                        .zip(&self.first_path)
                        .take_while(|(a, b)| a == b)
                        .count();
                    return Some(common);
                }
                _ => {}
            }
            let (best_code, best_order) = self.best.as_ref().expect("set with first");
            if code < *best_code {
                self.best = Some((code, order));
            } else if code == *best_code {
                let best_order = best_order.clone();
                self.record_automorphism(&order, &best_order);
            }
            return None;
        };

        let level = prefix.len();
        let candidates = cells[target].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &candidates {
            if !explored.is_empty() {
                let orbits = self.orbits_fixing(prefix);
                if explored.iter().any(|&u| orbits[u] == orbits[v]) {
                    continue;
                }
            }
            explored.push(v);
            prefix.push(v);
            let child = individualize(&cells, target, v);
            let res = self.search(child, prefix);
            prefix.pop();
            if let Some(back_to) = res {
                if level > back_to {
                    return Some(back_to);
                }
            }
        }
        None
    }
}

fn canonical_form(s: &IncidenceStructure) -> CanonicalForm {
    let (k, n) = (s.num_points(), s.num_lines());
    let mut adj = s.adjacency();
    for a in &mut adj {
        a.sort_unstable();
    }
    let mut cells: Cells = Vec::new();
    if k > 0 {
        cells.push((0..k).collect());
    }
    if n > 0 {
        cells.push((k..k + n).collect());
    }
    let order = if cells.is_empty() {
        Vec::new()
    } else {
        let mut searcher = Searcher::new(&adj, k, n);
        searcher.search(cells, &mut Vec::new());
        searcher.best.expect("search visits at least one leaf").1
    };

    let mut code = Vec::with_capacity(4 + (k * n).div_ceil(8));
    code.extend_from_slice(&(k as u16).to_be_bytes());
    code.extend_from_slice(&(n as u16).to_be_bytes());
    code.extend(Searcher::new(&adj, k, n).encode(&order));
    CanonicalForm {
        code: CanonicalCode(code),
        point_order: order[..k].to_vec(),
        line_order: order[k..].iter().map(|&v| v - k).collect(),
    }
}
