//! Exact geometric realization of abstract candidates.
//!
//! Lines are placed one at a time in a fixed order chosen so that as many
//! lines as possible are forced by points already fixed. A line through two
//! fixed points is forced; so is a line through one fixed point when its
//! parallel class already has a direction. Otherwise the search branches over
//! a ladder of small rationals. Every placement is checked exactly: points
//! must land where their lines meet, no line may pass through a foreign
//! point, and points and directions must stay distinct.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::candidates::AbstractCandidate;
use super::refute::refute;
use crate::arrangement::Arrangement;
use crate::geometry::{intersect, line_through, rat, Line, Point, Rational, Slope};
use crate::invariants::canonical_code;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationBudget {
    /// Search nodes per attempt.
    pub max_nodes: usize,
    /// Attempts; every attempt after the first shuffles the ladder.
    pub attempts: usize,
    /// Ladder values tried at each free choice.
    pub ladder_len: usize,
    pub seed: u64,
}

impl Default for RealizationBudget {
    fn default() -> Self {
        RealizationBudget {
            max_nodes: 20_000,
            attempts: 6,
            ladder_len: 13,
            seed: 0x1ae5_2026,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealizationResult {
    Realized(Arrangement),
    /// The budget ran out; `nodes` were searched in total.
    Undecided { nodes: usize },
    RefutedByInvariant(String),
}

impl RealizationResult {
    pub fn status(&self) -> &'static str {
        match self {
            RealizationResult::Realized(_) => "realized",
            RealizationResult::Undecided { .. } => "undecided",
            RealizationResult::RefutedByInvariant(_) => "refuted",
        }
    }
}

impl fmt::Display for RealizationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealizationResult::Realized(a) => write!(f, "realized by {} lines", a.num_lines()),
            RealizationResult::Undecided { nodes } => write!(f, "undecided after {nodes} search nodes"),
            RealizationResult::RefutedByInvariant(why) => write!(f, "refuted: {why}"),
        }
    }
}

/// `0, 1, -1, 1/2, 2, -1/2, -2, 1/3, 3, ...`: rationals by height.
pub fn ladder(len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero()];
    let mut h: i64 = 1;
    while out.len() < len {
        for p in 1..=h {
            let q = h;
            if p.gcd(&q) != 1 || (p != h && q != h) {
                continue;
            }
            let x = rat(p, q);
            let mut group = vec![x.clone()];
            if p != q {
                group.push(rat(q, p));
            }
            let negated: Vec<Rational> = group.iter().map(|v| -v.clone()).collect();
            out.extend(group);
            out.extend(negated);
        }
        h += 1;
    }
    out.truncate(len);
    out
}

/// Lines in placement order: each next line has the most points already
/// fixed by two placed lines, then a class with a known direction, then the
/// most points.
fn placement_order(c: &AbstractCandidate) -> Vec<usize> {
    let class_of = c.class_of();
    let lp = c.incidences.line_points();
    let pl = c.incidences.point_lines();
    let mut placed = vec![false; c.n];
    let mut class_seen = vec![false; c.parallel_classes.len()];
    let mut order = Vec::with_capacity(c.n);
    while order.len() < c.n {
        let key = |l: usize| {
            let fixed = lp[l]
                .iter()
                .filter(|&&p| pl[p].iter().filter(|&&m| placed[m]).count() >= 2)
                .count();
            let touching = lp[l].iter().filter(|&&p| pl[p].iter().any(|&m| placed[m])).count();
            (fixed.min(2), class_seen[class_of[l]], touching, lp[l].len())
        };
        let next = (0..c.n)
            .filter(|&l| !placed[l])
            .max_by(|&a, &b| key(a).cmp(&key(b)).then(b.cmp(&a)))
            .expect("unplaced line");
        placed[next] = true;
        class_seen[class_of[next]] = true;
        order.push(next);
    }
    order
}

#[derive(Clone)]
struct State {
    slopes: Vec<Option<Slope>>,
    lines: Vec<Option<Line>>,
    points: Vec<Option<Point>>,
}

struct Search<'a> {
    c: &'a AbstractCandidate,
    class_of: Vec<usize>,
    point_lines: Vec<Vec<usize>>,
    order: Vec<usize>,
    ladder: Vec<Rational>,
    nodes: usize,
    max_nodes: usize,
}

fn direction(t: &Rational) -> Slope {
    Slope::from_rationals(&Rational::one(), t).expect("nonzero")
}

fn with_intercept(slope: &Slope, v: &Rational) -> Line {
    let anchor = if slope.dx().is_zero() {
        Point::new(v.clone(), Rational::zero())
    } else {
        Point::new(Rational::zero(), v.clone())
    };
    Line::through_with_slope(&anchor, slope)
}

impl Search<'_> {
    fn candidates(&self, st: &State, l: usize) -> Vec<Line> {
        let known: Vec<&Point> = self.c.incidences.line_points()[l]
            .iter()
            .filter_map(|&p| st.points[p].as_ref())
            .collect();
        if known.len() >= 2 {
            return line_through(known[0], known[1]).into_iter().collect();
        }
        let class = self.class_of[l];
        let slopes: Vec<Slope> = match &st.slopes[class] {
            Some(s) => vec![s.clone()],
            None => self
                .ladder
                .iter()
                .map(direction)
                .filter(|s| !st.slopes.contains(&Some(s.clone())))
                .collect(),
        };
        if let Some(p) = known.first() {
            return slopes.iter().map(|s| Line::through_with_slope(p, s)).collect();
        }
        // pair slopes and intercepts along anti-diagonals so early values mix
        let mut out = Vec::new();
        let (ns, nv) = (slopes.len(), self.ladder.len());
        for sum in 0..ns + nv {
            for i in 0..ns.min(sum + 1) {
                let j = sum - i;
                if j < nv {
                    out.push(with_intercept(&slopes[i], &self.ladder[j]));
                }
            }
        }
        out
    }

    /// Places `line` as line `l`, or reports a violated incidence.
    fn place(&self, st: &State, l: usize, line: Line) -> Option<State> {
        let class = self.class_of[l];
        let slope = line.slope();
        match &st.slopes[class] {
            Some(s) if *s != slope => return None,
            None if st.slopes.contains(&Some(slope.clone())) => return None,
            _ => {}
        }
        if st.lines.iter().flatten().any(|m| *m == line) {
            return None;
        }
        let mut next = st.clone();
        next.slopes[class] = Some(slope);
        let on_line = &self.c.incidences.line_points()[l];
        for (p, loc) in st.points.iter().enumerate() {
            if let Some(loc) = loc {
                if line.contains(loc) != on_line.binary_search(&p).is_ok() {
                    return None;
                }
            }
        }
        for &p in on_line {
            if next.points[p].is_some() {
                continue;
            }
            let Some(other) = self.point_lines[p].iter().find_map(|&m| st.lines[m].as_ref()) else {
                continue;
            };
            let loc = intersect(&line, other).ok()??;
            if next.points.iter().flatten().any(|q| *q == loc) {
                return None;
            }
            for (m, placed) in next.lines.iter().enumerate() {
                if let Some(placed) = placed {
                    if placed.contains(&loc) != self.point_lines[p].contains(&m) {
                        return None;
                    }
                }
            }
            next.points[p] = Some(loc);
        }
        next.lines[l] = Some(line);
        Some(next)
    }

    fn run(&mut self, st: State, depth: usize) -> Option<Vec<Line>> {
        if depth == self.order.len() {
            return Some(st.lines.into_iter().map(|l| l.expect("all placed")).collect());
        }
        let l = self.order[depth];
        for line in self.candidates(&st, l) {
            if self.nodes >= self.max_nodes {
                return None;
            }
            self.nodes += 1;
            if let Some(next) = self.place(&st, l, line) {
                if let Some(found) = self.run(next, depth + 1) {
                    return Some(found);
                }
            }
        }
        None
    }
}

fn initial_state(c: &AbstractCandidate, order: &[usize], class_of: &[usize]) -> State {
    let m = c.parallel_classes.len();
    let mut st = State {
        slopes: vec![None; m],
        lines: vec![None; c.n],
        points: vec![None; c.k],
    };
    // an affine change of coordinates makes the first two directions the
    // axes and the first two lines pass through the origin
    let first_class = class_of[order[0]];
    st.slopes[first_class] = Some(Slope::from_i64(1, 0));
    if let Some(&second) = order.iter().find(|&&l| class_of[l] != first_class) {
        st.slopes[class_of[second]] = Some(Slope::from_i64(0, 1));
    }
    st
}

/// Tries to find lines whose arrangement has exactly the candidate's
/// incidences.
pub fn realize(c: &AbstractCandidate, budget: &RealizationBudget) -> RealizationResult {
    if let Some(reason) = refute(c) {
        return RealizationResult::RefutedByInvariant(reason);
    }
    let class_of = c.class_of();
    let order = placement_order(c);
    let point_lines = c.incidences.point_lines();
    let base = ladder(budget.ladder_len);
    let mut total = 0;
    for attempt in 0..budget.attempts.max(1) {
        let mut values = base.clone();
        if attempt > 0 {
            let mut rng = ChaCha8Rng::seed_from_u64(budget.seed.wrapping_add(attempt as u64));
            values.shuffle(&mut rng);
        }
        let mut search = Search {
            c,
            class_of: class_of.clone(),
            point_lines: point_lines.clone(),
            order: order.clone(),
            ladder: values,
            nodes: 0,
            max_nodes: budget.max_nodes,
        };
        let mut st = initial_state(c, &order, &class_of);
        // the leading line, and the next one if it crosses it, go through
        // the origin
        let origin = Point::from_ints(0, 0);
        let mut start = 0;
        for &l in order.iter().take(2) {
            if start == 1 && class_of[l] == class_of[order[0]] {
                break;
            }
            let slope = st.slopes[class_of[l]].clone().expect("fixed above");
            st = search
                .place(&st, l, Line::through_with_slope(&origin, &slope))
                .expect("first two lines never conflict");
            start += 1;
        }
        let found = search.run(st, start);
        total += search.nodes;
        if let Some(lines) = found {
            if let Ok(a) = Arrangement::from_lines(lines) {
                if a.num_points() == c.k && canonical_code(&a) == c.code {
                    return RealizationResult::Realized(a);
                }
            }
        }
    }
    RealizationResult::Undecided { nodes: total }
}
