//! Enumeration of arrangements with a fixed number of marks.
//!
//! Abstract candidates give an upper bound on the number of incidence
//! classes; geometric realization gives a lower bound. Candidates that are
//! neither realized nor refuted are kept in an explicit undecided list.

mod candidates;
mod grid;
mod realize;
mod refute;

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::arrangement::{Arrangement, FamilyKind};
use crate::error::{Error, Result};
use crate::invariants::{
    canonical_code, canonical_cyclic, central_signature, classify, find_centrexes, is_linear_space,
    summary_triple, type_vectors, CanonicalCode, CentralSignature, SummaryTriple, TypeVectors,
};

pub use candidates::{abstract_candidates, parallel_classes, partitions, AbstractCandidate};
pub use grid::{grid_lines, grid_oracle};
pub use realize::{ladder, realize, RealizationBudget, RealizationResult};
pub use refute::refute;

/// Seed override for realization retries.
pub const SEED_ENV: &str = "ARRANGEMENTS_SEED";
/// Worker thread count for enumeration.
pub const WORKERS_ENV: &str = "ARRANGEMENTS_WORKERS";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub arrangement: Arrangement,
    pub code: CanonicalCode,
    pub triple: SummaryTriple,
    pub vectors: TypeVectors,
    pub family: Option<FamilyKind>,
    pub linear_space: bool,
    /// The centrex with the smallest canonical signature, if any.
    pub signature: Option<CentralSignature>,
}

impl CatalogEntry {
    pub fn from_arrangement(arrangement: Arrangement) -> Self {
        let signature = find_centrexes(&arrangement)
            .iter()
            .map(|z| central_signature(&arrangement, z).expect("centrex"))
            .min_by(|a, b| {
                canonical_cyclic(a.signature())
                    .cmp(&canonical_cyclic(b.signature()))
                    .then_with(|| a.centrex.cmp(&b.centrex))
            });
        CatalogEntry {
            code: canonical_code(&arrangement),
            triple: summary_triple(&arrangement),
            vectors: type_vectors(&arrangement),
            family: classify(&arrangement).ok().flatten(),
            linear_space: is_linear_space(&arrangement),
            signature,
            arrangement,
        }
    }

    /// Cyclic-canonical central signature, used to sub-split incidence
    /// classes.
    pub fn canonical_signature(&self) -> Option<Vec<usize>> {
        self.signature.as_ref().map(|s| canonical_cyclic(s.signature()))
    }

    /// Stable file stem, e.g. `n6_k5_s4_0005000006f8d0`.
    pub fn file_stem(&self) -> String {
        let SummaryTriple { n, k, s } = self.triple;
        format!("n{n}_k{k}_s{s}_{}", self.code.to_hex())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CellStats {
    pub k: usize,
    pub n: usize,
    pub abstract_count: usize,
    pub realized: usize,
    pub undecided: usize,
    pub refuted: usize,
}

impl CellStats {
    pub fn is_balanced(&self) -> bool {
        self.realized + self.undecided + self.refuted == self.abstract_count
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndecidedCandidate {
    pub candidate: AbstractCandidate,
    pub nodes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefutedCandidate {
    pub candidate: AbstractCandidate,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub budget: RealizationBudget,
    /// `None` uses rayon's default pool.
    pub workers: Option<usize>,
}

impl EnumerateOptions {
    /// Defaults overridden by the seed and worker environment variables.
    pub fn from_env() -> Result<Self> {
        let mut opts = EnumerateOptions::default();
        if let Ok(seed) = std::env::var(SEED_ENV) {
            opts.budget.seed = seed
                .trim()
                .parse()
                .map_err(|_| Error::BadArgument(format!("{SEED_ENV} must be an unsigned integer, got {seed:?}")))?;
        }
        if let Ok(w) = std::env::var(WORKERS_ENV) {
            let w: usize = w
                .trim()
                .parse()
                .ok()
                .filter(|&w| w > 0)
                .ok_or_else(|| Error::BadArgument(format!("{WORKERS_ENV} must be a positive integer, got {w:?}")))?;
            opts.workers = Some(w);
        }
        Ok(opts)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub k: usize,
    pub n_max: usize,
    /// Sorted by `(n, k, s)`, then code.
    pub entries: Vec<CatalogEntry>,
    pub undecided: Vec<UndecidedCandidate>,
    pub refuted: Vec<RefutedCandidate>,
    pub cells: Vec<CellStats>,
}

impl Enumeration {
    /// Entry indices grouped by canonical central signature; entries without
    /// a centrex share the `None` group.
    pub fn signature_groups(&self) -> BTreeMap<Option<Vec<usize>>, Vec<usize>> {
        let mut groups: BTreeMap<Option<Vec<usize>>, Vec<usize>> = BTreeMap::new();
        for (i, e) in self.entries.iter().enumerate() {
            groups.entry(e.canonical_signature()).or_default().push(i);
        }
        groups
    }

    pub fn codes(&self) -> Vec<CanonicalCode> {
        self.entries.iter().map(|e| e.code.clone()).collect()
    }
}

fn run_in_pool<T: Send>(workers: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(job()),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::BadArgument(format!("cannot start {w} workers: {e}")))?;
            Ok(pool.install(job))
        }
    }
}

/// Every incidence class with `k` marks and at most `n_max` lines.
pub fn enumerate(k: usize, n_max: usize, opts: &EnumerateOptions) -> Result<Enumeration> {
    if k < 2 {
        return Err(Error::TooFewPoints { required: 2, found: k });
    }
    if n_max < 2 {
        return Err(Error::BadArgument(format!("line bound must be at least 2, got {n_max}")));
    }
    let budget = &opts.budget;
    let results = run_in_pool(opts.workers, || {
        (2..=n_max)
            .into_par_iter()
            .map(|n| {
                let cands = abstract_candidates(k, n);
                let results: Vec<RealizationResult> = cands.par_iter().map(|c| realize(c, budget)).collect();
                (n, cands, results)
            })
            .collect::<Vec<_>>()
    })?;

    let mut out = Enumeration {
        k,
        n_max,
        entries: Vec::new(),
        undecided: Vec::new(),
        refuted: Vec::new(),
        cells: Vec::new(),
    };
    for (n, cands, results) in results {
        let mut cell = CellStats {
            k,
            n,
            abstract_count: cands.len(),
            ..CellStats::default()
        };
        for (candidate, result) in cands.into_iter().zip(results) {
            match result {
                RealizationResult::Realized(a) => {
                    cell.realized += 1;
                    out.entries.push(CatalogEntry::from_arrangement(a));
                }
                RealizationResult::Undecided { nodes } => {
                    cell.undecided += 1;
                    out.undecided.push(UndecidedCandidate { candidate, nodes });
                }
                RealizationResult::RefutedByInvariant(reason) => {
                    cell.refuted += 1;
                    out.refuted.push(RefutedCandidate { candidate, reason });
                }
            }
        }
        out.cells.push(cell);
    }
    out.entries
        .sort_by(|a, b| a.triple.cmp(&b.triple).then_with(|| a.code.cmp(&b.code)));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub k: usize,
    pub n_max_searched: usize,
    pub realized_max_n: Option<usize>,
    pub abstract_candidates_above_bound: usize,
    pub realized_above_bound: usize,
    pub undecided_above_bound: usize,
    pub refuted_above_bound: usize,
    /// Fewest and most distinct slopes over realized entries.
    pub slope_range: Option<(usize, usize)>,
    /// Codes of undecided candidates with more than `k + 1` lines.
    pub undecided_codes: Vec<CanonicalCode>,
}

impl ConjectureReport {
    /// No realized arrangement exceeds `k + 1` lines.
    pub fn is_consistent(&self) -> bool {
        self.realized_above_bound == 0
    }

    pub fn slopes_within_bounds(&self) -> bool {
        self.slope_range.map_or(true, |(lo, hi)| lo >= 2 && hi <= self.k)
    }
}

impl fmt::Display for ConjectureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bound = self.k + 1;
        writeln!(f, "k = {}, lines searched up to {}", self.k, self.n_max_searched)?;
        match self.realized_max_n {
            Some(n) => writeln!(f, "most lines realized: {n} (bound k + 1 = {bound})")?,
            None => writeln!(f, "nothing realized")?,
        }
        writeln!(f, "abstract candidates above bound: {}", self.abstract_candidates_above_bound)?;
        writeln!(f, "realized above bound: {}", self.realized_above_bound)?;
        writeln!(f, "refuted above bound: {}", self.refuted_above_bound)?;
        writeln!(f, "undecided above bound: {}", self.undecided_above_bound)?;
        for code in &self.undecided_codes {
            writeln!(f, "  undecided {code}")?;
        }
        if let Some((lo, hi)) = self.slope_range {
            writeln!(f, "distinct slopes: {lo}..={hi} (expected within 2..={})", self.k)?;
        }
        let verdict = if !self.is_consistent() {
            "COUNTEREXAMPLE"
        } else if self.undecided_above_bound > 0 {
            "consistent so far, undecided candidates remain"
        } else {
            "consistent"
        };
        write!(f, "verdict: {verdict}")
    }
}

/// Searches one line past the conjectured bound of `k + 1` lines.
pub fn verify_conjecture(k: usize, n_max: usize, opts: &EnumerateOptions) -> Result<ConjectureReport> {
    if k < 3 {
        return Err(Error::TooFewPoints { required: 3, found: k });
    }
    if n_max < k + 2 {
        return Err(Error::BadArgument(format!(
            "line bound must be at least k + 2 = {}, got {n_max}",
            k + 2
        )));
    }
    let e = enumerate(k, n_max, opts)?;
    let bound = k + 1;
    let above = |n: usize| n > bound;
    let slopes = e.entries.iter().map(|x| x.triple.s);
    Ok(ConjectureReport {
        k,
        n_max_searched: n_max,
        realized_max_n: e.entries.iter().map(|x| x.triple.n).max(),
        abstract_candidates_above_bound: e.cells.iter().filter(|c| above(c.n)).map(|c| c.abstract_count).sum(),
        realized_above_bound: e.cells.iter().filter(|c| above(c.n)).map(|c| c.realized).sum(),
        undecided_above_bound: e.cells.iter().filter(|c| above(c.n)).map(|c| c.undecided).sum(),
        refuted_above_bound: e.cells.iter().filter(|c| above(c.n)).map(|c| c.refuted).sum(),
        slope_range: slopes.clone().min().zip(slopes.max()),
        undecided_codes: e
            .undecided
            .iter()
            .filter(|u| above(u.candidate.n))
            .map(|u| u.candidate.code.clone())
            .collect(),
    })
}
