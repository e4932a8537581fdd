//! Human-readable reports: analysis, comparison and catalog summaries.

use std::fmt::{self, Write as _};

use crate::arrangement::Arrangement;
use crate::enumeration::{CatalogEntry, Enumeration};
use crate::error::Result;
use crate::geometry::Point;
use crate::invariants::{
    canonical_code, canonical_signature, central_signature, classify, debruijn_erdos_check, degree_types,
    find_centrexes, is_isomorphic, is_linear_space, projective_equivalent, summary_triple, type_vectors,
    EquivalenceMode,
};

fn compact(p: &Point) -> String {
    format!("({},{})", p.x, p.y)
}

fn tuple(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn family_line(a: &Arrangement) -> String {
    match a.num_points() {
        0 => "k=0 family (parallel lines, or no lines at all)".to_string(),
        1 => "k=1 family (pencil of concurrent lines)".to_string(),
        2 => "k=2 family (two parallel lines crossed by a third)".to_string(),
        _ => match classify(a) {
            Ok(Some(kind)) => format!("{kind:?} ({kind})"),
            _ => "none of the named families".to_string(),
        },
    }
}

/// Every measure for a valid arrangement.
pub fn analysis_report(a: &Arrangement) -> Result<String> {
    a.ensure_valid()?;
    let mut out = String::new();
    let v = type_vectors(a);
    writeln!(out, "summary (n k s): {}", summary_triple(a)).unwrap();
    writeln!(out, "line type t_1..: {}", tuple(v.t_from_one())).unwrap();
    writeln!(out, "slope type s_1..: {}", tuple(v.s_from_one())).unwrap();
    writeln!(out, "point type p_2..: {}", tuple(v.p_from_two())).unwrap();
    if v.t_zero() > 0 {
        writeln!(out, "lines without marks: {}", v.t_zero()).unwrap();
    }
    if a.num_points() > 0 {
        writeln!(out, "point-line degree types:").unwrap();
        for d in degree_types(a) {
            writeln!(out, "  {}: degree {}, type {}", compact(&d.point), d.degree, tuple(&d.by_line_size)).unwrap();
        }
    }
    writeln!(out, "family: {}", family_line(a)).unwrap();
    writeln!(out, "linear space: {}", if is_linear_space(a) { "yes" } else { "no" }).unwrap();
    match debruijn_erdos_check(a) {
        Ok(r) => writeln!(out, "de Bruijn-Erdos check: {r}").unwrap(),
        Err(_) => writeln!(out, "de Bruijn-Erdos check: not applicable with fewer than 3 marks").unwrap(),
    }
    let centrexes = find_centrexes(a);
    if centrexes.is_empty() {
        writeln!(out, "centrex: none").unwrap();
    }
    for z in &centrexes {
        let sig = central_signature(a, z)?;
        writeln!(
            out,
            "centrex {}, central degree {}, signature {}",
            compact(z),
            sig.degree,
            tuple(sig.signature())
        )
        .unwrap();
    }
    writeln!(out, "canonical code: {}", canonical_code(a)).unwrap();
    Ok(out)
}

pub fn entry_report(e: &CatalogEntry) -> String {
    let mut out = analysis_report(&e.arrangement).expect("catalog entries are valid");
    out.push_str("\n");
    out.push_str(&crate::io::serialize(&e.arrangement));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompareMode {
    Incidence,
    Affine,
    Projective,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub mode: CompareMode,
    pub equivalent: bool,
    /// The first measure that differs, with both values.
    pub distinguished_by: Option<String>,
    pub witness: Option<String>,
    pub notes: Vec<String>,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = format!("{:?}", self.mode).to_lowercase();
        writeln!(f, "mode: {mode}")?;
        writeln!(f, "verdict: {}", if self.equivalent { "equivalent" } else { "distinct" })?;
        if let Some(d) = &self.distinguished_by {
            writeln!(f, "distinguished at {d}")?;
        }
        if let Some(w) = &self.witness {
            writeln!(f, "witness:")?;
            write!(f, "{w}")?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

/// Every difference among measures (1) to (3), coarsest first.
fn differences(a: &Arrangement, b: &Arrangement) -> Vec<String> {
    let mut out = Vec::new();
    let (ta, tb) = (summary_triple(a), summary_triple(b));
    if ta != tb {
        out.push(format!("measure (1), summary triple: {ta} vs {tb}"));
    }
    let (va, vb) = (type_vectors(a), type_vectors(b));
    let vectors = [
        ("line type", va.t_from_one(), vb.t_from_one()),
        ("slope type", va.s_from_one(), vb.s_from_one()),
        ("point type", va.p_from_two(), vb.p_from_two()),
    ];
    for (name, x, y) in vectors {
        if x != y {
            out.push(format!("measure (2), {name}: {} vs {}", tuple(x), tuple(y)));
        }
    }
    if va.t_zero() != vb.t_zero() {
        out.push(format!("measure (2), lines without marks: {} vs {}", va.t_zero(), vb.t_zero()));
    }
    let sorted = |x: &Arrangement| {
        let mut v: Vec<Vec<usize>> = degree_types(x).into_iter().map(|d| d.by_line_size).collect();
        v.sort();
        v
    };
    let (da, db) = (sorted(a), sorted(b));
    if da != db {
        let show = |v: &[Vec<usize>]| v.iter().map(|t| tuple(t)).collect::<Vec<_>>().join(" ");
        out.push(format!("measure (3), point-line degree types: {} vs {}", show(&da), show(&db)));
    }
    out
}

fn signature_text(s: &Option<Vec<usize>>) -> String {
    s.as_ref().map_or("none".to_string(), |v| tuple(v))
}

pub fn compare(a: &Arrangement, b: &Arrangement, mode: CompareMode) -> Result<Comparison> {
    a.ensure_valid()?;
    b.ensure_valid()?;
    let mut cmp = Comparison {
        mode,
        equivalent: false,
        distinguished_by: None,
        witness: None,
        notes: Vec::new(),
    };
    let geometric = match mode {
        CompareMode::Incidence => None,
        CompareMode::Affine => Some(EquivalenceMode::Affine),
        CompareMode::Projective => Some(EquivalenceMode::Projective),
    };
    if let Some(m) = geometric {
        // fail early on degenerate inputs, before any measure is reported
        let required = if m == EquivalenceMode::Affine { 3 } else { 4 };
        if a.num_points() < required || b.num_points() < required {
            projective_equivalent(a, b, m)?;
        }
    }
    let mut diffs = differences(a, b).into_iter();
    if let Some(first) = diffs.next() {
        cmp.distinguished_by = Some(first);
        cmp.notes.extend(diffs.map(|d| format!("also differs at {d}")));
        return Ok(cmp);
    }
    let (sa, sb) = (canonical_signature(a), canonical_signature(b));
    let Some(iso) = is_isomorphic(a, b) else {
        cmp.distinguished_by = Some("incidence structure: canonical codes differ".to_string());
        return Ok(cmp);
    };
    match geometric {
        None => {
            cmp.equivalent = true;
            let mut w = String::new();
            for (i, p) in a.points().iter().enumerate() {
                writeln!(w, "  {} -> {}", compact(p), compact(&b.points()[iso.point_map[i]])).unwrap();
            }
            for (i, l) in a.lines().iter().enumerate() {
                writeln!(w, "  [{l}] -> [{}]", b.lines()[iso.line_map[i]]).unwrap();
            }
            cmp.witness = Some(w);
            if sa != sb {
                cmp.notes.push(format!(
                    "measure (4) separates them: central signature {} vs {}",
                    signature_text(&sa),
                    signature_text(&sb)
                ));
            }
        }
        Some(m) => match projective_equivalent(a, b, m)? {
            Some(t) => {
                cmp.equivalent = true;
                let mut w = String::new();
                for row in &t.matrix {
                    writeln!(w, "  [{}  {}  {}]", row[0], row[1], row[2]).unwrap();
                }
                cmp.witness = Some(w);
            }
            None => {
                cmp.distinguished_by = Some(if sa != sb {
                    format!(
                        "measure (4), central signature: {} vs {}",
                        signature_text(&sa),
                        signature_text(&sb)
                    )
                } else {
                    format!("no {} map carries one onto the other", m.name())
                });
                cmp.notes.push("the incidence structures are isomorphic".to_string());
            }
        },
    }
    Ok(cmp)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// One row per entry, then the per-cell bookkeeping, then the undecided
/// count.
pub fn catalog_summary(e: &Enumeration) -> String {
    let mut out = String::new();
    writeln!(out, "# k = {}, lines 2..={}", e.k, e.n_max).unwrap();
    writeln!(out, "# code\t(n k s)\tfamily\tlinear-space\tsignature").unwrap();
    for x in &e.entries {
        let family = x.family.map_or("-".to_string(), |f| format!("{f:?}"));
        let sig = x.canonical_signature().map_or("-".to_string(), |s| tuple(&s));
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            x.code,
            x.triple,
            family,
            yes_no(x.linear_space),
            sig
        )
        .unwrap();
    }
    writeln!(out, "# cells: n abstract realized refuted undecided").unwrap();
    for c in &e.cells {
        writeln!(
            out,
            "# n={} {} {} {} {}",
            c.n, c.abstract_count, c.realized, c.refuted, c.undecided
        )
        .unwrap();
    }
    for u in &e.undecided {
        writeln!(out, "# undecided n={} {}", u.candidate.n, u.candidate.code).unwrap();
    }
    let groups = e.signature_groups();
    writeln!(out, "# incidence classes: {}; with a centrex: {}", e.entries.len(), {
        groups.iter().filter(|(k, _)| k.is_some()).map(|(_, v)| v.len()).sum::<usize>()
    })
    .unwrap();
    writeln!(out, "undecided: {}", e.undecided.len()).unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{generate_family, parallel_family, FamilyKind};
    use crate::geometry::Line;

    #[test]
    fn triangle_report() {
        let tri = Arrangement::from_lines(vec![
            Line::from_i64(1, 0, 0),
            Line::from_i64(0, 1, 0),
            Line::from_i64(1, 1, 1),
        ])
        .unwrap();
        let r = analysis_report(&tri).unwrap();
        assert!(r.contains("(3 3 3)"));
        assert!(r.contains("NearPencil"));
        assert!(r.contains("linear space: yes"));
        assert!(r.contains("n ≥ k: 3 ≥ 3 ✓"));
    }

    #[test]
    fn parallel_report() {
        let r = analysis_report(&parallel_family(2)).unwrap();
        assert!(r.contains("(2 0 1)"));
        assert!(r.contains("k=0 family"));
    }

    #[test]
    fn compare_families() {
        let rt = generate_family(FamilyKind::Railtrack, 4).unwrap();
        let anp = generate_family(FamilyKind::AugmentedNearPencil, 4).unwrap();
        let c = compare(&rt, &anp, CompareMode::Incidence).unwrap();
        assert!(!c.equivalent);
        // the slope counts already differ: (5 4 2) against (5 4 4)
        assert_eq!(
            c.distinguished_by.as_deref(),
            Some("measure (1), summary triple: (5 4 2) vs (5 4 4)")
        );
        assert!(c.notes.iter().any(|n| n.starts_with("also differs at measure (2), line type")));
    }
}
