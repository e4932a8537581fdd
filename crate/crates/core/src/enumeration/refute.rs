//! Necessary conditions for a candidate to have real line realizations.
//!
//! All checks work in the projective completion: each parallel class meets
//! at a point at infinity, and the line at infinity passes through those.

use super::candidates::AbstractCandidate;

/// A short reason when some ordinary-point theorem rules the candidate out.
pub fn refute(c: &AbstractCandidate) -> Option<String> {
    dual_check(c).or_else(|| primal_check(c))
}

/// Every set of lines that are not all concurrent has an ordinary point, in
/// fact at least `3N/7` of them.
fn dual_check(c: &AbstractCandidate) -> Option<String> {
    let n = c.n;
    let point_lines = c.incidences.point_lines();
    let point_masks: Vec<u32> = point_lines
        .iter()
        .map(|ls| ls.iter().fold(0u32, |m, &l| m | 1 << l))
        .collect();
    let class_masks: Vec<u32> = c
        .parallel_classes
        .iter()
        .map(|ls| ls.iter().fold(0u32, |m, &l| m | 1 << l))
        .collect();
    for subset in 1u32..(1 << n) {
        for with_infinity in [false, true] {
            let size = subset.count_ones() as usize + usize::from(with_infinity);
            if size < 3 {
                continue;
            }
            let mut vertices = 0;
            let mut ordinary = 0;
            let mut concurrent = false;
            let multiplicities = point_masks
                .iter()
                .map(|m| (m & subset).count_ones() as usize)
                .chain(
                    class_masks
                        .iter()
                        .map(|m| (m & subset).count_ones() as usize + usize::from(with_infinity)),
                );
            for mult in multiplicities {
                if mult >= 2 {
                    vertices += 1;
                    if mult == 2 {
                        ordinary += 1;
                    }
                    if mult == size {
                        concurrent = true;
                    }
                }
            }
            if concurrent || vertices == 0 {
                continue;
            }
            let lines = describe_lines(subset, with_infinity);
            if ordinary == 0 {
                return Some(format!("lines {lines} meet with no ordinary point"));
            }
            if 7 * ordinary < 3 * size {
                return Some(format!(
                    "lines {lines} have {ordinary} ordinary points, fewer than 3/7 of {size}"
                ));
            }
        }
    }
    None
}

fn describe_lines(subset: u32, with_infinity: bool) -> String {
    let mut parts: Vec<String> = (0..32).filter(|l| subset & (1 << l) != 0).map(|l| l.to_string()).collect();
    if with_infinity {
        parts.push("inf".to_string());
    }
    format!("{{{}}}", parts.join(","))
}

/// Every set of points that is not collinear spans a line through exactly
/// two of them. When all pairs are joined by lines of the completion, that
/// line must be one of them.
fn primal_check(c: &AbstractCandidate) -> Option<String> {
    let k = c.k;
    let m = c.parallel_classes.len();
    let total = k + m;
    if total > 20 {
        return None;
    }
    let class_of = c.class_of();
    // lines of the completion as masks over points then class points
    let mut lines: Vec<u32> = c
        .incidences
        .line_points()
        .iter()
        .enumerate()
        .map(|(l, pts)| pts.iter().fold(1u32 << (k + class_of[l]), |acc, &p| acc | 1 << p))
        .collect();
    lines.push(((1u32 << m) - 1) << k);
    let mut joined = vec![0u32; total];
    for &line in &lines {
        for v in 0..total {
            if line & (1 << v) != 0 {
                joined[v] |= line;
            }
        }
    }
    for subset in 1u32..(1 << total) {
        if subset.count_ones() < 3 {
            continue;
        }
        let clique = (0..total)
            .filter(|&v| subset & (1 << v) != 0)
            .all(|v| joined[v] & subset == subset);
        if !clique {
            continue;
        }
        let counts = lines.iter().map(|&l| (l & subset).count_ones());
        let mut collinear = false;
        let mut ordinary = false;
        for cnt in counts {
            collinear |= cnt == subset.count_ones();
            ordinary |= cnt == 2;
        }
        if !collinear && !ordinary {
            let names: Vec<String> = (0..total)
                .filter(|&v| subset & (1 << v) != 0)
                .map(|v| if v < k { v.to_string() } else { format!("inf{}", v - k) })
                .collect();
            return Some(format!(
                "marks {{{}}} are pairwise joined with no ordinary line",
                names.join(",")
            ));
        }
    }
    None
}
