//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use arrangements::arrangement::{generate_family, parallel_family, pencil, validate};
use arrangements::enumeration::{enumerate, grid_oracle, verify_conjecture, EnumerateOptions, Enumeration};
use arrangements::geometry::{rat, Rational};
use arrangements::invariants::{
    canonical_code, debruijn_erdos_check, is_isomorphic, is_linear_space, point_line_degree_type,
    projective_equivalent, summary_triple, type_vectors, EquivalenceMode,
};
use arrangements::report::catalog_summary;
use arrangements::{Arrangement, FamilyKind, Line, Point};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn opts() -> EnumerateOptions {
    EnumerateOptions::default()
}

fn triples(e: &Enumeration) -> Vec<(usize, usize, usize)> {
    e.entries.iter().map(|x| (x.triple.n, x.triple.k, x.triple.s)).collect()
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Check) -> (Check, Duration) {
    let start = Instant::now();
    let mut r = f();
    let took = start.elapsed();
    if let (Ok(_), Some(limit)) = (&r, limit) {
        if took > limit {
            r = Err(format!("took {took:.2?}, limit {limit:?}"));
        }
    }
    (r, took)
}

fn square_with_diagonals() -> Arrangement {
    Arrangement::from_lines(vec![
        Line::from_i64(1, 0, 1),
        Line::from_i64(1, 0, -1),
        Line::from_i64(0, 1, 1),
        Line::from_i64(0, 1, -1),
        Line::from_i64(1, -1, 0),
        Line::from_i64(1, 1, 0),
    ])
    .unwrap()
}

fn criterion_1() -> Check {
    let e = enumerate(2, 4, &opts()).map_err(|e| e.to_string())?;
    ensure(triples(&e) == vec![(3, 2, 2)], || format!("got {:?}", triples(&e)))?;
    Ok("one class (3 2 2)".into())
}

fn criterion_2() -> Check {
    let e = enumerate(3, 5, &opts()).map_err(|e| e.to_string())?;
    let got: BTreeSet<_> = triples(&e).into_iter().collect();
    let want: BTreeSet<_> = [(4, 3, 2), (3, 3, 3), (4, 3, 3)].into_iter().collect();
    ensure(e.entries.len() == 3 && got == want, || format!("got {:?}", triples(&e)))?;
    Ok("three classes (3 3 3), (4 3 2), (4 3 3)".into())
}

fn criterion_3() -> Check {
    for k in 3..=12 {
        let t = |kind| summary_triple(&generate_family(kind, k).unwrap());
        let np = t(FamilyKind::NearPencil);
        ensure(np.n == k && np.k == k && np.s == k, || format!("near-pencil({k}) is {np}"))?;
        let anp = t(FamilyKind::AugmentedNearPencil);
        ensure(anp.n == k + 1 && anp.k == k, || format!("augmented near-pencil({k}) is {anp}"))?;
        let rt = t(FamilyKind::Railtrack);
        ensure(rt.n == k + 1 && rt.k == k && rt.s == 2, || format!("railtrack({k}) is {rt}"))?;
    }
    Ok("k = 3..12".into())
}

fn criterion_4() -> Check {
    for k in 3..=12 {
        let np = generate_family(FamilyKind::NearPencil, k).unwrap();
        ensure(is_linear_space(&np), || format!("near-pencil({k}) not a linear space"))?;
        for kind in [FamilyKind::Railtrack, FamilyKind::AugmentedNearPencil] {
            let a = generate_family(kind, k).unwrap();
            ensure(!is_linear_space(&a), || format!("{kind}({k}) reported as a linear space"))?;
        }
    }
    let sq = square_with_diagonals();
    ensure(is_linear_space(&sq), || "square with diagonals not a linear space".into())?;
    let r = debruijn_erdos_check(&sq).unwrap();
    ensure((r.k, r.n) == (5, 6), || format!("square with diagonals: k={} n={}", r.k, r.n))?;
    let mut checked = 0;
    for k in 3..=7 {
        for entry in enumerate(k, k + 2, &opts()).unwrap().entries {
            if entry.linear_space {
                let r = debruijn_erdos_check(&entry.arrangement).unwrap();
                ensure(r.bound_holds == Some(true) && !r.is_anomaly(), || {
                    format!("{}: {r}", entry.file_stem())
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("bound holds on {checked} linear-space catalog entries"))
}

fn criterion_5() -> Check {
    let mut lines = Vec::new();
    for k in 4..=7 {
        let r = verify_conjecture(k, k + 2, &opts()).map_err(|e| e.to_string())?;
        for code in &r.undecided_codes {
            println!("    undecided above bound at k={k}: {code}");
        }
        ensure(r.realized_above_bound == 0, || format!("k={k}: {r}"))?;
        ensure(r.realized_max_n == Some(k + 1), || format!("k={k}: most lines {:?}", r.realized_max_n))?;
        let (lo, hi) = r.slope_range.ok_or("no entries")?;
        ensure(lo >= 2 && hi <= k, || format!("k={k}: slopes {lo}..={hi}"))?;
        lines.push(format!(
            "k={k}: max n {}, slopes {lo}..={hi}, above bound {} abstract / {} refuted / {} undecided",
            k + 1,
            r.abstract_candidates_above_bound,
            r.refuted_above_bound,
            r.undecided_above_bound
        ));
    }
    Ok(lines.join("; "))
}

fn criterion_6() -> Check {
    let a = Arrangement::from_lines(vec![
        Line::from_i64(0, 1, 0),
        Line::from_i64(1, -1, 0),
        Line::from_i64(3, -2, 3),
        Line::from_i64(3, -2, 6),
        Line::from_i64(6, -5, 6),
    ])
    .unwrap();
    let v = type_vectors(&a);
    ensure(v.t_from_one() == [0, 3, 2], || format!("line type {:?}", v.t_from_one()))?;
    ensure(v.s_from_one() == [0, 2, 2], || format!("slope type {:?}", v.s_from_one()))?;
    ensure(v.p_from_two() == [3, 2], || format!("point type {:?}", v.p_from_two()))?;
    let d = point_line_degree_type(&a, &Point::from_ints(1, 0)).map_err(|e| e.to_string())?;
    ensure(d.by_line_size == [0, 2, 1, 0, 0], || format!("degree type {:?}", d.by_line_size))?;
    Ok("t (0,3,2), s (0,2,2), p (3,2), degree type (0,2,1,0,0)".into())
}

fn random_affine(rng: &mut ChaCha8Rng) -> [[Rational; 3]; 2] {
    loop {
        let mut r = || rat(rng.gen_range(-5..=5), rng.gen_range(1..=4));
        let m = [[r(), r(), r()], [r(), r(), r()]];
        if &m[0][0] * &m[1][1] != &m[0][1] * &m[1][0] {
            return m;
        }
    }
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut entries = Vec::new();
    for k in 2..=5 {
        entries.extend(enumerate(k, k + 2, &opts()).unwrap().entries);
    }
    for e in &entries {
        for _ in 0..100 {
            let img = e.arrangement.map_affine(random_affine(&mut rng));
            ensure(canonical_code(&img) == e.code, || format!("{}: code changed", e.file_stem()))?;
            ensure(summary_triple(&img) == e.triple, || format!("{}: triple changed", e.file_stem()))?;
            ensure(type_vectors(&img) == e.vectors, || format!("{}: type vectors changed", e.file_stem()))?;
        }
    }
    let pool: Vec<&Arrangement> = entries.iter().map(|e| &e.arrangement).filter(|a| a.num_points() >= 4).collect();
    let mut equivalent = 0;
    for _ in 0..50 {
        let i = rng.gen_range(0..pool.len());
        let j = if rng.gen_bool(0.5) { i } else { rng.gen_range(0..pool.len()) };
        let other = pool[j].map_affine(random_affine(&mut rng));
        for mode in [EquivalenceMode::Affine, EquivalenceMode::Projective] {
            let w = projective_equivalent(pool[i], &other, mode).map_err(|e| e.to_string())?;
            if w.is_some() {
                equivalent += 1;
                ensure(is_isomorphic(pool[i], &other).is_some(), || "witness without isomorphism".into())?;
            }
        }
    }
    ensure(equivalent > 0, || "no equivalent pair in the corpus".into())?;
    Ok(format!(
        "{} entries x 100 maps; 50 pairs, {equivalent} witnesses, all isomorphic",
        entries.len()
    ))
}

fn catalog_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../catalog")
}

fn criterion_8() -> Check {
    let mut counts = Vec::new();
    for k in 4..=7 {
        let e = enumerate(k, k + 2, &opts()).map_err(|e| e.to_string())?;
        for entry in &e.entries {
            ensure(entry.arrangement.is_valid(), || format!("{} invalid", entry.file_stem()))?;
            ensure(entry.arrangement.num_points() == k, || format!("{} has wrong k", entry.file_stem()))?;
        }
        let codes: BTreeSet<_> = e.codes().into_iter().collect();
        ensure(codes.len() == e.entries.len(), || format!("k={k}: duplicate classes"))?;
        let grid = grid_oracle(k, 3, k + 2);
        let missing = grid.iter().filter(|c| !codes.contains(*c)).count();
        ensure(missing == 0, || format!("k={k}: {missing} grid classes missing from enumeration"))?;
        for c in &e.cells {
            ensure(c.is_balanced(), || format!("k={k} n={}: {c:?}", c.n))?;
        }
        let path = catalog_dir().join(format!("k{k}/catalog_summary.txt"));
        let committed = std::fs::read_to_string(&path).map_err(|err| format!("{}: {err}", path.display()))?;
        ensure(committed == catalog_summary(&e), || format!("{} is stale", path.display()))?;
        counts.push(format!("k={k}: {} entries, grid {}", e.entries.len(), grid.len()));
    }
    Ok(counts.join("; "))
}

fn criterion_9() -> Check {
    ensure(validate(&[], &[]).unwrap().is_valid(), || "empty arrangement".into())?;
    let single = Arrangement::from_lines(vec![Line::from_i64(2, 3, 5)]).unwrap();
    ensure(single.is_valid() && single.num_points() == 0, || "single line".into())?;
    for n in 2..=6 {
        let p = parallel_family(n);
        ensure(p.is_valid() && p.num_points() == 0, || format!("{n} parallel lines"))?;
    }
    for n in 2..=8 {
        let t = summary_triple(&pencil(n));
        ensure((t.n, t.k, t.s) == (n, 1, n), || format!("pencil({n}) is {t}"))?;
    }
    Ok("empty, single line, parallels, pencils (n 1 n)".into())
}

fn main() {
    let criteria: [(u8, &str, Option<Duration>, fn() -> Check); 9] = [
        (1, "k=2 enumeration", Some(Duration::from_secs(1)), criterion_1),
        (2, "k=3 enumeration", Some(Duration::from_secs(5)), criterion_2),
        (3, "family laws", Some(Duration::from_secs(1)), criterion_3),
        (4, "linear spaces and the n >= k bound", None, criterion_4),
        (5, "conjecture probe k=4..7", Some(Duration::from_secs(600)), criterion_5),
        (6, "worked type vectors", None, criterion_6),
        (7, "affine invariance and equivalence implies isomorphism", None, criterion_7),
        (8, "catalog properties k=4..7", None, criterion_8),
        (9, "degenerate families", None, criterion_9),
    ];
    let mut failed = 0;
    for (id, name, limit, f) in criteria {
        let (r, took) = timed(limit, f);
        match r {
            Ok(detail) => println!("PASS criterion {id}: {name}: {detail} ({took:.2?})"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {id}: {name}: {why} ({took:.2?})");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
