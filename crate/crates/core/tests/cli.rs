use std::path::{Path, PathBuf};
use std::process::Command;

use arrangements::cli::{run, EXIT_INVALID, EXIT_OK, EXIT_PARSE};
use tempfile::TempDir;

struct Outcome {
    code: i32,
    out: String,
    err: String,
}

fn arr(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("arrangements").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Outcome {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const TRIANGLE: &str = "line 1 0 0\nline 0 1 0\nline 1 1 1\n";
const SQUARE: &str = "line 1 0 1\nline 1 0 -1\nline 0 1 1\nline 0 1 -1\nline 1 -1 0\nline 1 1 0\n";

#[test]
fn validate_exit_codes() {
    let d = TempDir::new().unwrap();
    let ok = write(&d, "tri.arr", TRIANGLE);
    let r = arr(&["validate", s(&ok)]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert!(r.out.contains("3 lines, 3 marks"));

    // the crossing of x = 0 and y = 0 is missing
    let missing = write(&d, "bad.arr", "line 1 0 0\nline 0 1 0\npoint 1 1\n");
    assert_eq!(arr(&["validate", s(&missing)]).code, EXIT_INVALID);

    let garbled = write(&d, "garbled.arr", "line 1 0\n");
    let r = arr(&["validate", s(&garbled)]);
    assert_eq!(r.code, EXIT_PARSE);
    assert!(r.err.contains("line 1"));

    assert_eq!(arr(&["validate", "/nonexistent/x.arr"]).code, EXIT_PARSE);
    assert_eq!(arr(&["validate"]).code, EXIT_PARSE);
}

#[test]
fn analyze_reports() {
    let d = TempDir::new().unwrap();
    let r = arr(&["analyze", s(&write(&d, "tri.arr", TRIANGLE))]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("summary (n k s): (3 3 3)"));

    let r = arr(&["analyze", s(&write(&d, "sq.arr", SQUARE))]);
    assert!(r.out.contains("summary (n k s): (6 5 4)"));
    assert!(r.out.contains("centrex (0,0)"));
    assert!(r.out.contains("signature (1,1)"));
    assert!(r.out.contains("linear space: yes"));

    let r = arr(&["analyze", s(&write(&d, "par.arr", "line 0 1 0\nline 0 1 1\n"))]);
    assert!(r.out.contains("(2 0 1)"));
    assert!(r.out.contains("k=0 family"));
}

#[test]
fn compare_modes() {
    let d = TempDir::new().unwrap();
    let rt = d.path().join("rt.arr");
    let anp = d.path().join("anp.arr");
    assert_eq!(arr(&["generate", "railtrack", "-k", "4", "--out", s(&rt)]).code, EXIT_OK);
    assert_eq!(arr(&["generate", "augmented-near-pencil", "-k", "4", "--out", s(&anp)]).code, EXIT_OK);
    let r = arr(&["compare", s(&rt), s(&anp)]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("verdict: distinct"));
    assert!(r.out.contains("also differs at measure (2), line type"));

    let sq = write(&d, "sq.arr", SQUARE);
    let image = write(
        &d,
        "sq2.arr",
        "line 1 0 0\nline 1 0 2\nline 0 1 0\nline 0 1 2\nline 1 -1 0\nline 1 1 2\n",
    );
    for mode in ["incidence", "affine", "projective"] {
        let r = arr(&["compare", s(&sq), s(&image), "--mode", mode]);
        assert_eq!(r.code, EXIT_OK, "{}", r.err);
        assert!(r.out.contains("verdict: equivalent"), "{mode}: {}", r.out);
        assert!(r.out.contains("witness:"));
    }

    let tiny = write(&d, "tiny.arr", "line 0 1 0\nline 0 1 1\nline 1 0 0\n");
    let r = arr(&["compare", s(&tiny), s(&tiny), "--mode", "affine"]);
    assert_eq!(r.code, EXIT_INVALID);
}

#[test]
fn enumerate_writes_a_catalog() {
    let d = TempDir::new().unwrap();
    let out = d.path().join("k3");
    let r = arr(&["enumerate", "--points", "3", "--out", s(&out), "--svg"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let count = |ext: &str| {
        std::fs::read_dir(&out)
            .unwrap()
            .filter(|e| e.as_ref().unwrap().path().extension().is_some_and(|x| x == ext))
            .count()
    };
    assert_eq!((count("arr"), count("svg")), (3, 3));
    let summary = std::fs::read_to_string(out.join("catalog_summary.txt")).unwrap();
    assert!(summary.ends_with("undecided: 0\n"));
    for e in std::fs::read_dir(&out).unwrap() {
        let p = e.unwrap().path();
        if p.extension().is_some_and(|x| x == "arr") {
            assert_eq!(arr(&["validate", s(&p)]).code, EXIT_OK);
        }
    }
    assert_eq!(arr(&["enumerate", "--points", "1"]).code, EXIT_INVALID);
}

#[test]
fn conjecture_probe() {
    let r = arr(&["conjecture", "--points", "4"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("most lines realized: 5"));
    assert!(r.out.contains("verdict: consistent"));
    assert_eq!(arr(&["conjecture", "--points", "4", "--max-lines", "5"]).code, EXIT_INVALID);
}

#[test]
fn shape_of_a_square_outline() {
    let d = TempDir::new().unwrap();
    let p = write(
        &d,
        "square.shape",
        "segment 0 0 1 0\nsegment 1 0 1 1\nsegment 1 1 0 1\nsegment 0 1 0 1/2\nsegment 0 1/2 0 0\n",
    );
    let r = arr(&["shape", s(&p)]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert_eq!(r.out.matches("\nline ").count(), 4);
    assert_eq!(r.out.matches("\npoint ").count(), 4);
    let r = arr(&["shape", s(&p), "--canonical"]);
    assert_eq!(r.out.matches("\nsegment ").count(), 4);
}

#[test]
fn render_is_deterministic() {
    let d = TempDir::new().unwrap();
    let p = write(&d, "sq.arr", SQUARE);
    let a = arr(&["render", s(&p), "--size", "300"]);
    let b = arr(&["render", s(&p), "--size", "300"]);
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.out, b.out);
    assert!(a.out.contains(r#"width="300""#));
    assert_eq!(a.out.matches("<line ").count(), 6);
}

#[test]
fn binary_exit_codes() {
    let d = TempDir::new().unwrap();
    let bin = env!("CARGO_BIN_EXE_arrangements");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["validate", s(&write(&d, "t.arr", TRIANGLE))]), Some(0));
    assert_eq!(status(&["validate", s(&write(&d, "b.arr", "point 0 0\n"))]), Some(2));
    assert_eq!(status(&["validate", s(&write(&d, "g.arr", "line x 0 0\n"))]), Some(3));
    assert_eq!(status(&["--help"]), Some(0));
}

#[test]
fn listed_file_examples() {
    let d = TempDir::new().unwrap();
    let computed = write(&d, "c.arr", "line 0 1 0\nline 0 1 1\nline 1 0 0\n");
    assert_eq!(arr(&["validate", s(&computed)]).code, EXIT_OK);

    let lonely = write(&d, "l.arr", "line 0 1 0\nline 1 0 0\npoint 1 0\n");
    let r = arr(&["validate", s(&lonely)]);
    assert_eq!(r.code, EXIT_INVALID);
    assert!(r.out.contains("rule 1"), "{}", r.out);

    let tri = write(&d, "t.arr", TRIANGLE);
    let scaled = write(&d, "t3.arr", "line 1 0 0\nline 0 1 0\nline 1 1 3\n");
    let r = arr(&["compare", s(&tri), s(&scaled), "--mode", "affine"]);
    assert!(r.out.contains("verdict: equivalent"));
    assert!(r.out.contains("[3  0  0]"), "{}", r.out);
}
