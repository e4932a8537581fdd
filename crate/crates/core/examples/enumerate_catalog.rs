//! Lists every incidence class with `k` marks (default 5).
//!
//! `cargo run --release --example enumerate_catalog -- 6`

use arrangements::enumeration::{enumerate, EnumerateOptions};
use arrangements::report::catalog_summary;

fn main() {
    let k: usize = std::env::args().nth(1).map_or(5, |s| s.parse().expect("k must be a number"));
    let opts = EnumerateOptions::from_env().expect("bad environment");
    let e = enumerate(k, k + 2, &opts).unwrap();
    print!("{}", catalog_summary(&e));
    for entry in &e.entries {
        println!("{}  {}", entry.file_stem(), entry.arrangement.lines().iter().map(|l| format!("[{l}]")).collect::<Vec<_>>().join(" "));
    }
}
