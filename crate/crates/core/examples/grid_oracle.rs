//! Cross-checks the enumeration against brute force over small-grid lines.

use std::collections::BTreeSet;

use arrangements::enumeration::{enumerate, grid_lines, grid_oracle, EnumerateOptions};

fn main() {
    println!("{} lines through the 3x3 grid", grid_lines(3).len());
    for k in 2..=6 {
        let codes: BTreeSet<_> = enumerate(k, k + 2, &EnumerateOptions::default()).unwrap().codes().into_iter().collect();
        let grid = grid_oracle(k, 3, k + 2);
        let missing = grid.iter().filter(|c| !codes.contains(*c)).count();
        println!("k={k}: enumeration {} classes, grid {} classes, {missing} missing", codes.len(), grid.len());
    }
}
