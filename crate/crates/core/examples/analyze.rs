//! Prints every measure for a square with both diagonals.

use arrangements::report::analysis_report;
use arrangements::{Arrangement, Line};

fn main() {
    let square = Arrangement::from_lines(vec![
        Line::from_i64(1, 0, 1),
        Line::from_i64(1, 0, -1),
        Line::from_i64(0, 1, 1),
        Line::from_i64(0, 1, -1),
        Line::from_i64(1, -1, 0),
        Line::from_i64(1, 1, 0),
    ])
    .unwrap();
    print!("{}", analysis_report(&square).unwrap());
}
