//! Checks both construction rules on a hand-made arrangement and on one
//! with a missing mark.

use arrangements::arrangement::validate;
use arrangements::{Line, Point};

fn main() {
    let lines = vec![Line::from_i64(1, 0, 0), Line::from_i64(0, 1, 0), Line::from_i64(1, 1, 1)];
    let marks = vec![Point::from_ints(0, 0), Point::from_ints(0, 1), Point::from_ints(1, 0)];
    let report = validate(&lines, &marks).expect("well-formed input");
    println!("triangle:\n{report}");

    let report = validate(&lines, &marks[..2]).expect("well-formed input");
    println!("triangle without (1,0):\n{report}");
}
