//! From drawn segments to the arrangement of their supporting lines.

use arrangements::arrangement::{canonicalize_shape, from_shape};
use arrangements::io::{serialize, serialize_shape};
use arrangements::Segment;

fn main() {
    // a unit square with its left side drawn in two pieces, plus one diagonal
    let segments = vec![
        Segment::from_ints(0, 0, 1, 0),
        Segment::from_ints(1, 0, 1, 1),
        Segment::from_ints(1, 1, 0, 1),
        Segment::from_ints(0, 1, 0, 0),
        Segment::from_ints(0, 0, 0, 1),
        Segment::from_ints(0, 0, 1, 1),
    ];
    let shape = canonicalize_shape(&segments);
    print!("{}", serialize_shape(&shape));
    let a = from_shape(&shape);
    print!("{}", serialize(&a));
    println!("valid: {}", a.is_valid());
}
