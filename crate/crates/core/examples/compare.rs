//! Compares arrangements at each level of detail.

use arrangements::arrangement::generate_family;
use arrangements::geometry::int;
use arrangements::report::{compare, CompareMode};
use arrangements::{Arrangement, FamilyKind, Line};

fn main() {
    let rt = generate_family(FamilyKind::Railtrack, 4).unwrap();
    let anp = generate_family(FamilyKind::AugmentedNearPencil, 4).unwrap();
    println!("railtrack(4) vs augmented near-pencil(4)\n{}", compare(&rt, &anp, CompareMode::Incidence).unwrap());

    let square = Arrangement::from_lines(vec![
        Line::from_i64(1, 0, 1),
        Line::from_i64(1, 0, -1),
        Line::from_i64(0, 1, 1),
        Line::from_i64(0, 1, -1),
        Line::from_i64(1, -1, 0),
        Line::from_i64(1, 1, 0),
    ])
    .unwrap();
    // a shear followed by a stretch
    let image = square.map_affine([[int(2), int(1), int(3)], [int(0), int(1), int(-1)]]);
    for mode in [CompareMode::Incidence, CompareMode::Affine, CompareMode::Projective] {
        println!("square vs its image\n{}", compare(&square, &image, mode).unwrap());
    }
}
