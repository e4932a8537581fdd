//! The three named families, plus pencils and parallel lines.

use arrangements::arrangement::{generate_family, parallel_family, pencil};
use arrangements::invariants::{classify, summary_triple};
use arrangements::io::serialize;
use arrangements::FamilyKind;

fn main() {
    for k in 3..=6 {
        for kind in [FamilyKind::NearPencil, FamilyKind::AugmentedNearPencil, FamilyKind::Railtrack] {
            let a = generate_family(kind, k).unwrap();
            let back = classify(&a).unwrap();
            println!("k={k} {:<24} {}  recognized as {back:?}", kind.name(), summary_triple(&a));
        }
    }
    println!("pencil(4) {}", summary_triple(&pencil(4)));
    println!("parallel(3) {}", summary_triple(&parallel_family(3)));
    print!("\n{}", serialize(&generate_family(FamilyKind::Railtrack, 3).unwrap()));
}
