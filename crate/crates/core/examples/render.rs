//! Writes an SVG of the near-pencil on five marks to the given path, or to
//! stdout.

use arrangements::arrangement::generate_family;
use arrangements::render::{render_svg, RenderSpec};
use arrangements::FamilyKind;

fn main() {
    let a = generate_family(FamilyKind::NearPencil, 5).unwrap();
    let svg = render_svg(&a, &RenderSpec { size: 320 });
    match std::env::args().nth(1) {
        Some(path) => std::fs::write(&path, svg).expect("write failed"),
        None => print!("{svg}"),
    }
}
