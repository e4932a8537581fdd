//! Looks one line past `k + 1` for every `k` from 3 to 7.

use arrangements::enumeration::{verify_conjecture, EnumerateOptions};

fn main() {
    let opts = EnumerateOptions::default();
    for k in 3..=7 {
        let r = verify_conjecture(k, k + 2, &opts).unwrap();
        println!("{r}\n");
    }
}
