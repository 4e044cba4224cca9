//! Load a structure file and print its Stasheff residuals. Defaults to the
//! corrupted fixture, whose A3 residual is the failed associativity.
//!
//!     cargo run --example verify_structure_file [path]

use std::path::PathBuf;

use shalg::ainfty::{check_an, load_structure};
use shalg::transfer::first_entry;

fn main() {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/corrupted.json"));
    let a = load_structure(&path).expect("structure file");
    println!("{}: order {}, dims {:?}", path.display(), a.order(), a.space().dims());
    for n in 2..=a.order() {
        let r = check_an(&a, n).unwrap();
        match first_entry(&r.map) {
            None => println!("A{n}: residual zero"),
            Some(w) => println!("A{n}: residual nonzero, {} entries, first {w}", r.map.nnz()),
        }
    }
}
