//! Transfer a strict dga onto its homology and print the resulting
//! A-infinity structure, the inclusion i∞ and a check line per identity.
//!
//!     cargo run --example transfer_to_homology [seed]

use rand::rngs::StdRng;
use rand::SeedableRng;
use shalg::ainfty::{MorphismFile, StructureFile};
use shalg::random::random_dga_with_homology;
use shalg::transfer::{transfer_m1, verify_algebra, verify_morphism, SDRData};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let mut rng = StdRng::seed_from_u64(seed);
    let a = random_dga_with_homology(&mut rng, 4, 5);
    let s = SDRData::onto_homology(a.complex());
    println!(
        "complex dims {:?}, homology dims {:?}",
        a.space().dims(),
        s.small.space().dims()
    );

    let t = transfer_m1(&a, &s).expect("transfer");
    println!(
        "transferred structure:\n{}",
        serde_json::to_string_pretty(&StructureFile::from_algebra(&t.algebra)).unwrap()
    );
    println!(
        "i∞ components:\n{}",
        serde_json::to_string_pretty(&MorphismFile::inline(&t.morphism).f).unwrap()
    );
    for line in verify_algebra(&t.algebra, 5)
        .iter()
        .chain(&verify_morphism(&t.morphism, 5))
    {
        println!("{:?} {}", line.status, line.identity);
    }
}
