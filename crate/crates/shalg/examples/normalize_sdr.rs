//! Repair an SDR that breaks the side conditions by changing φ only.
//!
//!     cargo run --example normalize_sdr

use rand::rngs::StdRng;
use rand::SeedableRng;
use shalg::random::random_perturbed_sdr;
use shalg::transfer::{check_side_conditions, normalize_side_conditions, SdrFile};

fn main() {
    let mut rng = StdRng::seed_from_u64(5);
    let s = loop {
        let s = random_perturbed_sdr(&mut rng, 4);
        if !check_side_conditions(&s).all() {
            break s;
        }
    };
    println!("before: violated {:?}", check_side_conditions(&s).failing());
    let n = normalize_side_conditions(&s).unwrap();
    println!("after:  violated {:?}", check_side_conditions(&n).failing());
    println!("∇, f unchanged: {}", n.nabla.equals(&s.nabla) && n.f.equals(&s.f));
    println!("{}", serde_json::to_string_pretty(&SdrFile::from_sdr(&n)).unwrap());
}
