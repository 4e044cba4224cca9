//! The Stasheff identities and the action of the minimal model of Ass on
//! End(V) are two independent checks of the same condition; run both on
//! random truncated structures and compare.
//!
//!     cargo run --example oracle_equivalence [count]

use rand::rngs::StdRng;
use rand::SeedableRng;
use shalg::ainfty::{action_from_structure, check_an};
use shalg::operadcore::{action_check, ass_minimal};
use shalg::random::random_structure;

fn main() {
    let count: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20);
    let mut rng = StdRng::seed_from_u64(1);
    let model = ass_minimal(4);
    let mut disagreements = 0;
    for i in 0..count {
        let a = random_structure(&mut rng, 3, 4);
        let stasheff: Vec<bool> = (2..=4).map(|n| check_an(&a, n).unwrap().pass()).collect();
        let cert = action_check(&action_from_structure(&a), &model, 4).unwrap();
        let agree = stasheff.iter().all(|&b| b) == cert.pass();
        disagreements += usize::from(!agree);
        println!(
            "#{i:2} dim {} A2..A4 {stasheff:?} action {} {}",
            a.space().dim(),
            cert.pass(),
            if agree { "" } else { "DISAGREE" }
        );
    }
    println!("{disagreements} disagreements in {count} instances");
}
