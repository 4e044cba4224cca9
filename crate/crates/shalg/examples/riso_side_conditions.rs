//! Side conditions versus the zero extension of an SDR to an R_iso action:
//! each engineered violation is detected at its own generator.
//!
//!     cargo run --example riso_side_conditions

use rand::rngs::StdRng;
use rand::SeedableRng;
use shalg::random::{engineered_violation, random_sdr, Violation};
use shalg::transfer::{check_side_conditions, riso_zero_extension, RisoExtension};

fn main() {
    let mut rng = StdRng::seed_from_u64(3);
    let clean = random_sdr(&mut rng, 4);
    report("clean", &clean);
    for kind in [Violation::PhiNabla, Violation::FPhi, Violation::PhiPhi] {
        let s = loop {
            let base = random_sdr(&mut rng, 4);
            if let Some(s) = engineered_violation(&mut rng, &base, kind) {
                break s;
            }
        };
        report(&format!("{kind:?}"), &s);
    }
}

fn report(name: &str, s: &shalg::transfer::SDRData) {
    let side = check_side_conditions(s);
    let ext = riso_zero_extension(s).unwrap();
    let outcome = match &ext {
        RisoExtension::Extended(a) => format!("extends ({} generators checked)", a.certificate.checked.len()),
        RisoExtension::Obstructed {
            generator, obstruction, ..
        } => {
            format!("obstructed at {generator} ({} nonzero entries)", obstruction.nnz())
        }
    };
    println!(
        "{name:9} dims {:?} -> {:?}, violated {:?}: {outcome}",
        s.big.space().dims(),
        s.small.space().dims(),
        side.failing()
    );
}
