//! Print the differential of the minimal models on low generators and
//! check ∂∂ = 0 up to an arity bound.
//!
//!     cargo run --example operad_d_squared [arity]

use shalg::ainfty::minimal_model_differential;
use shalg::operadcore::{ass_arrow_minimal, ass_minimal, d_squared_check};

fn main() {
    let arity: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    for g in ["mu3", "mu4"] {
        println!(
            "ass-minimal ∂{g} = {}",
            minimal_model_differential("ass-minimal", g).unwrap()
        );
    }
    for g in ["f2", "f3"] {
        println!(
            "ass-arrow-minimal ∂{g} = {}",
            minimal_model_differential("ass-arrow-minimal", g).unwrap()
        );
    }
    for p in [ass_minimal(arity), ass_arrow_minimal(arity)] {
        let c = d_squared_check(&p, arity, 16);
        println!(
            "{}: ∂∂ = 0 on {} generators up to arity {arity}: {}",
            c.presentation,
            c.checked.len(),
            if c.pass { "yes" } else { "NO" }
        );
        if let Some((g, len)) = &c.first_violation {
            println!("  first violation at {g} (length {len})");
        }
    }
}
