//! The sign conventions in use, with worked element-level signs.
//!
//!     cargo run --example sign_conventions

use shalg::ainfty::{sign_epsilon, sign_eta, sign_nu, signs_appendix};

fn main() {
    println!("{}\n", signs_appendix());
    println!(
        "μ2(a ⊗ μ2(b ⊗ c)), |a| = 1:        {:+}",
        sign_epsilon(2, 2, 1, &[1]).unwrap()
    );
    println!(
        "μ3(a ⊗ μ2(b ⊗ c) ⊗ d), |a| = 0:   {:+}",
        sign_epsilon(3, 2, 1, &[0]).unwrap()
    );
    println!(
        "ν2(f1(a) ⊗ f2(b ⊗ c)), |a| = 1:   {:+}",
        sign_eta(&[1, 2], &[1, 0, 0]).unwrap()
    );
    println!(
        "ν3(f1 ⊗ f1 ⊗ f1), degrees 0 1 0:  {:+}",
        sign_eta(&[1, 1, 1], &[0, 1, 0]).unwrap()
    );
    println!(
        "f3(a ⊗ μ2(b ⊗ c)), |a| = 1, n = 4: {:+}",
        sign_nu(4, 2, 1, &[1]).unwrap()
    );
}
