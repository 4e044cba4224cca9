//! The degree-0 part of R_iso against Iso: α_iso is onto the normal forms,
//! its kernel consists of boundaries, and the explicit witness holds.
//!
//!     cargo run --example riso_homology [length]

use shalg::operadcore::riso_truncation_check;

fn main() {
    let length: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let r = riso_truncation_check(length).unwrap();
    println!(
        "words with at most {length} letters in degree 0: {}",
        r.degree_zero_words
    );
    println!("onto Iso normal forms: {}", r.onto);
    println!(
        "kernel: {} of {} vectors are boundaries from length {}",
        r.kernel_bounded,
        r.kernel_dim,
        length + 1
    );
    println!("fgf - f = ∂(fh): {}", r.witness);
}
