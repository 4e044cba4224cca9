//! Homology of a free product of operads against the tree decomposition
//! built from the homologies of the factors.
//!
//!     cargo run --example kunneth [max_arity]

use shalg::operadcore::{ass_minimal, free_binary, free_product, kunneth_check, truncated_homology};

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let s = ass_minimal(max);
    let q = free_binary();
    for n in 1..=max {
        let window = (0, n.saturating_sub(2) as i32);
        let c = kunneth_check(&s, &q, n, window).unwrap();
        println!(
            "arity {n}: H(product) {:?}, decomposition {:?}, {}",
            c.homology_of_product,
            c.decomposition_of_homologies,
            if c.pass { "equal" } else { "DIFFERENT" }
        );
    }
    let p = free_product(&s, &q).unwrap();
    let h = truncated_homology(&p, 3, (0, 1), 3).unwrap();
    println!(
        "{} arity 3: chains {:?}, homology {:?}",
        p.name, h.chain_dims, h.homology_dims
    );
}
