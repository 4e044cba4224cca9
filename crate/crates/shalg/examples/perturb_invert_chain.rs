//! The moves on morphisms: perturb the underlying map of a morphism by a
//! homotopy (m2), invert i∞ along its equivalence (m3) and compose a chain
//! with a prescribed underlying map (m4).
//!
//!     cargo run --example perturb_invert_chain

use num::One;
use rand::rngs::StdRng;
use rand::SeedableRng;
use shalg::ainfty::{check_fn, compose_morphisms, AInfinityMorphism};
use shalg::exactlin::{hom_differential, Q};
use shalg::random::{random_dga_with_homology, random_gauge, random_gauge_from, random_map};
use shalg::transfer::{chain_m4, invert_m3, perturb_m2, transfer_m1, SDRData};

fn coherent(m: &AInfinityMorphism) -> bool {
    (1..=m.order()).all(|n| check_fn(m, n).unwrap().pass())
}

fn main() {
    let mut rng = StdRng::seed_from_u64(11);

    let m = random_gauge(&mut rng, 3, 4);
    let h = random_map(&mut rng, m.source().space(), m.target().space(), 1, 0.5);
    let dh = hom_differential(&h, &[m.source().complex()], m.target().complex()).unwrap();
    let g = m.component(1).add_scaled(&dh, &Q::one()).unwrap();
    let p = perturb_m2(&m, &g, &h).unwrap();
    println!(
        "m2: underlying map is g: {}, coherent: {}",
        p.component(1).equals(&g),
        coherent(&p)
    );

    let a = random_dga_with_homology(&mut rng, 4, 4);
    let s = SDRData::onto_homology(a.complex());
    let t = transfer_m1(&a, &s).unwrap();
    let inv = invert_m3(&t.morphism, &s.equivalence()).unwrap();
    let back = compose_morphisms(&inv, &t.morphism).unwrap();
    println!(
        "m3: inverse extends f: {}, coherent: {}, inverse ∘ i∞ has underlying map 1: {}",
        inv.component(1).equals(&s.f),
        coherent(&inv),
        back.component(1).equals(&t.algebra.complex().identity())
    );

    let m1 = random_gauge(&mut rng, 3, 4);
    let m2 = random_gauge_from(&mut rng, m1.target());
    let composite = compose_morphisms(&m2, &m1).unwrap();
    let h = random_map(&mut rng, m1.source().space(), m2.target().space(), 1, 0.5);
    let dh = hom_differential(&h, &[m1.source().complex()], m2.target().complex()).unwrap();
    let g = composite.component(1).add_scaled(&dh, &Q::one()).unwrap();
    let c = chain_m4(&[m1, m2], &g, &h).unwrap();
    println!(
        "m4: underlying map is g: {}, coherent: {}",
        c.component(1).equals(&g),
        coherent(&c)
    );
}
