use std::collections::BTreeMap;

use num::{One, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use super::bar::{p_infinity_with, BarSigns};
use super::moves::m2_candidate;
use super::*;
use crate::ainfty::{
    check_an, check_fn, compose_morphisms, morphism_sum, transport, AInfinityAlgebra, AInfinityMorphism,
};
use crate::exactlin::{hom_differential, tensor_power, ChainComplex, GradedMap, GradedVectorSpace, Space, Q};
use crate::operadcore::{action_check, riso};
use crate::random::*;

fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn algebra_ok(a: &AInfinityAlgebra) -> bool {
    (2..=a.order()).all(|n| check_an(a, n).unwrap().pass())
}

fn morphism_ok(m: &AInfinityMorphism) -> bool {
    (1..=m.order()).all(|n| check_fn(m, n).unwrap().pass())
}

fn map(src: &Space, tgt: &Space, degree: i32, entries: &[(usize, usize, i64)]) -> GradedMap {
    GradedMap::from_entries(
        src.clone(),
        tgt.clone(),
        degree,
        entries.iter().map(|&(r, c, x)| (r, c, Q::from_integer(x.into()))),
    )
    .unwrap()
}

fn bracket(x: &GradedMap, a: &ChainComplex, b: &ChainComplex) -> GradedMap {
    hom_differential(x, &[a], b).unwrap()
}

/// Basis `b` (degree 1), `c` (degree 0), `∂b = c`.
fn acyclic_pair() -> ChainComplex {
    let v = GradedVectorSpace::from_degrees(&[1, 0]);
    ChainComplex::new(map(&v, &v, -1, &[(1, 0, 1)])).unwrap()
}

#[test]
fn homology_splitting_satisfies_side_conditions() {
    let mut r = rng(1);
    for _ in 0..20 {
        let s = random_sdr(&mut r, 4);
        assert_eq!(check_side_conditions(&s).flags(), (true, true, true));
    }
}

#[test]
fn acyclic_complex_onto_zero() {
    let c = acyclic_pair();
    let zero = ChainComplex::zero_differential(&GradedVectorSpace::from_degrees(&[]));
    let nabla = GradedMap::zero(zero.space().clone(), c.space().clone(), 0);
    let f = GradedMap::zero(c.space().clone(), zero.space().clone(), 0);
    // φ(c) = -b inverts ∂ up to the sign of ∇f - 1 = -1
    let phi = map(c.space(), c.space(), 1, &[(0, 1, -1)]);
    let s = SDRData::new(c, zero, nabla, f, phi).unwrap();
    assert!(check_side_conditions(&s).all());
}

#[test]
fn perturbing_by_nabla_f_phi_breaks_f_phi() {
    // ∂ = 0 on x (0), y (1), z (1); M = A, φ(x) = y
    let v = GradedVectorSpace::from_degrees(&[0, 1, 1]);
    let c = ChainComplex::zero_differential(&v);
    let id = c.identity();
    let phi = map(&v, &v, 1, &[(1, 0, 1)]);
    let s = SDRData::new(c.clone(), c.clone(), id.clone(), id, phi).unwrap();
    let extra = s.nabla.compose(&s.f).unwrap().compose(&s.phi).unwrap();
    let s2 = s.with_phi(s.phi.add_scaled(&extra, &Q::one()).unwrap()).unwrap();
    let (_, _, f_phi) = check_side_conditions(&s2).flags();
    assert!(!f_phi);
}

#[test]
fn invalid_sdr_is_rejected() {
    let c = acyclic_pair();
    let zero = ChainComplex::zero_differential(&GradedVectorSpace::from_degrees(&[]));
    let nabla = GradedMap::zero(zero.space().clone(), c.space().clone(), 0);
    let f = GradedMap::zero(c.space().clone(), zero.space().clone(), 0);
    let phi = map(c.space(), c.space(), 1, &[(0, 1, 1)]);
    assert!(SDRData::new(c, zero, nabla, f, phi).is_err());
}

#[test]
fn normalization_is_idempotent_on_clean_input() {
    let mut r = rng(2);
    for _ in 0..10 {
        let s = random_sdr(&mut r, 4);
        let n = normalize_side_conditions(&s).unwrap();
        assert!(check_side_conditions(&n).all());
        assert!(n.nabla.equals(&s.nabla) && n.f.equals(&s.f));
    }
}

#[test]
fn normalization_repairs_violations() {
    let mut r = rng(3);
    let mut repaired = 0;
    while repaired < 20 {
        let s = random_perturbed_sdr(&mut r, 4);
        if check_side_conditions(&s).all() {
            continue;
        }
        let n = normalize_side_conditions(&s).unwrap();
        assert!(check_side_conditions(&n).all());
        assert!(n.nabla.equals(&s.nabla) && n.f.equals(&s.f));
        assert!(n.homotopy_residual().unwrap().is_zero());
        repaired += 1;
    }
}

#[test]
fn zero_extension_iff_side_conditions() {
    let mut r = rng(4);
    let (mut yes, mut no) = (0, 0);
    while yes < 10 || no < 10 {
        let s = random_perturbed_sdr(&mut r, 4);
        let ext = riso_zero_extension(&s).unwrap();
        let clean = check_side_conditions(&s).all();
        assert_eq!(ext.is_extended(), clean);
        if clean {
            yes += 1;
            let RisoExtension::Extended(a) = ext else {
                unreachable!()
            };
            assert!(action_check(&a.action, &riso(), 1).unwrap().pass());
        } else {
            no += 1;
            assert!(["f2", "g2", "g3"].contains(&ext.failing_generator().unwrap()));
        }
    }
}

fn engineered(seed: u64, kind: Violation) -> SDRData {
    let mut r = rng(seed);
    loop {
        let s = random_sdr(&mut r, 4);
        if let Some(v) = engineered_violation(&mut r, &s, kind) {
            return v;
        }
    }
}

#[test]
fn phi_nabla_violation_fails_at_f2() {
    for seed in 0..5 {
        let s = engineered(seed, Violation::PhiNabla);
        let ext = riso_zero_extension(&s).unwrap();
        assert_eq!(ext.failing_generator(), Some("f2"));
        let RisoExtension::Obstructed { obstruction, .. } = ext else {
            unreachable!()
        };
        let pn = check_side_conditions(&s).phi_nabla;
        assert!(obstruction.equals(&pn));
    }
}

#[test]
fn f_phi_violation_fails_at_g2() {
    for seed in 0..5 {
        let s = engineered(seed, Violation::FPhi);
        let ext = riso_zero_extension(&s).unwrap();
        assert_eq!(ext.failing_generator(), Some("g2"));
        let RisoExtension::Obstructed { obstruction, .. } = ext else {
            unreachable!()
        };
        let fp = check_side_conditions(&s).f_phi;
        assert!(obstruction.equals(&fp.scale(&-Q::one())));
    }
}

#[test]
fn phi_phi_violation_fails_at_g3() {
    for seed in 0..5 {
        let s = engineered(seed, Violation::PhiPhi);
        let ext = riso_zero_extension(&s).unwrap();
        assert_eq!(ext.failing_generator(), Some("g3"));
        let RisoExtension::Obstructed { obstruction, .. } = ext else {
            unreachable!()
        };
        assert!(obstruction.equals(&check_side_conditions(&s).phi_phi));
    }
}

#[test]
fn engineered_violations_have_the_requested_flags() {
    for seed in 0..5 {
        let (_, pn, _) = check_side_conditions(&engineered(seed, Violation::PhiNabla)).flags();
        assert!(!pn);
        let (_, pn, fp) = check_side_conditions(&engineered(seed, Violation::FPhi)).flags();
        assert!(pn && !fp);
        let (pp, pn, fp) = check_side_conditions(&engineered(seed, Violation::PhiPhi)).flags();
        assert!(pn && fp && !pp);
    }
}

#[test]
fn transfer_with_zero_differential_is_identity() {
    let mut r = rng(5);
    let v = GradedVectorSpace::from_degrees(&[0, 0, 1]);
    let c = ChainComplex::zero_differential(&v);
    let mut a = AInfinityAlgebra::new(c.clone(), 5);
    for n in 2..=5 {
        let src = tensor_power(&v, n).unwrap();
        a.set_mu(n, random_map(&mut r, &src, &v, n as i32 - 2, 0.3)).unwrap();
    }
    let id = c.identity();
    let s = SDRData::new(
        c.clone(),
        c.clone(),
        id.clone(),
        id,
        GradedMap::zero(v.clone(), v.clone(), 1),
    )
    .unwrap();
    let t = transfer_m1(&a, &s).unwrap();
    assert!(t.algebra.same_up_to(&a, 5));
    assert!(t.morphism.is_strict());
}

#[test]
fn transferred_mu2_is_one_vertex_tree() {
    let mut r = rng(6);
    for _ in 0..5 {
        let a = random_dga_with_homology(&mut r, 4, 3);
        let s = SDRData::onto_homology(a.complex());
        let t = transfer_m1(&a, &s).unwrap();
        let expect =
            s.f.compose(&GradedMap::compose_tensor(a.mu(2), &[&s.nabla, &s.nabla]).unwrap())
                .unwrap();
        assert!(t.algebra.mu(2).equals(&expect));
    }
}

#[test]
fn transfer_of_strict_dgas_is_coherent() {
    let mut r = rng(7);
    for _ in 0..10 {
        let a = random_dga_with_homology(&mut r, 4, 5);
        let s = sdr_random_small_basis(&mut r, &a);
        let t = transfer_m1(&a, &s).unwrap();
        assert!(algebra_ok(&t.algebra));
        assert!(morphism_ok(&t.morphism));
        assert!(t.morphism.component(1).equals(&s.nabla));
    }
}

fn sdr_random_small_basis(r: &mut StdRng, a: &AInfinityAlgebra) -> SDRData {
    let s = SDRData::onto_homology(a.complex());
    let q = random_invertible(r, s.small.space());
    let qi = q.inverse().unwrap();
    SDRData::new(
        s.big.clone(),
        s.small.clone(),
        s.nabla.compose(&qi).unwrap(),
        q.compose(&s.f).unwrap(),
        s.phi.clone(),
    )
    .unwrap()
}

#[test]
fn transfer_of_non_strict_structures_is_coherent() {
    let mut r = rng(8);
    for _ in 0..5 {
        let base = random_dga_with_homology(&mut r, 4, 5);
        let a = random_gauge_from(&mut r, &base).target().clone();
        let t = transfer_m1(&a, &SDRData::onto_homology(a.complex())).unwrap();
        assert!(algebra_ok(&t.algebra));
        assert!(morphism_ok(&t.morphism));
    }
}

#[test]
fn transfer_requires_side_conditions() {
    let s = engineered(9, Violation::FPhi);
    let a = AInfinityAlgebra::new(s.big.clone(), 3);
    assert!(matches!(transfer_m1(&a, &s), Err(TransferError::SideConditions(_))));
}

#[test]
fn one_sided_transfer_along_an_isomorphism_is_transport() {
    let mut r = rng(10);
    for _ in 0..5 {
        let a = random_ainfty(&mut r, 3, 4);
        let p = random_invertible(&mut r, a.space());
        let pi = p.inverse().unwrap();
        let w = ChainComplex::new(p.compose(a.complex().differential()).unwrap().compose(&pi).unwrap()).unwrap();
        let d = OneSidedData::new(
            a.complex().clone(),
            w.clone(),
            p.clone(),
            pi,
            GradedMap::zero(a.space().clone(), a.space().clone(), 1),
        )
        .unwrap();
        let t = transfer_s(&a, &d).unwrap();
        let expect = transport(&a, w, p, vec![]).unwrap();
        assert!(t.algebra.same_up_to(expect.target(), 4));
        assert!(morphism_ok(&t.morphism));
    }
}

#[test]
fn one_sided_transfer_is_coherent() {
    let mut r = rng(11);
    for _ in 0..6 {
        let a = random_dga_with_homology(&mut r, 4, 5);
        let s = sdr_random_small_basis(&mut r, &a);
        // only gf - 1 = [h, ∂] on the source is supplied
        let d = OneSidedData::new(
            a.complex().clone(),
            s.small.clone(),
            s.f.clone(),
            s.nabla.clone(),
            s.phi.clone(),
        )
        .unwrap();
        let t = transfer_s(&a, &d).unwrap();
        assert!(algebra_ok(&t.algebra));
        assert!(morphism_ok(&t.morphism));
        assert!(t.morphism.component(1).equals(&s.nabla));
    }
}

#[test]
fn one_sided_transfer_without_side_conditions() {
    let mut r = rng(12);
    let mut done = 0;
    while done < 5 {
        let a = random_dga_with_homology(&mut r, 4, 4);
        let s = SDRData::onto_homology(a.complex());
        let space = s.big.space().clone();
        let w = random_map(&mut r, &space, &space, 2, 0.7);
        let phi = s.phi.add_scaled(&bracket(&w, &s.big, &s.big), &Q::one()).unwrap();
        let Ok(s) = s.with_phi(phi) else { continue };
        if check_side_conditions(&s).all() {
            continue;
        }
        let d = OneSidedData::new(
            a.complex().clone(),
            s.small.clone(),
            s.f.clone(),
            s.nabla.clone(),
            s.phi.clone(),
        )
        .unwrap();
        let t = transfer_s(&a, &d).unwrap();
        assert!(algebra_ok(&t.algebra));
        assert!(morphism_ok(&t.morphism));
        done += 1;
    }
}

#[test]
fn one_sided_transfer_to_zero() {
    let mut r = rng(13);
    let a = random_ainfty(&mut r, 3, 4);
    let zero = ChainComplex::zero_differential(&GradedVectorSpace::from_degrees(&[]));
    let f = GradedMap::zero(a.space().clone(), zero.space().clone(), 0);
    let g = GradedMap::zero(zero.space().clone(), a.space().clone(), 0);
    let rhs = a.complex().identity().scale(&-Q::one());
    // h exists only when a is acyclic
    if let Ok(h) = super::sdr::solve_homotopy(a.complex(), rhs, "test") {
        let d = OneSidedData::new(a.complex().clone(), zero, f, g, h).unwrap();
        let t = transfer_s(&a, &d).unwrap();
        assert!((2..=4).all(|n| t.algebra.mu(n).is_zero()));
    }
    let acyc = acyclic_pair();
    let a = AInfinityAlgebra::new(acyc.clone(), 4);
    let h = map(acyc.space(), acyc.space(), 1, &[(0, 1, -1)]);
    let f = GradedMap::zero(acyc.space().clone(), GradedVectorSpace::from_degrees(&[]), 0);
    let g = GradedMap::zero(GradedVectorSpace::from_degrees(&[]), acyc.space().clone(), 0);
    let zero = ChainComplex::zero_differential(&GradedVectorSpace::from_degrees(&[]));
    let d = OneSidedData::new(acyc, zero, f, g, h).unwrap();
    let t = transfer_s(&a, &d).unwrap();
    assert!(t.algebra.space().dim() == 0 && (2..=4).all(|n| t.algebra.mu(n).is_zero()));
}

#[test]
fn p_infinity_is_coherent() {
    let mut r = rng(14);
    for _ in 0..8 {
        let base = random_dga_with_homology(&mut r, 4, 4);
        let a = random_gauge_from(&mut r, &base).target().clone();
        let s = SDRData::onto_homology(a.complex());
        let t = transfer_m1(&a, &s).unwrap();
        let p = p_infinity(&a, &s, &t.algebra).unwrap();
        assert!(morphism_ok(&p));
        assert!(p.component(1).equals(&s.f));
        // p∞ ∘ i∞ has underlying map 1
        let pi = compose_morphisms(&p, &t.morphism).unwrap();
        assert!(pi.component(1).equals(&t.algebra.complex().identity()));
        assert!(morphism_ok(&pi));
    }
}

#[test]
fn other_suspension_signs_are_rejected() {
    let mut r = rng(15);
    let wrong = BarSigns {
        op: |_| 0,
        eps: 0,
        out: |n| (n * (n - 1) / 2) as i64,
    };
    let mut rejected = false;
    for _ in 0..10 {
        let a = random_dga_with_homology(&mut r, 4, 4);
        let s = SDRData::onto_homology(a.complex());
        let t = transfer_m1(&a, &s).unwrap();
        let p = p_infinity_with(&a, &s, &t.algebra, &wrong).unwrap();
        rejected |= !morphism_ok(&p);
    }
    assert!(rejected);
}

fn random_homotopy(r: &mut StdRng, m: &AInfinityMorphism) -> (GradedMap, GradedMap) {
    let h = random_map(r, m.source().space(), m.target().space(), 1, 0.5);
    let g = m
        .component(1)
        .add_scaled(&bracket(&h, m.source().complex(), m.target().complex()), &Q::one())
        .unwrap();
    (g, h)
}

#[test]
fn perturbation_by_zero_is_trivial() {
    let mut r = rng(16);
    let m = random_gauge(&mut r, 3, 4);
    let zero = GradedMap::zero(m.source().space().clone(), m.target().space().clone(), 1);
    let out = perturb_m2(&m, m.component(1), &zero).unwrap();
    assert!(out.same_as(&m));
}

#[test]
fn perturbation_closed_form_solves_each_stage() {
    let mut r = rng(17);
    for _ in 0..8 {
        let m = random_gauge(&mut r, 3, 4);
        let (g, h) = random_homotopy(&mut r, &m);
        let mut comps = vec![g];
        for n in 2..=4 {
            let rhs = morphism_sum(m.source(), m.target(), &comps, n).unwrap();
            let cand = m2_candidate(&m, &comps, &h, n).unwrap();
            let sources = vec![m.source().complex(); n];
            assert!(
                hom_differential(&cand, &sources, m.target().complex())
                    .unwrap()
                    .equals(&rhs),
                "stage {n}"
            );
            comps.push(cand);
        }
    }
}

#[test]
fn perturbation_of_strict_morphism() {
    let mut r = rng(18);
    for _ in 0..5 {
        let a = random_strict_dga(&mut r, 3, 4);
        let m = AInfinityMorphism::identity(&a);
        let (g, h) = random_homotopy(&mut r, &m);
        let out = perturb_m2(&m, &g, &h).unwrap();
        assert!(out.component(1).equals(&g));
        assert!(morphism_ok(&out));
    }
}

#[test]
fn perturbation_rejects_invalid_homotopy() {
    let mut r = rng(19);
    let m = random_gauge(&mut r, 3, 3);
    let h = random_map(&mut r, m.source().space(), m.target().space(), 1, 1.0);
    let bad = m.component(1).clone();
    if !bracket(&h, m.source().complex(), m.target().complex()).is_zero() {
        assert!(matches!(perturb_m2(&m, &bad, &h), Err(TransferError::Hypothesis(_))));
    }
}

#[test]
fn inversion_of_identity() {
    let mut r = rng(20);
    let a = random_ainfty(&mut r, 3, 4);
    let m = AInfinityMorphism::identity(&a);
    let c = a.complex();
    let z = GradedMap::zero(c.space().clone(), c.space().clone(), 1);
    let e = HomotopyEquivalence::new(c.clone(), c.clone(), c.identity(), c.identity(), z.clone(), z).unwrap();
    let inv = invert_m3(&m, &e).unwrap();
    assert!(inv.same_as(&m));
}

#[test]
fn inversion_of_strict_isomorphism() {
    let mut r = rng(21);
    let a = random_strict_dga(&mut r, 4, 4);
    let p = random_invertible(&mut r, a.space());
    let pi = p.inverse().unwrap();
    let w = ChainComplex::new(p.compose(a.complex().differential()).unwrap().compose(&pi).unwrap()).unwrap();
    let m = transport(&a, w.clone(), p.clone(), vec![]).unwrap();
    let zv = GradedMap::zero(a.space().clone(), a.space().clone(), 1);
    let zw = GradedMap::zero(w.space().clone(), w.space().clone(), 1);
    let e = HomotopyEquivalence::new(a.complex().clone(), w, p, pi.clone(), zv, zw).unwrap();
    let inv = invert_m3(&m, &e).unwrap();
    assert!(inv.is_strict() && inv.component(1).equals(&pi));
    assert!(morphism_ok(&inv));
}

#[test]
fn inversion_of_transferred_morphism() {
    let mut r = rng(22);
    for _ in 0..5 {
        let a = random_dga_with_homology(&mut r, 4, 4);
        let s = SDRData::onto_homology(a.complex());
        let t = transfer_m1(&a, &s).unwrap();
        let inv = invert_m3(&t.morphism, &s.equivalence()).unwrap();
        assert!(inv.component(1).equals(&s.f));
        assert!(morphism_ok(&inv));
        let back = compose_morphisms(&inv, &t.morphism).unwrap();
        assert!(back.component(1).equals(&t.algebra.complex().identity()));
        assert!(morphism_ok(&back));
    }
}

#[test]
fn inversion_of_perturbed_non_invertible_morphisms() {
    let mut r = rng(23);
    for _ in 0..5 {
        let base = random_dga_with_homology(&mut r, 4, 4);
        let a = random_gauge_from(&mut r, &base).target().clone();
        let s = sdr_random_small_basis(&mut r, &a);
        let t = transfer_m1(&a, &s).unwrap();
        // move ∇ by a null-homotopic map and adjust the equivalence
        let k = random_map(&mut r, s.small.space(), s.big.space(), 1, 0.5);
        let f = s.nabla.add_scaled(&bracket(&k, &s.small, &s.big), &Q::one()).unwrap();
        let m = perturb_m2(&t.morphism, &f, &k).unwrap();
        let h = s.f.compose(&k).unwrap();
        let l = s.phi.add_scaled(&k.compose(&s.f).unwrap(), &Q::one()).unwrap();
        let e = HomotopyEquivalence::new(s.small.clone(), s.big.clone(), f, s.f.clone(), h, l).unwrap();
        let inv = invert_m3(&m, &e).unwrap();
        assert!(inv.component(1).equals(&s.f));
        assert!(morphism_ok(&inv));
    }
}

#[test]
fn chain_of_one_is_unchanged() {
    let mut r = rng(24);
    let m = random_gauge(&mut r, 3, 4);
    let z = GradedMap::zero(m.source().space().clone(), m.target().space().clone(), 1);
    assert!(chain_m4(std::slice::from_ref(&m), m.component(1), &z)
        .unwrap()
        .same_as(&m));
}

#[test]
fn chain_of_strict_morphisms_is_strict() {
    let mut r = rng(25);
    let a = random_strict_dga(&mut r, 3, 4);
    let (w, p) = conj_complex(&mut r, &a);
    let m1 = transport(&a, w, p, vec![]).unwrap();
    let (w2, p2) = conj_complex(&mut r, m1.target());
    let m2 = transport(m1.target(), w2, p2, vec![]).unwrap();
    let g = m2.component(1).compose(m1.component(1)).unwrap();
    let z = GradedMap::zero(a.space().clone(), m2.target().space().clone(), 1);
    let out = chain_m4(&[m1, m2], &g, &z).unwrap();
    assert!(out.is_strict());
    assert!(morphism_ok(&out));
}

fn conj_complex(r: &mut StdRng, a: &AInfinityAlgebra) -> (ChainComplex, GradedMap) {
    let p = random_invertible(r, a.space());
    let pi = p.inverse().unwrap();
    (
        ChainComplex::new(p.compose(a.complex().differential()).unwrap().compose(&pi).unwrap()).unwrap(),
        p,
    )
}

#[test]
fn chain_of_three_random_morphisms() {
    let mut r = rng(26);
    for _ in 0..5 {
        let m1 = random_gauge(&mut r, 3, 4);
        let m2 = random_gauge_from(&mut r, m1.target());
        let m3 = random_gauge_from(&mut r, m2.target());
        let composite = compose_morphisms(&m3, &compose_morphisms(&m2, &m1).unwrap()).unwrap();
        let (g, h) = random_homotopy(&mut r, &composite);
        let out = chain_m4(&[m1, m2, m3], &g, &h).unwrap();
        assert!(out.component(1).equals(&g));
        assert!(morphism_ok(&out));
    }
}

#[test]
fn splitting_of_an_isomorphism() {
    let mut r = rng(27);
    let c = random_complex(&mut r, 4);
    let (w, p) = {
        let a = AInfinityAlgebra::new(c.clone(), 2);
        conj_complex(&mut r, &a)
    };
    let pi = p.inverse().unwrap();
    let zv = GradedMap::zero(c.space().clone(), c.space().clone(), 1);
    let zw = GradedMap::zero(w.space().clone(), w.space().clone(), 1);
    let e = HomotopyEquivalence::new(c, w, p.clone(), pi.clone(), zv, zw).unwrap();
    let split = sdr_from_equivalence(&e).unwrap();
    let d = split.direct.unwrap();
    assert!(d.nabla.equals(&p) && d.f.equals(&pi) && d.phi.is_zero());
}

#[test]
fn splitting_of_a_projection_off_an_acyclic_summand() {
    // V = W ⊕ (b → c), f the projection onto W
    let wspace = GradedVectorSpace::from_degrees(&[0, 1]);
    let w = ChainComplex::zero_differential(&wspace);
    let vspace = GradedVectorSpace::from_degrees(&[0, 1, 1, 0]);
    let v = ChainComplex::new(map(&vspace, &vspace, -1, &[(3, 2, 1)])).unwrap();
    let f = map(&vspace, &wspace, 0, &[(0, 0, 1), (1, 1, 1)]);
    let g = map(&wspace, &vspace, 0, &[(0, 0, 1), (1, 1, 1)]);
    let h = map(&vspace, &vspace, 1, &[(2, 3, -1)]);
    let l = GradedMap::zero(wspace.clone(), wspace.clone(), 1);
    let e = HomotopyEquivalence::new(v, w, f.clone(), g, h, l).unwrap();
    let split = sdr_from_equivalence(&e).unwrap();
    let d = split.direct.unwrap();
    assert!(d.f.equals(&f));
    assert!(check_side_conditions(&d).all());
    // φ lives on the acyclic summand
    for c in 0..4 {
        for row in 0..4 {
            if row < 2 || c < 2 {
                assert!(d.phi.entry(row, c).is_zero());
            }
        }
    }
    assert!(!d.phi.entry(2, 3).is_zero());
}

#[test]
fn splitting_of_random_equivalences() {
    let mut r = rng(28);
    for _ in 0..20 {
        let e = random_equivalence(&mut r, 4);
        let split = sdr_from_equivalence(&e).unwrap();
        for s in [&split.source_homology, &split.target_homology] {
            let again = SDRData::new(
                s.big.clone(),
                s.small.clone(),
                s.nabla.clone(),
                s.f.clone(),
                s.phi.clone(),
            )
            .unwrap();
            assert!(check_side_conditions(&again).all());
        }
        assert!(split.homology_iso.inverse().is_some());
        if let Some(d) = &split.direct {
            assert!(check_side_conditions(d).all());
        }
    }
}

#[test]
fn splitting_rejects_non_equivalences() {
    let c = acyclic_pair();
    let x = ChainComplex::zero_differential(&GradedVectorSpace::from_degrees(&[0]));
    let f = GradedMap::zero(x.space().clone(), c.space().clone(), 0);
    let g = GradedMap::zero(c.space().clone(), x.space().clone(), 0);
    let h = GradedMap::zero(x.space().clone(), x.space().clone(), 1);
    let l = map(c.space(), c.space(), 1, &[(0, 1, -1)]);
    // gf - 1 = -1 on x is not null-homotopic
    assert!(HomotopyEquivalence::new(x, c, f, g, h, l).is_err());
}

#[test]
fn sdr_file_round_trip() {
    let mut r = rng(29);
    let s = random_perturbed_sdr(&mut r, 4);
    let text = serde_json::to_string(&SdrFile::from_sdr(&s)).unwrap();
    let back: SdrFile = serde_json::from_str(&text).unwrap();
    let s2 = back.to_sdr(None).unwrap();
    assert!(s2.big == s.big && s2.nabla.equals(&s.nabla) && s2.f.equals(&s.f) && s2.phi.equals(&s.phi));
}

#[test]
fn riso_action_from_clean_sdr_through_f4() {
    let mut r = rng(30);
    let s = random_sdr(&mut r, 4);
    let a = riso_action(&s.equivalence(), &BTreeMap::new());
    let cert = action_check(&a, &riso(), 1).unwrap();
    assert_eq!(cert.checked.len(), 10);
    assert!(cert.pass());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn prop_normalize_preserves_data(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_perturbed_sdr(&mut r, 4);
        let n = normalize_side_conditions(&s).unwrap();
        prop_assert!(check_side_conditions(&n).all());
        prop_assert!(n.nabla.equals(&s.nabla) && n.f.equals(&s.f));
        prop_assert!(n.homotopy_residual().unwrap().is_zero());
    }

    #[test]
    fn prop_zero_extension_iff(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_perturbed_sdr(&mut r, 4);
        prop_assert_eq!(riso_zero_extension(&s).unwrap().is_extended(), check_side_conditions(&s).all());
    }

    #[test]
    fn prop_transfer_coherent(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_strict_dga(&mut r, 4, 4);
        let t = transfer_m1(&a, &SDRData::onto_homology(a.complex())).unwrap();
        prop_assert!(algebra_ok(&t.algebra));
        prop_assert!(morphism_ok(&t.morphism));
    }

    #[test]
    fn prop_perturbation_hits_g(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_gauge(&mut r, 3, 4);
        let (g, h) = random_homotopy(&mut r, &m);
        let out = perturb_m2(&m, &g, &h).unwrap();
        prop_assert!(out.component(1).equals(&g));
        prop_assert!(morphism_ok(&out));
    }

    #[test]
    fn prop_splitting_is_clean(seed in any::<u64>()) {
        let mut r = rng(seed);
        let e = random_equivalence(&mut r, 4);
        let split = sdr_from_equivalence(&e).unwrap();
        prop_assert!(check_side_conditions(&split.source_homology).all());
        prop_assert!(check_side_conditions(&split.target_homology).all());
    }
}
