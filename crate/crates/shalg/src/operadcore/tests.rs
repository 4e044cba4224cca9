use std::collections::BTreeMap;

use num::One;
use proptest::prelude::*;

use super::*;
use crate::exactlin::{q, ChainComplex, GradedMap, GradedVectorSpace, Q};

fn one_color() -> ColorSet {
    ColorSet::new(vec!["a".into()]).unwrap()
}

fn free_binary(name: &str, gen: &str) -> Presentation {
    Presentation::new(name, one_color(), vec![GeneratorSpec::new(gen, &["a", "a"], "a", 0, 0)]).unwrap()
}

#[test]
fn color_sets_validate() {
    assert!(ColorSet::new(vec![]).is_err());
    assert!(ColorSet::new(vec!["x".into(), "x".into()]).is_err());
}

#[test]
fn graft_with_mismatched_color_is_zero() {
    let p = ass_arrow_minimal(3);
    let mu = p.element("mu2").unwrap();
    let nu = p.element("nu2").unwrap();
    assert!(graft(&mu, 1, &nu).unwrap().is_zero());
    assert!(matches!(
        graft(&mu, 3, &mu),
        Err(OperadError::Position { position: 3, arity: 2 })
    ));
    assert!(graft(&mu, 0, &mu).is_err());
}

#[test]
fn graft_gives_left_comb() {
    let p = ass_minimal(3);
    let mu = p.element("mu2").unwrap();
    let g = p.gen("mu2").unwrap();
    let comb = graft(&mu, 1, &mu).unwrap();
    let expected = Tree::planar(Planar::Node(g.clone(), vec![Planar::corolla(g), Planar::Leaf]));
    assert_eq!(comb.len(), 1);
    assert_eq!(comb.coefficient(&expected), Q::one());
    let assoc = comb.sub(&graft(&mu, 2, &mu).unwrap()).unwrap();
    assert_eq!(assoc.len(), 2);
    assert_eq!(assoc.to_string(), "-mu2(1,mu2) + mu2(mu2,1)");
}

#[test]
fn derivation_on_ass_model() {
    let p = ass_minimal(4);
    let mu2 = p.element("mu2").unwrap();
    let mu3 = p.element("mu3").unwrap();
    assert!(derivation_extend(&p, &mu2).unwrap().is_zero());
    let assoc = graft(&mu2, 1, &mu2)
        .unwrap()
        .sub(&graft(&mu2, 2, &mu2).unwrap())
        .unwrap();
    assert_eq!(derivation_extend(&p, &mu3).unwrap(), assoc);
    let g = p.gen("mu4").unwrap().clone();
    assert_eq!(derivation_extend(&p, &p.element("mu4").unwrap()).unwrap(), p.d_of(&g));
    let dd = derivation_extend(&p, &p.d_of(&g)).unwrap();
    assert!(dd.is_zero());
    let foreign = free_binary("other", "nu2").element("nu2").unwrap();
    assert!(matches!(
        derivation_extend(&p, &foreign),
        Err(OperadError::UnknownGenerator(_))
    ));
}

#[test]
fn d_squared_on_builtins() {
    let zero = free_binary("free", "m");
    assert!(d_squared_check(&zero, 5, 5).pass);
    let ass = ass_minimal(7);
    let c = d_squared_check(&ass, 7, 7);
    assert!(c.pass, "{c:?}");
    assert_eq!(c.checked.len(), 6);
    assert!(d_squared_check(&ass_arrow_minimal(5), 5, 9).pass);
    let r = d_squared_check(&riso(), 1, 8);
    assert!(r.pass, "{r:?}");
    assert_eq!(r.checked.len(), 10);
}

#[test]
fn sign_flip_in_mu3_fails_at_mu4() {
    let mut p = ass_minimal(5);
    let mu2 = p.element("mu2").unwrap();
    let wrong = graft(&mu2, 1, &mu2)
        .unwrap()
        .add(&graft(&mu2, 2, &mu2).unwrap())
        .unwrap();
    p.set_differential("mu3", wrong).unwrap();
    let c = d_squared_check(&p, 5, 5);
    assert!(!c.pass);
    assert_eq!(c.first_violation.as_ref().map(|v| v.0.as_str()), Some("mu4"));
}

#[test]
fn tj_filtration_violation_is_reported() {
    // an image of TJ degree 1 for a generator of TJ degree 2
    let spec = GeneratorSpec::new("nu3", &["a", "a", "a"], "a", 1, 2);
    let mut p = Presentation::new(
        "tj",
        one_color(),
        vec![GeneratorSpec::new("m", &["a", "a"], "a", 0, 0), spec],
    )
    .unwrap();
    let m = p.element("m").unwrap();
    let assoc = graft(&m, 1, &m).unwrap().sub(&graft(&m, 2, &m).unwrap()).unwrap();
    p.set_differential("nu3", assoc).unwrap();
    let c = d_squared_check(&p, 3, 3);
    assert_eq!(c.first_filtration_violation.as_deref(), Some("nu3"));
    assert!(c.first_violation.is_none());
    assert!(!c.pass);
}

#[test]
fn free_products() {
    let p = ass_minimal(4);
    let trivial = Presentation::new("one", one_color(), vec![]).unwrap();
    let pt = free_product(&p, &trivial).unwrap();
    let names = |p: &Presentation| p.generators().iter().map(|g| g.name().to_string()).collect::<Vec<_>>();
    assert_eq!(names(&pt), names(&p));
    let mn = free_product(&free_binary("m", "mu"), &free_binary("n", "nu")).unwrap();
    assert_eq!(names(&mn), vec!["mu", "nu"]);
    let big = free_product(&p, &riso()).unwrap();
    assert_eq!(
        names(&big),
        vec!["mu2", "mu3", "mu4", "f", "g", "h", "l", "f2", "g2", "f3", "g3", "f4", "g4"]
    );
    assert!(d_squared_check(&big, 4, 8).pass);
    assert!(matches!(free_product(&p, &p), Err(OperadError::NameClash(_))));
}

#[test]
fn decomposition_counts() {
    let m = free_binary("m", "mu");
    let n = free_binary("n", "nu");
    let d2 = tree_decomposition_dims(&m, &n, 2, (0, 0)).unwrap();
    assert_eq!(d2, [(0, 4)].into_iter().collect());
    let d1 = tree_decomposition_dims(&m, &n, 1, (0, 0)).unwrap();
    assert_eq!(d1, [(0, 1)].into_iter().collect());
    for k in 2..=3 {
        let direct = free_component_dims(&free_product(&m, &n).unwrap(), k, (0, 0)).unwrap();
        let via_trees = tree_decomposition_dims(&m, &n, k, (0, 0)).unwrap();
        assert_eq!(direct[&k], via_trees, "arity {k}");
    }
    // four one-vertex trees (two per factor) and four alternating two-vertex
    // trees, each with six labellings
    assert_eq!(tree_decomposition_dims(&m, &n, 3, (0, 0)).unwrap()[&0], 8 * 6);
    assert!(matches!(
        tree_decomposition_dims(&riso(), &m, 2, (0, 0)),
        Err(OperadError::Infinite(_))
    ));
}

#[test]
fn truncated_homology_examples() {
    let free = free_binary("m", "mu");
    let h = truncated_homology(&free, 3, (0, 0), 3).unwrap();
    assert_eq!(h.homology_dims, h.chain_dims);
    assert_eq!(h.boundary_length, 4);
    let ass = ass_minimal(3);
    let h3 = truncated_homology(&ass, 3, (0, 1), 3).unwrap();
    assert_eq!(h3.homology_dims[&0], 6);
    assert_eq!(h3.homology_dims[&1], 0);
    let ass4 = ass_minimal(4);
    let h4 = truncated_homology(&ass4, 4, (0, 2), 4).unwrap();
    assert_eq!(h4.homology_dims, [(0, 24), (1, 0), (2, 0)].into_iter().collect());
    let hr = truncated_homology(&riso(), 1, (0, 0), 6).unwrap();
    assert_eq!(hr.homology_dims[&0], 4);
    assert!(hr.note.contains('7'));
}

#[test]
fn kunneth_examples() {
    let m = free_binary("m", "mu");
    let n = free_binary("n", "nu");
    assert!(kunneth_check(&m, &n, 3, (0, 1)).unwrap().pass);
    let s = ass_minimal(3);
    let c = kunneth_check(&s, &n, 3, (0, 1)).unwrap();
    assert!(c.pass, "{c:?}");
    assert_eq!(c.homology_of_product[&0], 42);
    assert_eq!(c.homology_of_product[&1], 0);
    // acyclic pair: d(a) = b
    let mut acyclic = Presentation::new(
        "acyclic",
        one_color(),
        vec![
            GeneratorSpec::new("a", &["a", "a"], "a", 1, 0),
            GeneratorSpec::new("b", &["a", "a"], "a", 0, 0),
        ],
    )
    .unwrap();
    acyclic.set_differential("a", acyclic.element("b").unwrap()).unwrap();
    let c = kunneth_check(&acyclic, &n, 3, (0, 2)).unwrap();
    assert!(c.pass, "{c:?}");
    let hq = truncated_homology(&n, 3, (0, 2), 3).unwrap().homology_dims;
    let nonzero: BTreeMap<i32, usize> = c
        .homology_of_product
        .iter()
        .filter(|(_, &x)| x > 0)
        .map(|(&d, &x)| (d, x))
        .collect();
    let hq: BTreeMap<i32, usize> = hq.into_iter().filter(|(_, x)| *x > 0).collect();
    assert_eq!(nonzero, hq);
    assert!(matches!(
        kunneth_check(&riso(), &n, 2, (0, 0)),
        Err(OperadError::NotAugmented(_))
    ));
}

fn dual_numbers(associative: bool) -> (OperadAction, Presentation) {
    // basis 1, e in degree 0 with zero differential. Associative: e·e = 0.
    // Otherwise e·1 = 0 and e·e = e, so (e·1)·e != e·(1·e).
    let v = GradedVectorSpace::from_degrees(&[0, 0]);
    let c = ChainComplex::zero_differential(&v);
    let vv = crate::exactlin::tensor_power(&v, 2).unwrap();
    let entries = if associative {
        vec![(0, 0, q(1)), (1, 1, q(1)), (1, 2, q(1))]
    } else {
        vec![(0, 0, q(1)), (1, 1, q(1)), (1, 3, q(1))]
    };
    let m2 = GradedMap::from_entries(vv, v.clone(), 0, entries).unwrap();
    let p = ass_minimal(4);
    let mut a = OperadAction::new([("a".to_string(), c)].into_iter().collect());
    a.assign("mu2", m2);
    for k in 3..=4 {
        let vk = crate::exactlin::tensor_power(&v, k).unwrap();
        a.assign(&format!("mu{k}"), GradedMap::zero(vk, v.clone(), k as i32 - 2));
    }
    (a, p)
}

#[test]
fn action_checks() {
    let (a, p) = dual_numbers(true);
    let c = action_check(&a, &p, 4).unwrap();
    assert!(c.pass());
    let (b, p) = dual_numbers(false);
    let c = action_check(&b, &p, 4).unwrap();
    assert_eq!(c.first_failure(), Some("mu3"));
    let mut zero = a.clone();
    let v = zero.complexes["a"].space().clone();
    zero.assign(
        "mu2",
        GradedMap::zero(crate::exactlin::tensor_power(&v, 2).unwrap(), v.clone(), 0),
    );
    assert!(action_check(&zero, &p, 4).unwrap().pass());
    let mut bad = a.clone();
    bad.assign("mu3", GradedMap::identity(&v));
    assert!(matches!(action_check(&bad, &p, 4), Err(OperadError::Color(_))));
    let c = action_check(&a, &p, 3).unwrap();
    assert_eq!(c.skipped, vec!["mu4"]);
}

#[test]
fn permutation_map_signs() {
    let v = GradedVectorSpace::from_degrees(&[1]);
    let w = GradedVectorSpace::from_degrees(&[1, 0]);
    let tau = permutation_map(&[v.clone(), w.clone()], &[1, 0]);
    // x ⊗ y ↦ -y ⊗ x for odd x, y
    assert_eq!(tau.entry(0, 0), q(-1));
    assert_eq!(tau.entry(1, 1), q(1));
}

#[test]
fn presentation_file_roundtrip() {
    for p in [ass_minimal(4), ass_arrow_minimal(3), riso()] {
        let f = PresentationFile::from_presentation(&p);
        let json = serde_json::to_string(&f).unwrap();
        let back: PresentationFile = serde_json::from_str(&json).unwrap();
        let p2 = back.to_presentation().unwrap();
        for g in p.generators() {
            assert_eq!(p.d_of(g), p2.d_of(g), "{}", g.name());
        }
    }
    for name in ["ass-minimal", "ass-arrow-minimal", "riso", "iso-normal-forms"] {
        assert!(builtin(name, 4).is_ok());
    }
    assert!(matches!(builtin("nope", 3), Err(OperadError::UnknownModel(_))));
}

#[test]
fn riso_differential_values() {
    let p = riso();
    let d = |x: &str| derivation_extend(&p, &p.element(x).unwrap()).unwrap();
    let gf = word(&p, &["g", "f"]).unwrap();
    assert_eq!(d("h"), gf.sub(&FreeOperadElement::identity("x")).unwrap());
    let fh = word(&p, &["f", "h"]).unwrap();
    let fgf = word(&p, &["f", "g", "f"]).unwrap();
    assert_eq!(
        derivation_extend(&p, &fh).unwrap(),
        fgf.sub(&p.element("f").unwrap()).unwrap()
    );
}

/// Random elements of the Ass model: sums of random trees with random labels.
fn arb_tree(p: &Presentation, seed: Vec<(usize, usize, usize)>) -> FreeOperadElement {
    let gens = p.generators();
    let (g0, _, _) = seed[0];
    let mut e = FreeOperadElement::generator(&gens[g0 % gens.len()]);
    for &(g, pos, _) in &seed[1..] {
        let inner = FreeOperadElement::generator(&gens[g % gens.len()]);
        e = graft(&e, pos % e.arity() + 1, &inner).unwrap();
    }
    let n = e.arity();
    let mut sigma: Vec<usize> = (0..n).collect();
    for &(_, _, r) in &seed {
        sigma.rotate_left(r % n);
        sigma.swap(0, r % n);
    }
    let (t, _) = e.terms().iter().next().unwrap();
    FreeOperadElement::from_tree(t.relabel(&sigma), "a")
}

fn arb_element() -> impl Strategy<Value = FreeOperadElement> {
    let term = (prop::collection::vec((0usize..3, 0usize..4, 0usize..5), 1..3), -3i64..4);
    prop::collection::vec(term, 1..3).prop_map(|terms| {
        let p = ass_minimal(4);
        let mut acc: Option<FreeOperadElement> = None;
        for (seed, c) in terms {
            let t = arb_tree(&p, seed).scale(&q(c));
            acc = Some(match acc {
                Some(a) if a.arity() == t.arity() && (a.degree == t.degree || a.is_zero() || t.is_zero()) => {
                    a.add(&t).unwrap()
                }
                Some(a) => a,
                None => t,
            });
        }
        acc.unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_form_is_idempotent(x in arb_element()) {
        prop_assert_eq!(x.normalized().normalized(), x.normalized());
        prop_assert_eq!(x.normalized(), x.clone());
        let y = x.add(&x).unwrap().sub(&x).unwrap();
        prop_assert_eq!(&y, &x);
        prop_assert!(x.sub(&x).unwrap().is_zero());
    }

    #[test]
    fn grafting_is_associative(x in arb_element(), y in arb_element(), z in arb_element(), i in 0usize..6, j in 0usize..6, k in 0usize..6) {
        let i = i % x.arity() + 1;
        let j = j % y.arity() + 1;
        // sequential
        let a = graft(&graft(&x, i, &y).unwrap(), i + j - 1, &z).unwrap();
        let b = graft(&x, i, &graft(&y, j, &z).unwrap()).unwrap();
        prop_assert_eq!(a, b);
        // parallel, i < k
        if x.arity() >= 2 {
            let k = k % (x.arity() - 1) + 2;
            let i = (i - 1) % (k - 1) + 1;
            let a = graft(&graft(&x, i, &y).unwrap(), k + y.arity() - 1, &z).unwrap();
            let b = graft(&graft(&x, k, &z).unwrap(), i, &y).unwrap();
            let b = if (y.degree * z.degree) % 2 != 0 { b.scale(&q(-1)) } else { b };
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn leibniz_rule(x in arb_element(), y in arb_element(), i in 0usize..6) {
        let p = ass_minimal(4);
        let i = i % x.arity() + 1;
        let lhs = derivation_extend(&p, &graft(&x, i, &y).unwrap()).unwrap();
        let dx = derivation_extend(&p, &x).unwrap();
        let dy = derivation_extend(&p, &y).unwrap();
        let s = if x.degree % 2 == 0 { q(1) } else { q(-1) };
        let rhs = graft(&dx, i, &y).unwrap().add_scaled(&graft(&x, i, &dy).unwrap(), &s).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mismatched_colors_graft_to_zero(c in 0usize..2, pos in 0usize..2) {
        let p = ass_arrow_minimal(3);
        let outer = p.element(["mu2", "nu2"][c]).unwrap();
        let inner = p.element(["nu3", "mu3"][c]).unwrap();
        prop_assert!(graft(&outer, pos + 1, &inner).unwrap().is_zero());
    }

    #[test]
    fn decomposition_matches_direct_count(k in 2usize..4, deg_a in 0i32..2) {
        let a = Presentation::new("A", one_color(), vec![
            GeneratorSpec::new("p", &["a", "a"], "a", deg_a, 0),
            GeneratorSpec::new("t", &["a", "a", "a"], "a", 1, 0),
        ]).unwrap();
        let b = free_binary("B", "r");
        let direct = free_component_dims(&free_product(&a, &b).unwrap(), k, (0, 3)).unwrap();
        let via = tree_decomposition_dims(&a, &b, k, (0, 3)).unwrap();
        let nz = |m: &BTreeMap<i32, usize>| m.iter().filter(|(_, &x)| x > 0).map(|(&d, &x)| (d, x)).collect::<BTreeMap<_, _>>();
        prop_assert_eq!(nz(&direct[&k]), nz(&via));
    }
}
