//! Seeded random instances: complexes, strict dgas, non-strict structures and
//! morphisms, SDR data (clean or with engineered side-condition failures)
//! and homotopy equivalences.

use std::collections::BTreeMap;

use num::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::ainfty::{check_an, transport, AInfinityAlgebra, AInfinityMorphism};
use crate::exactlin::{
    hom_differential, tensor_power, ChainComplex, GradedMap, GradedVectorSpace, LinearOutcome, LinearSystem, Space, Q,
};
use crate::transfer::{check_side_conditions, HomotopyEquivalence, SDRData};

fn small<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Q {
    Q::from_integer(rng.gen_range(-bound..=bound).into())
}

/// Random map of the given degree; each admissible entry is nonzero with
/// probability `density`.
pub fn random_map<R: Rng + ?Sized>(
    rng: &mut R,
    source: &Space,
    target: &Space,
    degree: i32,
    density: f64,
) -> GradedMap {
    let mut entries = Vec::new();
    for c in 0..source.dim() {
        for &r in target.indices_in(source.degree(c) + degree) {
            if rng.gen_bool(density) {
                let x = small(rng, 2);
                if !x.is_zero() {
                    entries.push((r, c, x));
                }
            }
        }
    }
    GradedMap::from_entries(source.clone(), target.clone(), degree, entries).expect("entries in range")
}

/// Degree-preserving automorphism: a product of unitriangular blocks with a
/// sign-and-scale diagonal.
pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, space: &Space) -> GradedMap {
    let mut entries = Vec::new();
    for d in space.degrees().collect::<Vec<_>>() {
        let idx = space.indices_in(d);
        let n = idx.len();
        let mut lower = vec![vec![Q::zero(); n]; n];
        let mut upper = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            lower[i][i] = Q::one();
            upper[i][i] = [Q::one(), -Q::one(), Q::from_integer(2.into())]
                .choose(rng)
                .expect("nonempty")
                .clone();
            for j in 0..i {
                lower[i][j] = small(rng, 1);
                upper[j][i] = small(rng, 1);
            }
        }
        for i in 0..n {
            for j in 0..n {
                let x: Q = (0..n).map(|k| &lower[i][k] * &upper[k][j]).sum();
                if !x.is_zero() {
                    entries.push((idx[i], idx[j], x));
                }
            }
        }
    }
    GradedMap::from_entries(space.clone(), space.clone(), 0, entries).expect("entries in range")
}

/// `P d P^{-1}` as a complex, with `P`.
fn conjugate<R: Rng + ?Sized>(rng: &mut R, c: &ChainComplex) -> (ChainComplex, GradedMap) {
    let p = random_invertible(rng, c.space());
    let inv = p.inverse().expect("invertible");
    let d = p
        .compose(c.differential())
        .and_then(|x| x.compose(&inv))
        .expect("same space");
    (ChainComplex::new(d).expect("conjugate of a differential"), p)
}

/// A complex of total dimension between 1 and `max_dim`, concentrated in
/// degrees 0..=3, in a random basis.
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R, max_dim: usize) -> ChainComplex {
    let dim = rng.gen_range(1..=max_dim.max(1));
    let mut degrees = Vec::new();
    let mut pairs = Vec::new();
    while degrees.len() < dim {
        if dim - degrees.len() >= 2 && rng.gen_bool(0.5) {
            let d = rng.gen_range(0..=2);
            pairs.push((degrees.len(), degrees.len() + 1));
            degrees.push(d + 1);
            degrees.push(d);
        } else {
            degrees.push(rng.gen_range(0..=3));
        }
    }
    let space = GradedVectorSpace::from_degrees(&degrees);
    let d = GradedMap::from_entries(
        space.clone(),
        space.clone(),
        -1,
        pairs.into_iter().map(|(a, b)| (b, a, Q::one())),
    )
    .expect("pairs in range");
    let c = ChainComplex::new(d).expect("standard differential");
    conjugate(rng, &c).0
}

fn flatten(m: &GradedMap) -> Vec<(usize, Q)> {
    let n = m.source().dim();
    let mut v: Vec<(usize, Q)> = m
        .columns()
        .iter()
        .enumerate()
        .flat_map(|(c, col)| col.iter().map(move |(r, x)| (r * n + c, x.clone())))
        .collect();
    v.sort_by_key(|(i, _)| *i);
    v
}

/// Coordinates of `x` in the span of `basis`, if it lies there.
fn coordinates(basis: &[GradedMap], x: &GradedMap) -> Option<Vec<Q>> {
    let cols: Vec<BTreeMap<usize, Q>> = basis.iter().map(|b| flatten(b).into_iter().collect()).collect();
    let target: BTreeMap<usize, Q> = flatten(x).into_iter().collect();
    let mut keys: Vec<usize> = cols
        .iter()
        .flat_map(|c| c.keys().copied())
        .chain(target.keys().copied())
        .collect();
    keys.sort_unstable();
    keys.dedup();
    let mut sys = LinearSystem::new(basis.len());
    for k in keys {
        let row = cols
            .iter()
            .enumerate()
            .filter_map(|(j, c)| c.get(&k).map(|v| (j, v.clone())))
            .collect();
        sys.push(row, target.get(&k).cloned().unwrap_or_else(Q::zero));
    }
    match sys.solve() {
        LinearOutcome::Solved(v) => Some(v),
        LinearOutcome::Inconsistent(_) => None,
    }
}

/// Closure of `gens` in `End(C)` under composition and `[-, ∂]`, if its
/// dimension stays within `max_dim`.
fn closure(c: &ChainComplex, gens: Vec<GradedMap>, max_dim: usize) -> Option<Vec<GradedMap>> {
    let mut basis: Vec<GradedMap> = Vec::new();
    let mut queue = gens;
    while let Some(x) = queue.pop() {
        if x.is_zero() || (!basis.is_empty() && same_degree_span(&basis, &x)) {
            continue;
        }
        basis.push(x.clone());
        if basis.len() > max_dim {
            return None;
        }
        queue.push(hom_differential(&x, &[c], c).expect("self map"));
        for b in basis.clone() {
            queue.push(b.compose(&x).expect("self maps"));
            queue.push(x.compose(&b).expect("self maps"));
        }
    }
    Some(basis)
}

fn same_degree_span(basis: &[GradedMap], x: &GradedMap) -> bool {
    let same: Vec<GradedMap> = basis.iter().filter(|b| b.degree() == x.degree()).cloned().collect();
    !same.is_empty() && coordinates(&same, x).is_some()
}

/// A strict dga of dimension at most `max_dim` (and at least 1): a subalgebra
/// of the endomorphisms of a small complex, closed under the commutator with
/// the differential, written in a random basis.
pub fn random_strict_dga<R: Rng + ?Sized>(rng: &mut R, max_dim: usize, order: usize) -> AInfinityAlgebra {
    loop {
        let c = random_complex(rng, 3);
        let space = c.space().clone();
        let mut degs: Vec<i32> = Vec::new();
        for a in space.degrees() {
            for b in space.degrees() {
                degs.push(a - b);
            }
        }
        let ngens = rng.gen_range(1..=2);
        let gens: Vec<GradedMap> = (0..ngens)
            .map(|_| {
                let d = *degs.choose(rng).expect("nonempty");
                if rng.gen_bool(0.2) && d == 0 {
                    c.identity()
                } else {
                    random_map(rng, &space, &space, d, 0.6)
                }
            })
            .collect();
        let Some(basis) = closure(&c, gens, max_dim) else {
            continue;
        };
        if basis.is_empty() {
            continue;
        }
        let mut order_idx: Vec<usize> = (0..basis.len()).collect();
        order_idx.sort_by_key(|&i| basis[i].degree());
        let basis: Vec<GradedMap> = order_idx.into_iter().map(|i| basis[i].clone()).collect();
        let v = GradedVectorSpace::from_degrees(&basis.iter().map(GradedMap::degree).collect::<Vec<_>>());
        let coords = |x: &GradedMap| -> Vec<(usize, Q)> {
            let same: Vec<usize> = (0..basis.len()).filter(|&i| basis[i].degree() == x.degree()).collect();
            if x.is_zero() || same.is_empty() {
                return Vec::new();
            }
            let sub: Vec<GradedMap> = same.iter().map(|&i| basis[i].clone()).collect();
            let co = coordinates(&sub, x).expect("closed under the operations");
            same.into_iter().zip(co).filter(|(_, q)| !q.is_zero()).collect()
        };
        let dcols = basis
            .iter()
            .map(|b| coords(&hom_differential(b, &[&c], &c).expect("self map")))
            .collect();
        let d = GradedMap::new(v.clone(), v.clone(), -1, dcols).expect("differential");
        let vv = tensor_power(&v, 2).expect("square");
        let mut mcols = Vec::with_capacity(vv.dim());
        for x in &basis {
            for y in &basis {
                mcols.push(coords(&x.compose(y).expect("self maps")));
            }
        }
        let mu2 = GradedMap::new(vv, v.clone(), 0, mcols).expect("product");
        let base = ChainComplex::new(d).expect("commutator squares to zero");
        let a = AInfinityAlgebra::strict(base, mu2, order).expect("degree zero product");
        let (target, p) = conjugate(rng, a.complex());
        let m = transport(&a, target, p, Vec::new()).expect("strict transport");
        return m.target().clone();
    }
}

/// A random strict dga with a nonzero differential and homology that is
/// neither zero nor everything.
pub fn random_dga_with_homology<R: Rng + ?Sized>(rng: &mut R, max_dim: usize, order: usize) -> AInfinityAlgebra {
    loop {
        let a = random_strict_dga(rng, max_dim, order);
        let h: usize = crate::exactlin::homology_with_splitting(a.complex()).homology.dim();
        if h > 0 && h < a.space().dim() && !a.mu(2).is_zero() {
            return a;
        }
    }
}

/// A coherent morphism out of a random strict dga: a random gauge `f_1`
/// (invertible) with random higher components; the target carries the
/// transported, generally non-strict, structure.
pub fn random_gauge<R: Rng + ?Sized>(rng: &mut R, max_dim: usize, order: usize) -> AInfinityMorphism {
    let a = random_strict_dga(rng, max_dim, order);
    random_gauge_from(rng, &a)
}

/// A random gauge transformation out of `a`.
pub fn random_gauge_from<R: Rng + ?Sized>(rng: &mut R, a: &AInfinityAlgebra) -> AInfinityMorphism {
    let (target, p) = conjugate(rng, a.complex());
    let higher = (2..=a.order())
        .map(|n| {
            let src = tensor_power(a.space(), n).expect("n >= 2");
            random_map(rng, &src, a.space(), n as i32 - 1, 0.3)
        })
        .collect();
    transport(a, target, p, higher).expect("gauge data is valid")
}

/// A random non-strict A∞ algebra, coherent through its order.
pub fn random_ainfty<R: Rng + ?Sized>(rng: &mut R, max_dim: usize, order: usize) -> AInfinityAlgebra {
    random_gauge(rng, max_dim, order).target().clone()
}

/// Operations on a random complex that are coherent or, with probability
/// one half, have random noise added to one operation. Noise that happens to
/// keep the structure coherent is redrawn a few times.
pub fn random_structure<R: Rng + ?Sized>(rng: &mut R, max_dim: usize, order: usize) -> AInfinityAlgebra {
    let a = random_ainfty(rng, max_dim, order);
    if !rng.gen_bool(0.5) {
        return a;
    }
    let mut last = a.clone();
    for _ in 0..20 {
        let n = rng.gen_range(2..=order);
        let src = tensor_power(a.space(), n).expect("n >= 2");
        let noise = random_map(rng, &src, a.space(), n as i32 - 2, 0.5);
        let mut b = a.clone();
        b.set_mu(n, a.mu(n).add_scaled(&noise, &Q::one()).expect("same shape"))
            .expect("same shape");
        if (2..=order).any(|k| !check_an(&b, k).expect("within order").pass()) {
            return b;
        }
        last = b;
    }
    last
}

/// SDR data onto homology in a random basis of both sides; all side
/// conditions hold.
pub fn random_sdr<R: Rng + ?Sized>(rng: &mut R, max_dim: usize) -> SDRData {
    let c = random_complex(rng, max_dim);
    sdr_in_random_basis(rng, &SDRData::onto_homology(&c))
}

fn sdr_in_random_basis<R: Rng + ?Sized>(rng: &mut R, s: &SDRData) -> SDRData {
    let q = random_invertible(rng, s.small.space());
    let qi = q.inverse().expect("invertible");
    let nabla = s.nabla.compose(&qi).expect("composable");
    let f = q.compose(&s.f).expect("composable");
    let small = ChainComplex::new(
        q.compose(s.small.differential())
            .and_then(|x| x.compose(&qi))
            .expect("composable"),
    )
    .expect("conjugate");
    SDRData::new(s.big.clone(), small, nabla, f, s.phi.clone()).expect("conjugation preserves the invariants")
}

/// Which side condition an engineered instance violates. The conditions are
/// checked in the order `φ∇`, `fφ`, `φφ`; an instance of a kind violates
/// that condition and satisfies the ones before it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `φ∇ ≠ 0`.
    PhiNabla,
    /// `φ∇ = 0`, `fφ ≠ 0`.
    FPhi,
    /// `φ∇ = 0`, `fφ = 0`, `φφ ≠ 0`.
    PhiPhi,
}

/// `φ + [w, ∂]` for `w = pr_X w_0 pr_Y` of degree two, where
/// `pr_H = ∇f`, `pr_C = -φ∂`, `pr_B = -∂φ` split the big complex.
/// Returns `None` when the chosen blocks give no violation of the requested
/// kind.
pub fn engineered_violation<R: Rng + ?Sized>(rng: &mut R, s: &SDRData, kind: Violation) -> Option<SDRData> {
    let d = s.big.differential();
    let pr_h = s.nabla.compose(&s.f).ok()?;
    let pr_c = s.phi.compose(d).ok()?.scale(&-Q::one());
    let pr_b = d.compose(&s.phi).ok()?.scale(&-Q::one());
    let (left, right) = match kind {
        Violation::PhiNabla => (&pr_c, &pr_h),
        Violation::FPhi => (&pr_h, &pr_b),
        Violation::PhiPhi => *[(&pr_c, &pr_b), (&pr_b, &pr_c), (&pr_c, &pr_c), (&pr_b, &pr_b)].choose(rng)?,
    };
    let space = s.big.space();
    let w0 = random_map(rng, space, space, 2, 0.8);
    let w = left.compose(&w0).ok()?.compose(right).ok()?;
    let bracket = hom_differential(&w, &[&s.big], &s.big).ok()?;
    let phi = s.phi.add_scaled(&bracket, &Q::one()).ok()?;
    let out = s.with_phi(phi).ok()?;
    let (pp, pn, fp) = check_side_conditions(&out).flags();
    let wanted = match kind {
        Violation::PhiNabla => !pn,
        Violation::FPhi => pn && !fp,
        Violation::PhiPhi => !pp && pn && fp,
    };
    wanted.then_some(out)
}

/// Random SDR data with `φ` replaced by `φ + [w, ∂]` for a random `w`; the
/// side conditions may or may not hold.
pub fn random_perturbed_sdr<R: Rng + ?Sized>(rng: &mut R, max_dim: usize) -> SDRData {
    let s = random_sdr(rng, max_dim);
    let space = s.big.space();
    let w = random_map(rng, space, space, 2, 0.5);
    let bracket = hom_differential(&w, &[&s.big], &s.big).expect("self map");
    let phi = s.phi.add_scaled(&bracket, &Q::one()).expect("same shape");
    s.with_phi(phi).expect("homotopy identity is preserved")
}

/// Two complexes with isomorphic homology and an equivalence between them,
/// routed through random homology splittings and perturbed by a null-homotopic
/// map.
pub fn random_equivalence<R: Rng + ?Sized>(rng: &mut R, max_dim: usize) -> HomotopyEquivalence {
    loop {
        let v = random_complex(rng, max_dim);
        let w = random_complex(rng, max_dim);
        let sv = SDRData::onto_homology(&v);
        let sw = sdr_in_random_basis(rng, &SDRData::onto_homology(&w));
        if sv.small.space().dims() != sw.small.space().dims() {
            continue;
        }
        let iso = random_invertible(rng, sv.small.space());
        let iso = GradedMap::new(
            sv.small.space().clone(),
            sw.small.space().clone(),
            0,
            iso.columns().to_vec(),
        )
        .expect("same dimensions per degree");
        let inv = iso.inverse().expect("invertible");
        let f = sw
            .nabla
            .compose(&iso)
            .and_then(|x| x.compose(&sv.f))
            .expect("composable");
        let g = sv
            .nabla
            .compose(&inv)
            .and_then(|x| x.compose(&sw.f))
            .expect("composable");
        let k = random_map(rng, v.space(), w.space(), 1, 0.4);
        let dk = hom_differential(&k, &[&v], &w).expect("map V → W");
        let f = f.add_scaled(&dk, &Q::one()).expect("same shape");
        let h = sv
            .phi
            .add_scaled(&g.compose(&k).expect("composable"), &Q::one())
            .expect("same shape");
        let l = sw
            .phi
            .add_scaled(&k.compose(&g).expect("composable"), &Q::one())
            .expect("same shape");
        return HomotopyEquivalence::new(v, w, f, g, h, l).expect("constructed equivalence");
    }
}
