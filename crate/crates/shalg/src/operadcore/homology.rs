use std::collections::{BTreeMap, HashMap};

use num::Zero;
use serde::{Deserialize, Serialize};

use super::derivation::derivation_extend;
use super::element::FreeOperadElement;
use super::presentation::{compositions, Presentation};
use super::tree::{Planar, Tree};
use super::OperadError;
use crate::exactlin::{LinearSystem, SVec, Q};

/// Per arity, per degree dimensions (with the full symmetric group action).
pub type ArityDims = BTreeMap<usize, BTreeMap<i32, usize>>;

/// Planar trees with the given root color and arity, at most `max_vertices`
/// vertices and degree at most `max_degree`.
pub fn planar_trees(p: &Presentation, color: &str, arity: usize, max_vertices: usize, max_degree: i32) -> Vec<Planar> {
    let mut out = Vec::new();
    for (t, _, _) in enum_rec(p, color, arity, max_vertices, max_degree) {
        out.push(t);
    }
    out
}

/// `(tree, vertices, degree)` triples.
fn enum_rec(p: &Presentation, color: &str, n: usize, budget: usize, max_deg: i32) -> Vec<(Planar, usize, i32)> {
    let mut out = Vec::new();
    if n == 1 {
        out.push((Planar::Leaf, 0, 0));
    }
    if budget == 0 {
        return out;
    }
    for g in p.generators() {
        if g.spec().output != color || g.arity() > n || g.degree() > max_deg {
            continue;
        }
        for parts in compositions(n, g.arity()) {
            let mut partial: Vec<(Vec<Planar>, usize, i32)> = vec![(Vec::new(), 1, g.degree())];
            for (i, &part) in parts.iter().enumerate() {
                let mut next = Vec::new();
                for (kids, used, deg) in &partial {
                    for (t, v, d) in enum_rec(p, &g.spec().inputs[i], part, budget - used, max_deg - deg) {
                        let mut k = kids.clone();
                        k.push(t);
                        next.push((k, used + v, deg + d));
                    }
                }
                partial = next;
            }
            for (kids, used, deg) in partial {
                if used <= budget && deg <= max_deg {
                    out.push((Planar::Node(g.clone(), kids), used, deg));
                }
            }
        }
    }
    out
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// A basis tree together with its output color (needed for bare units).
pub type ColoredBasisTree = (String, Tree);

/// All labelled trees of the arity-`n` component with at most
/// `max_vertices` vertices and degree exactly `degree`.
pub fn component_basis(p: &Presentation, n: usize, degree: i32, max_vertices: usize) -> Vec<ColoredBasisTree> {
    let perms = permutations(n);
    let mut out = Vec::new();
    for color in p.colors.colors() {
        for shape in planar_trees(p, color, n, max_vertices, degree) {
            if shape.degree() != degree {
                continue;
            }
            for s in &perms {
                out.push((
                    color.clone(),
                    Tree {
                        shape: shape.clone(),
                        labels: s.clone(),
                    },
                ));
            }
        }
    }
    out
}

fn differential_column(
    p: &Presentation,
    (color, t): &ColoredBasisTree,
    index: &mut HashMap<ColoredBasisTree, usize>,
) -> Result<SVec, OperadError> {
    let e = FreeOperadElement::from_tree(t.clone(), color);
    let d = derivation_extend(p, &e)?;
    let mut col: BTreeMap<usize, Q> = BTreeMap::new();
    for (tt, c) in d.terms() {
        let key = (color.clone(), tt.clone());
        let next = index.len();
        let i = *index.entry(key).or_insert(next);
        *col.entry(i).or_insert_with(Q::zero) += c;
    }
    Ok(col.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}

fn rank_of_columns(cols: &[SVec], rows_filter: impl Fn(usize) -> bool) -> usize {
    // rank of the matrix with the given columns, keeping only selected rows;
    // computed as the row rank of the transpose
    let mut sys = LinearSystem::new(usize::MAX);
    let mut maxrow = 0;
    for col in cols {
        let row: SVec = col.iter().filter(|(i, _)| rows_filter(*i)).cloned().collect();
        if let Some((i, _)) = row.last() {
            maxrow = maxrow.max(*i + 1);
        }
        sys.push(row, Q::zero());
    }
    sys.ncols = maxrow;
    sys.rank()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedHomology {
    pub presentation: String,
    pub arity: usize,
    pub length_cap: usize,
    /// Boundaries are taken from trees with up to this many vertices.
    pub boundary_length: usize,
    pub chain_dims: BTreeMap<i32, usize>,
    pub homology_dims: BTreeMap<i32, usize>,
    pub note: String,
}

/// Homology of the arity-`n` component restricted to trees with at most
/// `length_cap` vertices, with boundaries taken from one more level.
pub fn truncated_homology(
    p: &Presentation,
    n: usize,
    window: (i32, i32),
    length_cap: usize,
) -> Result<TruncatedHomology, OperadError> {
    let mut chain_dims = BTreeMap::new();
    let mut homology_dims = BTreeMap::new();
    for d in window.0..=window.1 {
        let basis = component_basis(p, n, d, length_cap);
        chain_dims.insert(d, basis.len());
        // cycles
        let mut lower: HashMap<ColoredBasisTree, usize> = HashMap::new();
        let mut cols = Vec::with_capacity(basis.len());
        for t in &basis {
            cols.push(differential_column(p, t, &mut lower)?);
        }
        let cycles = basis.len() - rank_of_columns(&cols, |_| true);
        // boundaries from degree d+1, one extra length level
        let mut here: HashMap<ColoredBasisTree, usize> = HashMap::new();
        for (i, t) in basis.iter().enumerate() {
            here.insert(t.clone(), i);
        }
        let short = basis.len();
        let upper = component_basis(p, n, d + 1, length_cap + 1);
        let mut bcols = Vec::with_capacity(upper.len());
        for t in &upper {
            bcols.push(differential_column(p, t, &mut here)?);
        }
        let full = rank_of_columns(&bcols, |_| true);
        let long = rank_of_columns(&bcols, |i| i >= short);
        homology_dims.insert(d, cycles - (full - long));
    }
    Ok(TruncatedHomology {
        presentation: p.name.clone(),
        arity: n,
        length_cap,
        boundary_length: length_cap + 1,
        chain_dims,
        homology_dims,
        note: format!(
            "cycles among trees with at most {length_cap} vertices; boundaries may come from trees with {} vertices",
            length_cap + 1
        ),
    })
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Planar shapes with all vertices of arity at least two.
fn shapes(n: usize) -> Vec<Vec<usize>> {
    // encoded as the preorder list of vertex arities (0 marks a leaf)
    if n == 1 {
        return vec![vec![0]];
    }
    let mut out = Vec::new();
    for k in 2..=n {
        for parts in compositions(n, k) {
            let mut partial: Vec<Vec<usize>> = vec![vec![k]];
            for &part in &parts {
                let mut next = Vec::new();
                for pre in &partial {
                    for s in shapes(part) {
                        let mut v = pre.clone();
                        v.extend(s);
                        next.push(v);
                    }
                }
                partial = next;
            }
            out.extend(partial);
        }
    }
    out
}

fn convolve(a: &BTreeMap<i32, usize>, b: &BTreeMap<i32, usize>) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    for (da, na) in a {
        for (db, nb) in b {
            *out.entry(da + db).or_insert(0) += na * nb;
        }
    }
    out
}

/// Per-degree dimension of `(P1 * P2)(n)` by summing over planar trees whose
/// adjacent vertices carry different factors, each vertex carrying the
/// augmentation ideal of its factor. Inputs are full dimensions (with the
/// symmetric group) of Σ-free collections.
pub fn tree_decomposition_from(
    f1: &ArityDims,
    f2: &ArityDims,
    n: usize,
    window: (i32, i32),
) -> Result<BTreeMap<i32, usize>, OperadError> {
    let mut ns: [BTreeMap<usize, BTreeMap<i32, usize>>; 2] = [BTreeMap::new(), BTreeMap::new()];
    for (slot, f) in [f1, f2].into_iter().enumerate() {
        for (&k, dims) in f {
            if k == 1 && dims.values().any(|&x| x > 0) {
                return Err(OperadError::Infinite(
                    "unary operations make the decomposition infinite".into(),
                ));
            }
            let fk = factorial(k);
            let mut reduced = BTreeMap::new();
            for (&d, &x) in dims {
                if x % fk != 0 {
                    return Err(OperadError::Profile(format!(
                        "arity {k} dimension {x} is not a multiple of {fk}; collection is not Σ-free"
                    )));
                }
                if x > 0 {
                    reduced.insert(d, x / fk);
                }
            }
            ns[slot].insert(k, reduced);
        }
    }
    for (slot, f) in ns.iter().enumerate() {
        for k in 2..=n {
            if !f.contains_key(&k) {
                return Err(OperadError::Infinite(format!(
                    "factor {} has no data in arity {k}",
                    slot + 1
                )));
            }
        }
    }
    let mut total: BTreeMap<i32, usize> = BTreeMap::new();
    if n == 1 {
        total.insert(0, 1);
    } else {
        for shape in shapes(n) {
            for root in 0..2 {
                let mut pos = 0;
                let poly = shape_poly(&shape, &mut pos, root, &ns);
                for (d, x) in poly {
                    *total.entry(d).or_insert(0) += x;
                }
            }
        }
    }
    let nf = factorial(n);
    Ok(total
        .into_iter()
        .filter(|(d, _)| *d >= window.0 && *d <= window.1)
        .map(|(d, x)| (d, x * nf))
        .collect())
}

fn shape_poly(
    shape: &[usize],
    pos: &mut usize,
    label: usize,
    ns: &[BTreeMap<usize, BTreeMap<i32, usize>>; 2],
) -> BTreeMap<i32, usize> {
    let k = shape[*pos];
    *pos += 1;
    if k == 0 {
        return [(0, 1)].into_iter().collect();
    }
    let mut acc = ns[label].get(&k).cloned().unwrap_or_default();
    for _ in 0..k {
        let child = shape_poly(shape, pos, 1 - label, ns);
        acc = convolve(&acc, &child);
    }
    acc
}

/// Dimensions of the augmentation ideal of the free operad, arities `2..=n`.
pub fn free_component_dims(p: &Presentation, n: usize, window: (i32, i32)) -> Result<ArityDims, OperadError> {
    if p.has_unary_generators() {
        return Err(OperadError::Infinite(format!("{} has unary generators", p.name)));
    }
    let mut out = ArityDims::new();
    for k in 2..=n {
        let mut dims = BTreeMap::new();
        for d in window.0..=window.1 {
            let b = component_basis(p, k, d, k);
            dims.insert(d, b.len());
        }
        out.insert(k, dims);
    }
    Ok(out)
}

pub fn tree_decomposition_dims(
    p1: &Presentation,
    p2: &Presentation,
    n: usize,
    window: (i32, i32),
) -> Result<BTreeMap<i32, usize>, OperadError> {
    let f1 = free_component_dims(p1, n, window)?;
    let f2 = free_component_dims(p2, n, window)?;
    tree_decomposition_from(&f1, &f2, n, window)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KunnethCertificate {
    pub arity: usize,
    pub window: (i32, i32),
    pub homology_of_product: BTreeMap<i32, usize>,
    pub decomposition_of_homologies: BTreeMap<i32, usize>,
    pub pass: bool,
}

/// Compares `H(S * Q)(n)` with the tree decomposition of `H(S) * H(Q)` at
/// arity `n`, degree by degree.
pub fn kunneth_check(
    s: &Presentation,
    q: &Presentation,
    n: usize,
    window: (i32, i32),
) -> Result<KunnethCertificate, OperadError> {
    for p in [s, q] {
        if !p.is_augmented() {
            return Err(OperadError::NotAugmented(p.name.clone()));
        }
        if p.has_unary_generators() {
            return Err(OperadError::Infinite(format!("{} has unary generators", p.name)));
        }
    }
    let cap = n.max(1);
    let factor_dims = |p: &Presentation| -> Result<ArityDims, OperadError> {
        let mut out = ArityDims::new();
        for k in 2..=n {
            out.insert(k, truncated_homology(p, k, (0, window.1), cap)?.homology_dims);
        }
        Ok(out)
    };
    let hs = factor_dims(s)?;
    let hq = factor_dims(q)?;
    let rhs = tree_decomposition_from(&hs, &hq, n, window)?;
    let product = super::presentation::free_product(s, q)?;
    let lhs = truncated_homology(&product, n, window, cap)?.homology_dims;
    let nonzero = |m: &BTreeMap<i32, usize>| -> BTreeMap<i32, usize> {
        m.iter().filter(|(_, &x)| x > 0).map(|(&d, &x)| (d, x)).collect()
    };
    let pass = nonzero(&lhs) == nonzero(&rhs);
    Ok(KunnethCertificate {
        arity: n,
        window,
        homology_of_product: lhs,
        decomposition_of_homologies: rhs,
        pass,
    })
}
