use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::presentation::GeneratorSpec;

/// A generator as it sits on a vertex. Ordered and compared by name.
#[derive(Clone, Debug)]
pub struct Gen(pub Arc<GeneratorSpec>);

impl Gen {
    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn degree(&self) -> i32 {
        self.0.degree
    }

    pub fn arity(&self) -> usize {
        self.0.inputs.len()
    }

    pub fn spec(&self) -> &GeneratorSpec {
        &self.0
    }
}

impl PartialEq for Gen {
    fn eq(&self, other: &Self) -> bool {
        self.0.name == other.0.name
    }
}

impl Eq for Gen {}

impl PartialOrd for Gen {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Gen {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.name.cmp(&other.0.name)
    }
}

impl std::hash::Hash for Gen {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.name.hash(state);
    }
}

/// A planar rooted tree. `x(T1, ..., Tk)` stands for `x ∘ (T1 ⊗ ... ⊗ Tk)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Planar {
    Leaf,
    Node(Gen, Vec<Planar>),
}

impl Planar {
    pub fn corolla(g: &Gen) -> Planar {
        Planar::Node(g.clone(), vec![Planar::Leaf; g.arity()])
    }

    pub fn arity(&self) -> usize {
        match self {
            Planar::Leaf => 1,
            Planar::Node(_, ch) => ch.iter().map(Planar::arity).sum(),
        }
    }

    pub fn degree(&self) -> i32 {
        match self {
            Planar::Leaf => 0,
            Planar::Node(g, ch) => g.degree() + ch.iter().map(Planar::degree).sum::<i32>(),
        }
    }

    pub fn tj(&self) -> u32 {
        match self {
            Planar::Leaf => 0,
            Planar::Node(g, ch) => g.spec().tj + ch.iter().map(Planar::tj).sum::<u32>(),
        }
    }

    pub fn vertices(&self) -> usize {
        match self {
            Planar::Leaf => 0,
            Planar::Node(_, ch) => 1 + ch.iter().map(Planar::vertices).sum::<usize>(),
        }
    }

    /// Leaf colors in planar order, given the color of the root edge.
    pub fn leaf_colors(&self, root: &str) -> Vec<String> {
        match self {
            Planar::Leaf => vec![root.to_string()],
            Planar::Node(g, ch) => ch
                .iter()
                .zip(&g.spec().inputs)
                .flat_map(|(c, col)| c.leaf_colors(col))
                .collect(),
        }
    }

    /// Output color, if the tree has a vertex.
    pub fn root_color(&self) -> Option<&str> {
        match self {
            Planar::Leaf => None,
            Planar::Node(g, _) => Some(&g.spec().output),
        }
    }

    /// Every vertex label is compatible with the edge colors around it.
    pub fn colors_match(&self) -> bool {
        match self {
            Planar::Leaf => true,
            Planar::Node(g, ch) => ch
                .iter()
                .zip(&g.spec().inputs)
                .all(|(c, col)| c.root_color().is_none_or(|rc| rc == col) && c.colors_match()),
        }
    }

    pub fn generators(&self, out: &mut Vec<Gen>) {
        if let Planar::Node(g, ch) = self {
            out.push(g.clone());
            for c in ch {
                c.generators(out);
            }
        }
    }
}

/// Substitutes `subs` into the leaves of `p` in planar order. Returns the odd
/// flag of the Koszul sign and the new tree. Uses
/// `(C1 ⊗ ... ⊗ Ck) ∘ (D1 ⊗ ... ⊗ Dk) = (-1)^{Σ_{a<b} |Da||Cb|} C1D1 ⊗ ... ⊗ CkDk`.
pub fn substitute_planar(p: &Planar, subs: &[Planar]) -> (bool, Planar) {
    let mut pos = 0;
    let (odd, t) = subst_rec(p, subs, &mut pos);
    debug_assert_eq!(pos, subs.len());
    (odd, t)
}

fn subst_rec(p: &Planar, subs: &[Planar], pos: &mut usize) -> (bool, Planar) {
    match p {
        Planar::Leaf => {
            let s = subs[*pos].clone();
            *pos += 1;
            (false, s)
        }
        Planar::Node(g, ch) => {
            let mut odd = false;
            let mut new = Vec::with_capacity(ch.len());
            let mut block_degrees = Vec::with_capacity(ch.len());
            for c in ch {
                let start = *pos;
                let (o, t) = subst_rec(c, subs, pos);
                odd ^= o;
                block_degrees.push(subs[start..*pos].iter().map(Planar::degree).sum::<i32>());
                new.push(t);
            }
            // Σ_{a<b} |D_a| |C_b|
            let mut later: i32 = ch.iter().map(Planar::degree).sum();
            for (a, c) in ch.iter().enumerate() {
                later -= c.degree();
                if (block_degrees[a] as i64 * later as i64).rem_euclid(2) == 1 {
                    odd = !odd;
                }
            }
            (odd, Planar::Node(g.clone(), new))
        }
    }
}

/// A basis element of a free operad on regular-representation generators:
/// a planar tree together with the input number carried by each leaf
/// (`labels[p]` is the input feeding planar slot `p`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tree {
    pub shape: Planar,
    pub labels: Vec<usize>,
}

impl Tree {
    pub fn identity() -> Tree {
        Tree {
            shape: Planar::Leaf,
            labels: vec![0],
        }
    }

    pub fn corolla(g: &Gen) -> Tree {
        Tree {
            shape: Planar::corolla(g),
            labels: (0..g.arity()).collect(),
        }
    }

    pub fn planar(shape: Planar) -> Tree {
        let n = shape.arity();
        Tree {
            shape,
            labels: (0..n).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.labels.len()
    }

    pub fn degree(&self) -> i32 {
        self.shape.degree()
    }

    pub fn vertices(&self) -> usize {
        self.shape.vertices()
    }

    pub fn is_planar_identity_labelled(&self) -> bool {
        self.labels.iter().enumerate().all(|(i, &l)| i == l)
    }

    /// Input colors indexed by input number.
    pub fn input_colors(&self, root: &str) -> Vec<String> {
        let slots = self.shape.leaf_colors(root);
        let mut out = vec![String::new(); slots.len()];
        for (p, &l) in self.labels.iter().enumerate() {
            out[l] = slots[p].clone();
        }
        out
    }

    /// Relabels inputs: the leaf carrying input `l` now carries `sigma[l]`.
    pub fn relabel(&self, sigma: &[usize]) -> Tree {
        Tree {
            shape: self.shape.clone(),
            labels: self.labels.iter().map(|&l| sigma[l]).collect(),
        }
    }
}

/// `t ∘ (s_0 ⊗ ... ⊗ s_{n-1})` where `s_i` is plugged into input `i` of `t`.
/// Returns the odd flag of the sign together with the composite.
pub fn compose_trees(t: &Tree, subs: &[&Tree]) -> (bool, Tree) {
    assert_eq!(t.arity(), subs.len(), "one substitute per input");
    let n = subs.len();
    let mut offset = vec![0usize; n + 1];
    for i in 0..n {
        offset[i + 1] = offset[i] + subs[i].arity();
    }
    // reorder the substitutes into planar order: Koszul sign of the permutation
    let mut odd = false;
    for p in 0..n {
        for q in p + 1..n {
            let (a, b) = (t.labels[p], t.labels[q]);
            if a > b && (subs[a].degree() as i64 * subs[b].degree() as i64).rem_euclid(2) == 1 {
                odd = !odd;
            }
        }
    }
    let planar_subs: Vec<Planar> = t.labels.iter().map(|&l| subs[l].shape.clone()).collect();
    let (o, shape) = substitute_planar(&t.shape, &planar_subs);
    odd ^= o;
    let offset = &offset;
    let labels = t
        .labels
        .iter()
        .flat_map(|&l| subs[l].labels.iter().map(move |&x| offset[l] + x))
        .collect();
    (odd, Tree { shape, labels })
}

impl fmt::Display for Planar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Planar::Leaf => write!(f, "1"),
            Planar::Node(g, ch) => {
                write!(f, "{}", g.name())?;
                if ch.iter().all(|c| matches!(c, Planar::Leaf)) {
                    return Ok(());
                }
                write!(f, "(")?;
                for (i, c) in ch.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.shape)?;
        if !self.is_planar_identity_labelled() {
            let ls: Vec<String> = self.labels.iter().map(|l| (l + 1).to_string()).collect();
            write!(f, "·[{}]", ls.join(","))?;
        }
        Ok(())
    }
}
