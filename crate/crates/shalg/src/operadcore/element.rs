use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use super::tree::{compose_trees, Gen, Tree};
use super::OperadError;
use crate::exactlin::{format_q, Q};

/// A ℚ-linear combination of trees sharing arity, colors and degree. The
/// term map is ordered, so two elements are equal iff their term lists are.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeOperadElement {
    pub inputs: Vec<String>,
    pub output: String,
    pub degree: i32,
    terms: BTreeMap<Tree, Q>,
}

impl FreeOperadElement {
    pub fn zero(inputs: Vec<String>, output: String, degree: i32) -> Self {
        FreeOperadElement {
            inputs,
            output,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn generator(g: &Gen) -> Self {
        let mut e = Self::zero(g.spec().inputs.clone(), g.spec().output.clone(), g.degree());
        e.terms.insert(Tree::corolla(g), Q::one());
        e
    }

    pub fn identity(color: &str) -> Self {
        let mut e = Self::zero(vec![color.to_string()], color.to_string(), 0);
        e.terms.insert(Tree::identity(), Q::one());
        e
    }

    /// Single tree with coefficient one; the output color must be supplied
    /// because a bare leaf does not know it.
    pub fn from_tree(tree: Tree, output: &str) -> Self {
        let inputs = tree.input_colors(output);
        let degree = tree.degree();
        let mut e = Self::zero(inputs, output.to_string(), degree);
        e.terms.insert(tree, Q::one());
        e
    }

    pub fn arity(&self) -> usize {
        self.inputs.len()
    }

    pub fn terms(&self) -> &BTreeMap<Tree, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, t: &Tree) -> Q {
        self.terms.get(t).cloned().unwrap_or_else(Q::zero)
    }

    /// Adds `c * t`; the caller guarantees the profile matches.
    pub fn add_term(&mut self, t: Tree, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    fn same_profile(&self, other: &Self) -> bool {
        self.inputs == other.inputs && self.output == other.output
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &Self, c: &Q) -> Result<Self, OperadError> {
        if !self.same_profile(other) {
            return Err(OperadError::Profile(format!(
                "cannot add elements {:?}->{} and {:?}->{}",
                self.inputs, self.output, other.inputs, other.output
            )));
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(OperadError::Profile(format!(
                "cannot add elements of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        if self.is_zero() {
            out.degree = other.degree;
        }
        for (t, x) in &other.terms {
            out.add_term(t.clone(), x * c);
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self, OperadError> {
        self.add_scaled(other, &Q::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self, OperadError> {
        self.add_scaled(other, &-Q::one())
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.inputs.clone(), self.output.clone(), self.degree);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(t, x)| (t.clone(), x * c)).collect();
        }
        out
    }

    /// Normalisation is structural, so this is the identity; kept so callers
    /// can state intent.
    pub fn normalized(&self) -> Self {
        let mut out = self.clone();
        out.terms.retain(|_, x| !x.is_zero());
        out
    }

    /// Largest number of vertices over all terms.
    pub fn max_vertices(&self) -> usize {
        self.terms.keys().map(Tree::vertices).max().unwrap_or(0)
    }

    /// Sum of TJ degrees, if every term has the same one.
    pub fn tj_degrees(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.terms.keys().map(|t| t.shape.tj()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// `outer ∘_position inner` with `position` counted from 1. The result is zero
/// when the output color of `inner` differs from the color of that input.
pub fn graft(
    outer: &FreeOperadElement,
    position: usize,
    inner: &FreeOperadElement,
) -> Result<FreeOperadElement, OperadError> {
    if position == 0 || position > outer.arity() {
        return Err(OperadError::Position {
            position,
            arity: outer.arity(),
        });
    }
    let i = position - 1;
    let mut inputs = outer.inputs[..i].to_vec();
    inputs.extend(inner.inputs.iter().cloned());
    inputs.extend(outer.inputs[position..].iter().cloned());
    let mut out = FreeOperadElement::zero(inputs, outer.output.clone(), outer.degree + inner.degree);
    if inner.output != outer.inputs[i] {
        return Ok(out);
    }
    let id = Tree::identity();
    for (a, x) in &outer.terms {
        for (b, y) in &inner.terms {
            let subs: Vec<&Tree> = (0..outer.arity()).map(|j| if j == i { b } else { &id }).collect();
            let (odd, t) = compose_trees(a, &subs);
            let c = x * y;
            out.add_term(t, if odd { -c } else { c });
        }
    }
    Ok(out)
}

/// `outer ∘ (inners_0 ⊗ ... ⊗ inners_{k-1})` with Koszul signs; zero on any
/// color mismatch.
pub fn compose_elements(
    outer: &FreeOperadElement,
    inners: &[&FreeOperadElement],
) -> Result<FreeOperadElement, OperadError> {
    if inners.len() != outer.arity() {
        return Err(OperadError::Profile(format!(
            "{} substitutes for arity {}",
            inners.len(),
            outer.arity()
        )));
    }
    let inputs: Vec<String> = inners.iter().flat_map(|e| e.inputs.iter().cloned()).collect();
    let degree = outer.degree + inners.iter().map(|e| e.degree).sum::<i32>();
    let mut out = FreeOperadElement::zero(inputs, outer.output.clone(), degree);
    if inners.iter().zip(&outer.inputs).any(|(e, c)| &e.output != c) {
        return Ok(out);
    }
    let lists: Vec<Vec<(&Tree, &Q)>> = inners.iter().map(|e| e.terms.iter().collect()).collect();
    let mut idx = vec![0usize; inners.len()];
    if lists.iter().any(Vec::is_empty) {
        return Ok(out);
    }
    loop {
        let subs: Vec<&Tree> = idx.iter().zip(&lists).map(|(&i, l)| l[i].0).collect();
        let coef: Q = idx.iter().zip(&lists).map(|(&i, l)| l[i].1.clone()).product();
        for (a, x) in &outer.terms {
            let (odd, t) = compose_trees(a, &subs);
            let c = x * &coef;
            out.add_term(t, if odd { -c } else { c });
        }
        let mut k = inners.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < lists[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

impl fmt::Display for FreeOperadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (t, c)) in self.terms.iter().enumerate() {
            let neg = c < &Q::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !a.is_one() {
                write!(f, "{}*", format_q(&a))?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}
