use std::collections::BTreeMap;

use num::{One, Zero};

use super::element::FreeOperadElement;
use super::presentation::Presentation;
use super::tree::{Planar, Tree};
use super::OperadError;
use crate::exactlin::{hom_differential, tensor_product, ChainComplex, GradedMap, Space, Q};

/// An action of a colored operad on a family of complexes: one complex per
/// color and one map per generator.
#[derive(Clone, Debug, Default)]
pub struct OperadAction {
    pub complexes: BTreeMap<String, ChainComplex>,
    pub maps: BTreeMap<String, GradedMap>,
}

impl OperadAction {
    pub fn new(complexes: BTreeMap<String, ChainComplex>) -> Self {
        OperadAction {
            complexes,
            maps: BTreeMap::new(),
        }
    }

    pub fn assign(&mut self, generator: &str, map: GradedMap) {
        self.maps.insert(generator.to_string(), map);
    }

    pub fn complex(&self, color: &str) -> Result<&ChainComplex, OperadError> {
        self.complexes
            .get(color)
            .ok_or_else(|| OperadError::Color(format!("no complex for color {color}")))
    }

    fn tensor_of(&self, colors: &[String]) -> Result<Space, OperadError> {
        let spaces = colors
            .iter()
            .map(|c| Ok(self.complex(c)?.space().clone()))
            .collect::<Result<Vec<_>, OperadError>>()?;
        Ok(tensor_product(&spaces))
    }

    fn eval_planar(&self, p: &Planar, color: &str) -> Result<GradedMap, OperadError> {
        match p {
            Planar::Leaf => Ok(self.complex(color)?.identity()),
            Planar::Node(g, ch) => {
                let top = self
                    .maps
                    .get(g.name())
                    .ok_or_else(|| OperadError::UnknownGenerator(format!("{} has no assigned map", g.name())))?;
                let inner = ch
                    .iter()
                    .zip(&g.spec().inputs)
                    .map(|(c, col)| self.eval_planar(c, col))
                    .collect::<Result<Vec<_>, _>>()?;
                let refs: Vec<&GradedMap> = inner.iter().collect();
                Ok(GradedMap::compose_tensor(top, &refs)?)
            }
        }
    }

    /// The map of a single labelled tree: planar evaluation precomposed with
    /// the Koszul permutation of inputs.
    pub fn evaluate_tree(&self, t: &Tree, output: &str) -> Result<GradedMap, OperadError> {
        let planar = self.eval_planar(&t.shape, output)?;
        if t.is_planar_identity_labelled() {
            return Ok(planar);
        }
        let inputs = t.input_colors(output);
        let spaces = inputs
            .iter()
            .map(|c| Ok(self.complex(c)?.space().clone()))
            .collect::<Result<Vec<_>, OperadError>>()?;
        Ok(planar.compose(&permutation_map(&spaces, &t.labels))?)
    }

    pub fn evaluate(&self, e: &FreeOperadElement) -> Result<GradedMap, OperadError> {
        let source = self.tensor_of(&e.inputs)?;
        let target = self.complex(&e.output)?.space().clone();
        let mut acc = GradedMap::zero(source, target, e.degree);
        for (t, c) in e.terms() {
            acc = acc.add_scaled(&self.evaluate_tree(t, &e.output)?, c)?;
        }
        Ok(acc)
    }
}

/// `x_0 ⊗ ... ⊗ x_{n-1} ↦ ± x_{labels[0]} ⊗ ... ⊗ x_{labels[n-1]}` with the
/// Koszul sign of the reordering. `spaces[l]` is the space of input `l`.
pub fn permutation_map(spaces: &[Space], labels: &[usize]) -> GradedMap {
    let n = spaces.len();
    let source = tensor_product(spaces);
    let planar: Vec<Space> = labels.iter().map(|&l| spaces[l].clone()).collect();
    let target = tensor_product(&planar);
    let dims: Vec<usize> = spaces.iter().map(|s| s.dim()).collect();
    let mut cols = Vec::with_capacity(source.dim());
    let mut idx = vec![0usize; n];
    for _ in 0..source.dim() {
        let degs: Vec<i64> = (0..n).map(|l| spaces[l].degree(idx[l]) as i64).collect();
        let mut odd = false;
        for p in 0..n {
            for q in p + 1..n {
                let (a, b) = (labels[p], labels[q]);
                if a > b && (degs[a] * degs[b]).rem_euclid(2) == 1 {
                    odd = !odd;
                }
            }
        }
        let mut row = 0usize;
        for &l in labels {
            row = row * dims[l] + idx[l];
        }
        cols.push(vec![(row, if odd { -Q::one() } else { Q::one() })]);
        for k in (0..n).rev() {
            idx[k] += 1;
            if idx[k] < dims[k] {
                break;
            }
            idx[k] = 0;
        }
    }
    GradedMap::new(source, target, 0, cols).expect("permutations preserve degree")
}

#[derive(Clone, Debug)]
pub struct ActionEntry {
    pub generator: String,
    /// `[A(g), ∂] - A(∂g)`.
    pub residual: GradedMap,
}

impl ActionEntry {
    pub fn pass(&self) -> bool {
        self.residual.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct ActionCertificate {
    pub checked: Vec<ActionEntry>,
    /// Generators above the arity bound, or without an assigned map.
    pub skipped: Vec<String>,
}

impl ActionCertificate {
    pub fn pass(&self) -> bool {
        self.checked.iter().all(ActionEntry::pass)
    }

    pub fn first_failure(&self) -> Option<&str> {
        self.checked.iter().find(|e| !e.pass()).map(|e| e.generator.as_str())
    }
}

/// Checks `A(∂g) = [A(g), ∂]` generator by generator, in presentation order.
pub fn action_check(
    action: &OperadAction,
    p: &Presentation,
    up_to_arity: usize,
) -> Result<ActionCertificate, OperadError> {
    let mut checked = Vec::new();
    let mut skipped = Vec::new();
    for g in p.generators() {
        if g.arity() > up_to_arity {
            skipped.push(g.name().to_string());
            continue;
        }
        let Some(m) = action.maps.get(g.name()) else {
            return Err(OperadError::UnknownGenerator(format!(
                "{} has no assigned map",
                g.name()
            )));
        };
        let src = action.tensor_of(&g.spec().inputs)?;
        let tgt = action.complex(&g.spec().output)?;
        if !crate::exactlin::same_space(m.source(), &src) || !crate::exactlin::same_space(m.target(), tgt.space()) {
            return Err(OperadError::Color(format!(
                "map for {} has the wrong source or target",
                g.name()
            )));
        }
        if m.degree() != g.degree() && !m.is_zero() {
            return Err(OperadError::Profile(format!(
                "map for {} has degree {}, generator has degree {}",
                g.name(),
                m.degree(),
                g.degree()
            )));
        }
        let m = m.clone().with_degree(g.degree())?;
        let sources = g
            .spec()
            .inputs
            .iter()
            .map(|c| action.complex(c))
            .collect::<Result<Vec<_>, _>>()?;
        let lhs = hom_differential(&m, &sources, tgt)?;
        let rhs = action.evaluate(&p.d_of(g))?;
        let residual = lhs.add_scaled(&rhs, &-Q::one())?;
        debug_assert!(residual.columns().iter().all(|c| c.iter().all(|(_, x)| !x.is_zero())));
        checked.push(ActionEntry {
            generator: g.name().to_string(),
            residual,
        });
    }
    Ok(ActionCertificate { checked, skipped })
}
