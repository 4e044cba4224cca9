use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::LinError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisElement {
    pub label: String,
    pub degree: i32,
}

/// A finite dimensional graded vector space with a chosen basis.
///
/// Tensor products remember their (flattened) factors; their basis is the
/// lexicographic list of tuples with the last factor varying fastest.
#[derive(Debug)]
pub struct GradedVectorSpace {
    basis: Vec<BasisElement>,
    factors: Vec<Space>,
    by_degree: BTreeMap<i32, Vec<usize>>,
    local: Vec<usize>,
}

pub type Space = Arc<GradedVectorSpace>;

impl GradedVectorSpace {
    pub fn new(basis: Vec<BasisElement>) -> Space {
        Arc::new(Self::build(basis, Vec::new()))
    }

    fn build(basis: Vec<BasisElement>, factors: Vec<Space>) -> Self {
        let mut by_degree: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        let mut local = Vec::with_capacity(basis.len());
        for (i, b) in basis.iter().enumerate() {
            let v = by_degree.entry(b.degree).or_default();
            local.push(v.len());
            v.push(i);
        }
        GradedVectorSpace {
            basis,
            factors,
            by_degree,
            local,
        }
    }

    /// Space with the given per-degree dimensions and labels `e{d}_{i}`.
    pub fn from_dims(dims: &BTreeMap<i32, usize>) -> Space {
        let mut basis = Vec::new();
        for (&d, &n) in dims {
            for i in 0..n {
                basis.push(BasisElement {
                    label: format!("e{d}_{i}"),
                    degree: d,
                });
            }
        }
        Self::new(basis)
    }

    /// Convenience: one basis vector per entry of `degrees`.
    pub fn from_degrees(degrees: &[i32]) -> Space {
        Self::new(
            degrees
                .iter()
                .enumerate()
                .map(|(i, &d)| BasisElement {
                    label: format!("v{i}"),
                    degree: d,
                })
                .collect(),
        )
    }

    pub fn with_labels(labels: &BTreeMap<i32, Vec<String>>) -> Space {
        let mut basis = Vec::new();
        for (&d, ls) in labels {
            for l in ls {
                basis.push(BasisElement {
                    label: l.clone(),
                    degree: d,
                });
            }
        }
        Self::new(basis)
    }

    pub fn zero() -> Space {
        Self::new(Vec::new())
    }

    /// The ground field: one basis vector in degree 0.
    pub fn ground() -> Space {
        Self::new(vec![BasisElement {
            label: "1".into(),
            degree: 0,
        }])
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.basis[i].degree
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.by_degree.iter().map(|(&d, v)| (d, v.len())).collect()
    }

    pub fn dim_in(&self, d: i32) -> usize {
        self.by_degree.get(&d).map_or(0, Vec::len)
    }

    pub fn indices_in(&self, d: i32) -> &[usize] {
        self.by_degree.get(&d).map_or(&[], Vec::as_slice)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.by_degree.keys().copied()
    }

    /// Position of basis vector `i` among the basis vectors of its degree.
    pub fn local_index(&self, i: usize) -> usize {
        self.local[i]
    }

    /// The factors of a tensor product, empty for a plain space.
    pub fn factors(&self) -> &[Space] {
        &self.factors
    }

    pub fn is_tensor(&self) -> bool {
        !self.factors.is_empty()
    }
}

/// Flattened factor list: a plain space is its own single factor.
pub fn factor_list(s: &Space) -> Vec<Space> {
    if s.factors.is_empty() {
        vec![s.clone()]
    } else {
        s.factors.clone()
    }
}

/// Structural equality with a pointer fast path.
pub fn same_space(a: &Space, b: &Space) -> bool {
    if Arc::ptr_eq(a, b) {
        return true;
    }
    match (a.factors.is_empty(), b.factors.is_empty()) {
        (true, true) => a.basis == b.basis,
        (false, false) => {
            a.factors.len() == b.factors.len() && a.factors.iter().zip(&b.factors).all(|(x, y)| same_space(x, y))
        }
        _ => false,
    }
}

impl PartialEq for GradedVectorSpace {
    fn eq(&self, other: &Self) -> bool {
        match (self.factors.is_empty(), other.factors.is_empty()) {
            (true, true) => self.basis == other.basis,
            (false, false) => {
                self.factors.len() == other.factors.len()
                    && self.factors.iter().zip(&other.factors).all(|(x, y)| same_space(x, y))
            }
            _ => false,
        }
    }
}

impl Eq for GradedVectorSpace {}

/// Tensor product of the given spaces, flattening nested products.
/// The empty product is the ground field.
pub fn tensor_product(spaces: &[Space]) -> Space {
    let factors: Vec<Space> = spaces.iter().flat_map(factor_list).collect();
    match factors.len() {
        0 => GradedVectorSpace::ground(),
        1 => factors[0].clone(),
        _ => {
            let mut basis = vec![BasisElement {
                label: String::new(),
                degree: 0,
            }];
            for (k, f) in factors.iter().enumerate() {
                let mut next = Vec::with_capacity(basis.len() * f.dim());
                for b in &basis {
                    for e in f.basis() {
                        let label = if k == 0 {
                            e.label.clone()
                        } else {
                            format!("{}⊗{}", b.label, e.label)
                        };
                        next.push(BasisElement {
                            label,
                            degree: b.degree + e.degree,
                        });
                    }
                }
                basis = next;
            }
            Arc::new(GradedVectorSpace::build(basis, factors))
        }
    }
}

pub fn tensor_power(space: &Space, n: usize) -> Result<Space, LinError> {
    if n == 0 {
        return Err(LinError::ZeroTensorPower);
    }
    Ok(tensor_product(&vec![space.clone(); n]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(v: &[(i32, usize)]) -> BTreeMap<i32, usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn power_of_point_is_point() {
        let v = GradedVectorSpace::from_dims(&dims(&[(0, 1)]));
        assert_eq!(tensor_power(&v, 3).unwrap().dims(), dims(&[(0, 1)]));
    }

    #[test]
    fn power_convolves_dims() {
        let v = GradedVectorSpace::from_dims(&dims(&[(0, 1), (1, 1)]));
        let v2 = tensor_power(&v, 2).unwrap();
        assert_eq!(v2.dims(), dims(&[(0, 1), (1, 2), (2, 1)]));
        assert_eq!(v2.label(1), "e0_0⊗e1_0");
    }

    #[test]
    fn first_power_is_identity() {
        let v = GradedVectorSpace::from_degrees(&[0, 2, 2]);
        assert!(Arc::ptr_eq(&tensor_power(&v, 1).unwrap(), &v));
    }

    #[test]
    fn zero_power_rejected() {
        let v = GradedVectorSpace::from_degrees(&[0]);
        assert_eq!(tensor_power(&v, 0).unwrap_err(), LinError::ZeroTensorPower);
    }

    #[test]
    fn flattening() {
        let v = GradedVectorSpace::from_degrees(&[0, 1]);
        let a = tensor_product(&[tensor_power(&v, 2).unwrap(), v.clone()]);
        let b = tensor_power(&v, 3).unwrap();
        assert!(same_space(&a, &b));
        assert_eq!(a.factors().len(), 3);
    }
}
