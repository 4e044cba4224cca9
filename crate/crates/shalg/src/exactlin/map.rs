use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num::{One, Zero};

use super::linalg::Matrix;
use super::rational::Q;
use super::space::{same_space, tensor_product, Space};
use super::LinError;

/// Sparse vector: `(index, coefficient)` pairs sorted by index, no zeros.
pub type SVec = Vec<(usize, Q)>;

pub(crate) fn finish(acc: BTreeMap<usize, Q>) -> SVec {
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

pub(crate) fn axpy(acc: &mut BTreeMap<usize, Q>, v: &SVec, c: &Q) {
    for (i, x) in v {
        let e = acc.entry(*i).or_insert_with(Q::zero);
        *e += x * c;
    }
}

/// A homogeneous linear map between graded spaces, stored column by column
/// (one sparse column per source basis vector).
#[derive(Clone, Debug)]
pub struct GradedMap {
    source: Space,
    target: Space,
    degree: i32,
    cols: Vec<SVec>,
}

impl GradedMap {
    pub fn new(source: Space, target: Space, degree: i32, cols: Vec<SVec>) -> Result<Self, LinError> {
        if cols.len() != source.dim() {
            return Err(LinError::Shape(format!(
                "{} columns for a source of dimension {}",
                cols.len(),
                source.dim()
            )));
        }
        let mut clean = Vec::with_capacity(cols.len());
        for (c, col) in cols.into_iter().enumerate() {
            let mut acc = BTreeMap::new();
            for (r, x) in col {
                if r >= target.dim() {
                    return Err(LinError::Shape(format!("row {r} out of range")));
                }
                if !x.is_zero() && target.degree(r) != source.degree(c) + degree {
                    return Err(LinError::Degree(format!(
                        "entry ({r},{c}) maps degree {} to {} in a map of degree {degree}",
                        source.degree(c),
                        target.degree(r)
                    )));
                }
                *acc.entry(r).or_insert_with(Q::zero) += x;
            }
            clean.push(finish(acc));
        }
        Ok(GradedMap {
            source,
            target,
            degree,
            cols: clean,
        })
    }

    pub fn zero(source: Space, target: Space, degree: i32) -> Self {
        let n = source.dim();
        GradedMap {
            source,
            target,
            degree,
            cols: vec![Vec::new(); n],
        }
    }

    pub fn identity(space: &Space) -> Self {
        GradedMap {
            source: space.clone(),
            target: space.clone(),
            degree: 0,
            cols: (0..space.dim()).map(|i| vec![(i, Q::one())]).collect(),
        }
    }

    /// Builds a map from `(row, column, value)` triples.
    pub fn from_entries(
        source: Space,
        target: Space,
        degree: i32,
        entries: impl IntoIterator<Item = (usize, usize, Q)>,
    ) -> Result<Self, LinError> {
        let mut cols = vec![Vec::new(); source.dim()];
        for (r, c, x) in entries {
            if c >= source.dim() {
                return Err(LinError::Shape(format!("column {c} out of range")));
            }
            cols[c].push((r, x));
        }
        Self::new(source, target, degree, cols)
    }

    /// Builds a map from per-degree blocks. `blocks[k]` has one row per
    /// target basis vector of degree `k + degree` and one column per source
    /// basis vector of degree `k`.
    pub fn from_blocks(
        source: Space,
        target: Space,
        degree: i32,
        blocks: &BTreeMap<i32, Vec<Vec<Q>>>,
    ) -> Result<Self, LinError> {
        let mut entries = Vec::new();
        for (&k, rows) in blocks {
            let src = source.indices_in(k);
            let tgt = target.indices_in(k + degree);
            if rows.len() != tgt.len() || rows.iter().any(|r| r.len() != src.len()) {
                return Err(LinError::Shape(format!(
                    "block for source degree {k} should be {}x{}",
                    tgt.len(),
                    src.len()
                )));
            }
            for (ri, row) in rows.iter().enumerate() {
                for (ci, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        entries.push((tgt[ri], src[ci], x.clone()));
                    }
                }
            }
        }
        Self::from_entries(source, target, degree, entries)
    }

    pub fn source(&self) -> &Space {
        &self.source
    }

    pub fn target(&self) -> &Space {
        &self.target
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn column(&self, c: usize) -> &SVec {
        &self.cols[c]
    }

    pub fn columns(&self) -> &[SVec] {
        &self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> Q {
        self.cols[c]
            .iter()
            .find(|(i, _)| *i == r)
            .map_or_else(Q::zero, |(_, x)| x.clone())
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// The block from source degree `k`, as rows of the target degree `k + degree`.
    pub fn block(&self, k: usize) -> Vec<Vec<Q>> {
        self.block_at(k as i32)
    }

    pub fn block_at(&self, k: i32) -> Vec<Vec<Q>> {
        let src = self.source.indices_in(k);
        let tgt_deg = k + self.degree;
        let mut rows = vec![vec![Q::zero(); src.len()]; self.target.dim_in(tgt_deg)];
        for (ci, &c) in src.iter().enumerate() {
            for (r, x) in &self.cols[c] {
                rows[self.target.local_index(*r)][ci] = x.clone();
            }
        }
        rows
    }

    /// Every block with at least one nonzero entry, keyed by source degree.
    pub fn nonzero_blocks(&self) -> BTreeMap<i32, Vec<Vec<Q>>> {
        self.source
            .degrees()
            .filter(|&k| self.source.indices_in(k).iter().any(|&c| !self.cols[c].is_empty()))
            .map(|k| (k, self.block_at(k)))
            .collect()
    }

    pub fn apply(&self, v: &SVec) -> SVec {
        let mut acc = BTreeMap::new();
        for (c, x) in v {
            axpy(&mut acc, &self.cols[*c], x);
        }
        finish(acc)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GradedMap) -> Result<GradedMap, LinError> {
        if !same_space(&self.source, &inner.target) {
            return Err(LinError::Shape("composition of maps with mismatched spaces".into()));
        }
        Ok(GradedMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            degree: self.degree + inner.degree,
            cols: inner.cols.iter().map(|v| self.apply(v)).collect(),
        })
    }

    fn check_parallel(&self, other: &GradedMap) -> Result<(), LinError> {
        if !same_space(&self.source, &other.source) || !same_space(&self.target, &other.target) {
            return Err(LinError::Shape("adding maps between different spaces".into()));
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(LinError::Degree(format!(
                "adding maps of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &GradedMap, c: &Q) -> Result<GradedMap, LinError> {
        self.check_parallel(other)?;
        let degree = if self.is_zero() { other.degree } else { self.degree };
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut acc: BTreeMap<usize, Q> = a.iter().cloned().collect();
                axpy(&mut acc, b, c);
                finish(acc)
            })
            .collect();
        Ok(GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree,
            cols,
        })
    }

    pub fn scale(&self, c: &Q) -> GradedMap {
        if c.is_zero() {
            return GradedMap::zero(self.source.clone(), self.target.clone(), self.degree);
        }
        GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree,
            cols: self
                .cols
                .iter()
                .map(|v| v.iter().map(|(i, x)| (*i, x * c)).collect())
                .collect(),
        }
    }

    /// Same entries, relabelled degree. Useful for zero maps.
    pub fn with_degree(mut self, degree: i32) -> Result<GradedMap, LinError> {
        if !self.is_zero() && degree != self.degree {
            return Err(LinError::Degree("cannot regrade a nonzero map".into()));
        }
        self.degree = degree;
        Ok(self)
    }

    /// Tensor product of maps with the Koszul rule
    /// `(f1 ⊗ ... ⊗ fk)(x1 ⊗ ... ⊗ xk) = ± f1(x1) ⊗ ... ⊗ fk(xk)`, the sign
    /// collecting `(-1)^{|fi||xj|}` for every `j < i`.
    pub fn tensor(maps: &[&GradedMap]) -> GradedMap {
        let sources: Vec<Space> = maps.iter().map(|m| m.source.clone()).collect();
        let targets: Vec<Space> = maps.iter().map(|m| m.target.clone()).collect();
        let source = tensor_product(&sources);
        let target = tensor_product(&targets);
        let degree = maps.iter().map(|m| m.degree).sum();
        if maps.len() == 1 {
            return GradedMap {
                source,
                target,
                degree,
                cols: maps[0].cols.clone(),
            };
        }
        let mut cols = Vec::with_capacity(source.dim());
        let start = vec![(0usize, Q::one())];
        tensor_rec(maps, 0, &start, 0, &mut cols);
        GradedMap {
            source,
            target,
            degree,
            cols,
        }
    }

    /// `outer ∘ (inner_1 ⊗ ... ⊗ inner_k)`.
    pub fn compose_tensor(outer: &GradedMap, inners: &[&GradedMap]) -> Result<GradedMap, LinError> {
        outer.compose(&GradedMap::tensor(inners))
    }

    /// Dense matrix with rows indexed by the target basis.
    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_columns(self.target.dim(), &self.cols)
    }

    /// Two-sided inverse of a degree zero map, if it exists.
    pub fn inverse(&self) -> Option<GradedMap> {
        if self.degree != 0 && !self.is_zero() {
            return None;
        }
        if self.source.dim() != self.target.dim() {
            return None;
        }
        let inv = self.to_matrix().inverse()?;
        let n = self.source.dim();
        let cols = (0..n)
            .map(|j| {
                (0..n)
                    .filter(|&i| !inv[(i, j)].is_zero())
                    .map(|i| (i, inv[(i, j)].clone()))
                    .collect()
            })
            .collect();
        GradedMap::new(self.target.clone(), self.source.clone(), 0, cols).ok()
    }

    /// Exact equality of spaces, degree (ignored for zero maps) and entries.
    pub fn equals(&self, other: &GradedMap) -> bool {
        same_space(&self.source, &other.source)
            && same_space(&self.target, &other.target)
            && (self.degree == other.degree || (self.is_zero() && other.is_zero()))
            && self.cols == other.cols
    }
}

/// Depth-first over source tuples in lexicographic order; `partial` holds
/// the target coordinates built so far with their coefficients.
fn tensor_rec(maps: &[&GradedMap], level: usize, partial: &[(usize, Q)], degsum: i32, out: &mut Vec<SVec>) {
    if level == maps.len() {
        let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
        for (t, c) in partial {
            *acc.entry(*t).or_insert_with(Q::zero) += c;
        }
        out.push(finish(acc));
        return;
    }
    let m = maps[level];
    let tdim = m.target.dim();
    let odd = (m.degree as i64 * degsum as i64).rem_euclid(2) == 1;
    for i in 0..m.source.dim() {
        let mut next = Vec::with_capacity(partial.len() * m.cols[i].len());
        for (t, c) in partial {
            for (r, x) in &m.cols[i] {
                let v = c * x;
                next.push((t * tdim + r, if odd { -v } else { v }));
            }
        }
        tensor_rec(maps, level + 1, &next, degsum + m.source.degree(i), out);
    }
}

impl PartialEq for GradedMap {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

/// Panics when the maps live on different spaces.
impl Add for &GradedMap {
    type Output = GradedMap;
    fn add(self, rhs: &GradedMap) -> GradedMap {
        self.add_scaled(rhs, &Q::one()).expect("adding incompatible maps")
    }
}

/// Panics when the maps live on different spaces.
impl Sub for &GradedMap {
    type Output = GradedMap;
    fn sub(self, rhs: &GradedMap) -> GradedMap {
        self.add_scaled(rhs, &-Q::one()).expect("subtracting incompatible maps")
    }
}

impl Neg for &GradedMap {
    type Output = GradedMap;
    fn neg(self) -> GradedMap {
        self.scale(&-Q::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::q;
    use crate::exactlin::space::{tensor_power, GradedVectorSpace};

    fn two_term() -> (Space, GradedMap) {
        let v = GradedVectorSpace::from_degrees(&[0, 1]);
        let d = GradedMap::from_entries(v.clone(), v.clone(), -1, [(0, 1, q(1))]).unwrap();
        (v, d)
    }

    #[test]
    fn identity_tensor_identity() {
        let (v, _) = two_term();
        let id = GradedMap::identity(&v);
        let t = GradedMap::tensor(&[&id, &id]);
        assert_eq!(t, GradedMap::identity(&tensor_power(&v, 2).unwrap()));
    }

    #[test]
    fn degree_zero_factor_has_no_sign() {
        let (v, d) = two_term();
        let id = GradedMap::identity(&v);
        // (d ⊗ 1)(x ⊗ y) = d(x) ⊗ y, no sign because |1| = 0
        let t = GradedMap::tensor(&[&d, &id]);
        // basis of v⊗v: 00,01,10,11 ; d(v1)=v0
        assert_eq!(t.column(2), &vec![(0, q(1))]);
        assert_eq!(t.column(3), &vec![(1, q(1))]);
    }

    #[test]
    fn koszul_sign_on_second_factor() {
        let (v, d) = two_term();
        let id = GradedMap::identity(&v);
        let t = GradedMap::tensor(&[&id, &d]);
        // (1 ⊗ d)(v1 ⊗ v1) = - v1 ⊗ v0
        assert_eq!(t.column(3), &vec![(2, q(-1))]);
        assert_eq!(t.column(1), &vec![(0, q(1))]);
    }

    #[test]
    fn tensor_differential_squares_to_zero() {
        let (v, d) = two_term();
        let id = GradedMap::identity(&v);
        let big = &GradedMap::tensor(&[&d, &id]) + &GradedMap::tensor(&[&id, &d]);
        assert!(big.compose(&big).unwrap().is_zero());
    }

    #[test]
    fn blocks_round_trip() {
        let v = GradedVectorSpace::from_dims(&[(0, 2), (1, 1)].into_iter().collect());
        let mut blocks = BTreeMap::new();
        blocks.insert(1, vec![vec![q(1)], vec![q(-1)]]);
        let d = GradedMap::from_blocks(v.clone(), v.clone(), -1, &blocks).unwrap();
        assert_eq!(d.nonzero_blocks(), blocks);
        assert_eq!(d.block(1), blocks[&1]);
    }

    #[test]
    fn degree_violation_rejected() {
        let v = GradedVectorSpace::from_degrees(&[0, 1]);
        assert!(matches!(
            GradedMap::from_entries(v.clone(), v, 0, [(1, 0, q(1))]),
            Err(LinError::Degree(_))
        ));
    }
}
