use std::collections::{BTreeMap, HashMap};

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use super::map::{axpy, finish, SVec};
use super::rational::Q;

/// Dense rational matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Q>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    /// Matrix whose columns are the given sparse vectors.
    pub fn from_columns(rows: usize, cols: &[SVec]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col {
                m[(*i, j)] = x.clone();
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> SVec {
        (0..self.rows)
            .filter(|&i| !self[(i, j)].is_zero())
            .map(|i| (i, self[(i, j)].clone()))
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut m = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        m[(i, j)] += a * b;
                    }
                }
            }
        }
        m
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Reduced row echelon form with leftmost pivots; returns the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = Q::one() / &m[(r, c)];
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        let v = &m[(r, j)] * &f;
                        m[(i, j)] -= v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column (RREF order).
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Q::zero(); self.cols];
            v[free] = Q::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Q::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

/// A sparse system `A x = b`, one sparse row per equation.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    pub ncols: usize,
    pub rows: Vec<SVec>,
    pub rhs: Vec<Q>,
}

/// Proof that `A x = b` has no solution: a row combination `y` with
/// `y A = 0` and `y b != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InconsistencyCertificate {
    pub combination: Vec<(usize, String)>,
    pub value: String,
}

#[derive(Clone, Debug)]
pub enum LinearOutcome {
    Solved(Vec<Q>),
    Inconsistent(InconsistencyCertificate),
}

struct Pivot {
    row: SVec,
    rhs: Q,
    combo: Option<SVec>,
}

impl LinearSystem {
    pub fn new(ncols: usize) -> Self {
        LinearSystem {
            ncols,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn push(&mut self, row: SVec, rhs: Q) {
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    /// Forward elimination. Returns the pivot rows keyed by leading column, or
    /// the index (and combination, if tracked) of the first inconsistent row.
    fn eliminate(&self, track: bool) -> Result<BTreeMap<usize, Pivot>, Option<SVec>> {
        let mut pivots: BTreeMap<usize, Pivot> = BTreeMap::new();
        for (k, row) in self.rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, Q> = row.iter().cloned().collect();
            let mut rhs = self.rhs[k].clone();
            let mut combo: Option<BTreeMap<usize, Q>> = track.then(|| [(k, Q::one())].into_iter().collect());
            loop {
                acc.retain(|_, x| !x.is_zero());
                let Some((&lead, lv)) = acc.iter().next() else { break };
                let Some(p) = pivots.get(&lead) else { break };
                let f = lv / &p.row[0].1;
                let nf = -f.clone();
                axpy(&mut acc, &p.row, &nf);
                rhs -= &p.rhs * &f;
                if let (Some(c), Some(pc)) = (combo.as_mut(), p.combo.as_ref()) {
                    axpy(c, pc, &nf);
                }
            }
            let row = finish(acc);
            if row.is_empty() {
                if !rhs.is_zero() {
                    return Err(combo.map(finish));
                }
                continue;
            }
            let lead = row[0].0;
            pivots.insert(
                lead,
                Pivot {
                    row,
                    rhs,
                    combo: combo.map(finish),
                },
            );
        }
        Ok(pivots)
    }

    /// Exact solve. Free variables are set to zero, so the returned solution
    /// is supported on pivot columns.
    pub fn solve(&self) -> LinearOutcome {
        match self.eliminate(false) {
            Ok(pivots) => {
                let mut x = vec![Q::zero(); self.ncols];
                for (&lead, p) in pivots.iter().rev() {
                    let mut v = p.rhs.clone();
                    for (c, a) in &p.row[1..] {
                        if !x[*c].is_zero() {
                            v -= a * &x[*c];
                        }
                    }
                    x[lead] = v / &p.row[0].1;
                }
                LinearOutcome::Solved(x)
            }
            Err(_) => {
                let combo = self
                    .eliminate(true)
                    .err()
                    .flatten()
                    .expect("inconsistency must reproduce with tracking");
                let value: Q = combo.iter().map(|(i, c)| c * &self.rhs[*i]).sum();
                LinearOutcome::Inconsistent(InconsistencyCertificate {
                    combination: combo.iter().map(|(i, c)| (*i, super::format_q(c))).collect(),
                    value: super::format_q(&value),
                })
            }
        }
    }

    pub fn rank(&self) -> usize {
        let zero = LinearSystem {
            ncols: self.ncols,
            rows: self.rows.clone(),
            rhs: vec![Q::zero(); self.rows.len()],
        };
        zero.eliminate(false).map(|p| p.len()).unwrap_or(0)
    }

    /// Checks a certificate against this system.
    pub fn verify_certificate(&self, cert: &InconsistencyCertificate) -> bool {
        let mut acc: HashMap<usize, Q> = HashMap::new();
        let mut value = Q::zero();
        for (i, c) in &cert.combination {
            let Ok(c) = super::parse_q(c) else { return false };
            value += &c * &self.rhs[*i];
            for (j, a) in &self.rows[*i] {
                *acc.entry(*j).or_insert_with(Q::zero) += &c * a;
            }
        }
        acc.values().all(Zero::is_zero) && !value.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::{q, qr};

    #[test]
    fn rref_and_kernel() {
        let m = Matrix::from_rows(&[vec![q(1), q(2), q(3)], vec![q(2), q(4), q(7)]]);
        let (_, piv) = m.rref();
        assert_eq!(piv, vec![0, 2]);
        let k = m.kernel();
        assert_eq!(k, vec![vec![q(-2), q(1), q(0)]]);
    }

    #[test]
    fn inverse() {
        let m = Matrix::from_rows(&[vec![q(2), q(1)], vec![q(1), q(1)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(Matrix::from_rows(&[vec![q(1), q(1)], vec![q(1), q(1)]])
            .inverse()
            .is_none());
    }

    #[test]
    fn solve_consistent() {
        let mut s = LinearSystem::new(2);
        s.push(vec![(0, q(1)), (1, q(1))], q(3));
        s.push(vec![(0, q(2)), (1, q(-1))], q(0));
        match s.solve() {
            LinearOutcome::Solved(x) => assert_eq!(x, vec![q(1), q(2)]),
            LinearOutcome::Inconsistent(_) => panic!(),
        }
    }

    #[test]
    fn solve_free_variables_zero() {
        let mut s = LinearSystem::new(3);
        s.push(vec![(0, q(2)), (2, q(1))], q(1));
        match s.solve() {
            LinearOutcome::Solved(x) => assert_eq!(x, vec![qr(1, 2), q(0), q(0)]),
            LinearOutcome::Inconsistent(_) => panic!(),
        }
    }

    #[test]
    fn inconsistent_certificate_verifies() {
        let mut s = LinearSystem::new(2);
        s.push(vec![(0, q(1)), (1, q(1))], q(1));
        s.push(vec![(0, q(2)), (1, q(2))], q(3));
        match s.solve() {
            LinearOutcome::Inconsistent(c) => assert!(s.verify_certificate(&c)),
            LinearOutcome::Solved(_) => panic!(),
        }
    }
}
