use std::collections::BTreeMap;

use num::Zero;

use crate::exactlin::{GradedMap, LinearOutcome, LinearSystem, Space, Q};

use super::TransferError;

/// Linear equations `Σ_t c_t L_t X R_t = C` in the entries of an unknown
/// homogeneous map `X : S → T`.
pub struct MapEquations {
    source: Space,
    target: Space,
    degree: i32,
    index: BTreeMap<(usize, usize), usize>,
    unknowns: Vec<(usize, usize)>,
    rows: BTreeMap<(usize, usize), BTreeMap<usize, Q>>,
    rhs: BTreeMap<(usize, usize), Q>,
    blocks: usize,
}

impl MapEquations {
    pub fn new(source: Space, target: Space, degree: i32) -> Self {
        let mut index = BTreeMap::new();
        let mut unknowns = Vec::new();
        for c in 0..source.dim() {
            for &r in target.indices_in(source.degree(c) + degree) {
                index.insert((r, c), unknowns.len());
                unknowns.push((r, c));
            }
        }
        MapEquations {
            source,
            target,
            degree,
            index,
            unknowns,
            rows: BTreeMap::new(),
            rhs: BTreeMap::new(),
            blocks: 0,
        }
    }

    /// Adds one block of equations `Σ_t c_t L_t X R_t = C`. `None` stands for
    /// an identity.
    pub fn push(&mut self, terms: &[(Q, Option<&GradedMap>, Option<&GradedMap>)], rhs: &GradedMap) {
        let block = self.blocks;
        self.blocks += 1;
        let key = |a: usize, b: usize| (block << 40 | a, b);
        let mut local: BTreeMap<(usize, usize), BTreeMap<usize, Q>> = BTreeMap::new();
        let src_dim = rhs.source().dim();
        for (coef, left, right) in terms {
            for b in 0..src_dim {
                let rcol: Vec<(usize, Q)> = match right {
                    Some(r) => r.column(b).clone(),
                    None => vec![(b, num::One::one())],
                };
                for (c, rv) in rcol {
                    for &r in self.target.indices_in(self.source.degree(c) + self.degree) {
                        let u = self.index[&(r, c)];
                        let lcol: Vec<(usize, Q)> = match left {
                            Some(l) => l.column(r).clone(),
                            None => vec![(r, num::One::one())],
                        };
                        for (a, lv) in lcol {
                            *local.entry(key(a, b)).or_default().entry(u).or_insert_with(Q::zero) += coef * &rv * &lv;
                        }
                    }
                }
            }
        }
        for b in 0..src_dim {
            for (a, x) in rhs.column(b) {
                self.rhs.insert(key(*a, b), x.clone());
                local.entry(key(*a, b)).or_default();
            }
        }
        self.rows.extend(local);
    }

    pub fn solve(&self, stage: &str) -> Result<GradedMap, TransferError> {
        let mut sys = LinearSystem::new(self.unknowns.len());
        for (k, row) in &self.rows {
            let r: Vec<(usize, Q)> = row
                .iter()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (*i, x.clone()))
                .collect();
            sys.push(r, self.rhs.get(k).cloned().unwrap_or_else(Q::zero));
        }
        match sys.solve() {
            LinearOutcome::Solved(x) => {
                let entries = self
                    .unknowns
                    .iter()
                    .zip(x)
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(&(r, c), v)| (r, c, v));
                Ok(GradedMap::from_entries(
                    self.source.clone(),
                    self.target.clone(),
                    self.degree,
                    entries,
                )?)
            }
            LinearOutcome::Inconsistent(certificate) => Err(TransferError::Inconsistent {
                stage: stage.to_string(),
                certificate,
            }),
        }
    }
}
