use std::collections::BTreeMap;

use num::{One, Zero};

use super::linalg::{InconsistencyCertificate, LinearOutcome, LinearSystem, Matrix};
use super::map::{GradedMap, SVec};
use super::rational::{sign, Q};
use super::space::{same_space, tensor_product, BasisElement, GradedVectorSpace, Space};
use super::LinError;

/// A finite dimensional chain complex with a degree -1 differential.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex {
    space: Space,
    differential: GradedMap,
}

impl ChainComplex {
    pub fn new(differential: GradedMap) -> Result<Self, LinError> {
        if !same_space(differential.source(), differential.target()) {
            return Err(LinError::Shape("differential must be an endomorphism".into()));
        }
        if differential.degree() != -1 && !differential.is_zero() {
            return Err(LinError::Degree("differential must have degree -1".into()));
        }
        let differential = differential.with_degree(-1)?;
        if !differential.compose(&differential)?.is_zero() {
            return Err(LinError::NotDifferential);
        }
        Ok(ChainComplex {
            space: differential.source().clone(),
            differential,
        })
    }

    pub fn zero_differential(space: &Space) -> Self {
        ChainComplex {
            space: space.clone(),
            differential: GradedMap::zero(space.clone(), space.clone(), -1),
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn differential(&self) -> &GradedMap {
        &self.differential
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn identity(&self) -> GradedMap {
        GradedMap::identity(&self.space)
    }

    /// Tensor product complex with the Koszul differential.
    pub fn tensor(complexes: &[&ChainComplex]) -> ChainComplex {
        let d = tensor_differential(complexes);
        ChainComplex {
            space: d.source().clone(),
            differential: d,
        }
    }

    /// Whether `f` commutes with the differentials of `self` (source) and `target`.
    pub fn is_chain_map(&self, f: &GradedMap, target: &ChainComplex) -> bool {
        hom_differential(f, &[self], target).is_ok_and(|r| r.is_zero())
    }
}

/// `Σ_i 1^{⊗i} ⊗ ∂ ⊗ 1^{⊗(n-i-1)}` on the tensor product of the complexes.
pub fn tensor_differential(complexes: &[&ChainComplex]) -> GradedMap {
    let ids: Vec<GradedMap> = complexes.iter().map(|c| c.identity()).collect();
    let space = tensor_product(&complexes.iter().map(|c| c.space.clone()).collect::<Vec<_>>());
    let mut total = GradedMap::zero(space.clone(), space, -1);
    for i in 0..complexes.len() {
        let factors: Vec<&GradedMap> = (0..complexes.len())
            .map(|j| if j == i { &complexes[j].differential } else { &ids[j] })
            .collect();
        total = &total + &GradedMap::tensor(&factors);
    }
    total
}

/// `[f, ∂] = ∂ f - (-1)^{|f|} f (Σ_i 1^{⊗i} ⊗ ∂ ⊗ 1^{⊗(n-i-1)})` for
/// `f : V_1 ⊗ ... ⊗ V_n → W`.
pub fn hom_differential(f: &GradedMap, source: &[&ChainComplex], target: &ChainComplex) -> Result<GradedMap, LinError> {
    let expected = tensor_product(&source.iter().map(|c| c.space.clone()).collect::<Vec<_>>());
    if source.is_empty() || !same_space(f.source(), &expected) {
        return Err(LinError::NotTensorPower);
    }
    if !same_space(f.target(), &target.space) {
        return Err(LinError::Shape("target of f is not the target complex".into()));
    }
    let left = target.differential.compose(f)?;
    let right = f.compose(&tensor_differential(source))?;
    let r = left.add_scaled(&right, &-sign(f.degree() as i64))?;
    r.with_degree(f.degree() - 1)
}

/// Canonical deformation retract of a complex onto its homology.
#[derive(Clone, Debug)]
pub struct HomologyData {
    pub complex: ChainComplex,
    pub homology: Space,
    pub inclusion: GradedMap,
    pub projection: GradedMap,
    pub splitting_homotopy: GradedMap,
}

impl HomologyData {
    /// The homology as a complex with zero differential.
    pub fn homology_complex(&self) -> ChainComplex {
        ChainComplex::zero_differential(&self.homology)
    }

    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.homology.dims()
    }
}

/// Splits every degree as boundaries ⊕ homology representatives ⊕ a
/// complement spanned by basis vectors whose boundaries form a basis of the
/// boundaries one degree down. The homotopy sends `∂c` to `-c` and kills the
/// rest, so all three side conditions hold by construction.
pub fn homology_with_splitting(c: &ChainComplex) -> HomologyData {
    let space = &c.space;
    let d = &c.differential;
    // per degree: pivot source vectors of ∂ restricted to that degree
    let mut pivot_cols: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for k in space.degrees() {
        let block = Matrix::from_rows(&d.block_at(k));
        let (_, piv) = if block.nrows() == 0 {
            (block.clone(), Vec::new())
        } else {
            block.rref()
        };
        let idx = space.indices_in(k);
        pivot_cols.insert(k, piv.into_iter().map(|p| idx[p]).collect());
    }
    let mut h_basis = Vec::new();
    let mut h_reps: Vec<SVec> = Vec::new();
    // new basis of the whole space: columns, plus role tags
    let mut new_basis: Vec<SVec> = vec![Vec::new(); space.dim()];
    let mut role: Vec<Role> = vec![Role::Complement; space.dim()];
    for k in space.degrees() {
        let idx = space.indices_in(k).to_vec();
        let n = idx.len();
        let local = |v: &SVec| -> Vec<Q> {
            let mut out = vec![Q::zero(); n];
            for (i, x) in v {
                out[space.local_index(*i)] = x.clone();
            }
            out
        };
        let mut chosen: Vec<(SVec, Role)> = Vec::new();
        // boundaries of pivot vectors from degree k+1
        for &p in pivot_cols.get(&(k + 1)).map_or(&[][..], Vec::as_slice) {
            chosen.push((d.column(p).clone(), Role::Boundary(p)));
        }
        // extend by cycles
        let block = Matrix::from_rows(&d.block_at(k));
        let kernel = if block.nrows() == 0 {
            Matrix::identity(n).to_rows()
        } else {
            block.kernel()
        };
        let mut span: Vec<Vec<Q>> = chosen.iter().map(|(v, _)| local(v)).collect();
        for kv in kernel {
            let mut trial = span.clone();
            trial.push(kv.clone());
            if Matrix::from_rows(&trial).rank() == trial.len() {
                span = trial;
                let sv: SVec = kv
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, x)| (idx[i], x.clone()))
                    .collect();
                // a class represented by a single basis vector keeps its name
                let label = match sv.as_slice() {
                    [(i, x)] if x.is_one() => space.label(*i).to_string(),
                    _ => format!(
                        "h{}_{}",
                        k,
                        h_basis.iter().filter(|b: &&BasisElement| b.degree == k).count()
                    ),
                };
                chosen.push((sv, Role::Homology(h_basis.len())));
                h_basis.push(BasisElement { label, degree: k });
            }
        }
        for &p in pivot_cols.get(&k).map_or(&[][..], Vec::as_slice) {
            chosen.push((vec![(p, Q::one())], Role::Complement));
        }
        assert_eq!(chosen.len(), n, "splitting must give a basis");
        for (slot, (v, r)) in idx.iter().zip(chosen) {
            if let Role::Homology(_) = r {
                h_reps.push(v.clone());
            }
            new_basis[*slot] = v;
            role[*slot] = r;
        }
    }
    let homology = GradedVectorSpace::new(h_basis);
    // coordinates in the new basis
    let mut coords_of_std: Vec<SVec> = vec![Vec::new(); space.dim()];
    for k in space.degrees() {
        let idx = space.indices_in(k);
        let n = idx.len();
        let mut p = Matrix::zeros(n, n);
        for (j, &slot) in idx.iter().enumerate() {
            for (i, x) in &new_basis[slot] {
                p[(space.local_index(*i), j)] = x.clone();
            }
        }
        let inv = p.inverse().expect("change of basis is invertible");
        for (j, &std) in idx.iter().enumerate() {
            coords_of_std[std] = (0..n)
                .filter(|&i| !inv[(i, j)].is_zero())
                .map(|i| (idx[i], inv[(i, j)].clone()))
                .collect();
        }
    }
    let inclusion = GradedMap::new(homology.clone(), space.clone(), 0, h_reps).expect("inclusion");
    let mut proj_cols = Vec::with_capacity(space.dim());
    let mut phi_cols = Vec::with_capacity(space.dim());
    for coords in &coords_of_std {
        let mut pc = Vec::new();
        let mut fc: BTreeMap<usize, Q> = BTreeMap::new();
        for (slot, x) in coords {
            match role[*slot] {
                Role::Homology(h) => pc.push((h, x.clone())),
                Role::Boundary(src) => {
                    *fc.entry(src).or_insert_with(Q::zero) -= x;
                }
                Role::Complement => {}
            }
        }
        proj_cols.push(pc);
        phi_cols.push(super::map::finish(fc));
    }
    let projection = GradedMap::new(space.clone(), homology.clone(), 0, proj_cols).expect("projection");
    let splitting_homotopy = GradedMap::new(space.clone(), space.clone(), 1, phi_cols).expect("homotopy");
    HomologyData {
        complex: c.clone(),
        homology,
        inclusion,
        projection,
        splitting_homotopy,
    }
}

#[derive(Clone, Copy, Debug)]
enum Role {
    Boundary(usize),
    Homology(usize),
    Complement,
}

/// The equation `[x, ∂] = rhs` for an unknown `x : V_1 ⊗ ... ⊗ V_n → W` of
/// degree `rhs.degree() + 1`.
#[derive(Clone, Debug)]
pub struct HomEquation<'a> {
    pub source: Vec<&'a ChainComplex>,
    pub target: &'a ChainComplex,
    pub rhs: GradedMap,
}

#[derive(Clone, Debug)]
pub enum HomSolution {
    Solved(GradedMap),
    Inconsistent(InconsistencyCertificate),
}

impl HomSolution {
    pub fn map(&self) -> Option<&GradedMap> {
        match self {
            HomSolution::Solved(m) => Some(m),
            HomSolution::Inconsistent(_) => None,
        }
    }
}

/// Solves `[x, ∂] = rhs` exactly. The unknowns are the entries of `x`, and the
/// returned solution has free entries set to zero.
pub fn solve_linear(eq: &HomEquation<'_>) -> Result<HomSolution, LinError> {
    let src_space = tensor_product(&eq.source.iter().map(|c| c.space.clone()).collect::<Vec<_>>());
    if !same_space(eq.rhs.source(), &src_space) {
        return Err(LinError::NotTensorPower);
    }
    let tgt = &eq.target.space;
    if !same_space(eq.rhs.target(), tgt) {
        return Err(LinError::Shape("rhs target is not the target complex".into()));
    }
    let deg = eq.rhs.degree() + 1;
    let dsrc = tensor_differential(&eq.source);
    let dtgt = &eq.target.differential;
    // unknowns: (row, col) with deg(row) = deg(col) + deg
    let mut unknown = BTreeMap::new();
    let mut unknowns = Vec::new();
    for c in 0..src_space.dim() {
        for &r in tgt.indices_in(src_space.degree(c) + deg) {
            unknown.insert((r, c), unknowns.len());
            unknowns.push((r, c));
        }
    }
    // [x,∂](e_c) = ∂_W x(e_c) - (-1)^deg x(D e_c)
    // equation for entry (r', c'): Σ_r ∂[r',r] x[r,c'] - s Σ_c D[c,c'] x[r',c]
    let s = sign(deg as i64);
    let mut rows: BTreeMap<(usize, usize), BTreeMap<usize, Q>> = BTreeMap::new();
    for (&(r, c), &u) in &unknown {
        for (r2, a) in dtgt.column(r) {
            *rows.entry((*r2, c)).or_default().entry(u).or_insert_with(Q::zero) += a;
        }
    }
    for c2 in 0..src_space.dim() {
        for (c, a) in dsrc.column(c2) {
            for &r in tgt.indices_in(src_space.degree(*c) + deg) {
                let u = unknown[&(r, *c)];
                *rows.entry((r, c2)).or_default().entry(u).or_insert_with(Q::zero) -= a * &s;
            }
        }
    }
    for c in 0..src_space.dim() {
        for (r, _) in eq.rhs.column(c) {
            rows.entry((*r, c)).or_default();
        }
    }
    let mut system = LinearSystem::new(unknowns.len());
    for (&(r, c), row) in &rows {
        system.push(super::map::finish(row.clone()), eq.rhs.entry(r, c));
    }
    match system.solve() {
        LinearOutcome::Solved(x) => {
            let entries = unknowns
                .iter()
                .zip(x)
                .filter(|(_, v)| !v.is_zero())
                .map(|(&(r, c), v)| (r, c, v));
            let m = GradedMap::from_entries(src_space, tgt.clone(), deg, entries)?;
            Ok(HomSolution::Solved(m))
        }
        LinearOutcome::Inconsistent(cert) => Ok(HomSolution::Inconsistent(cert)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::q;
    use crate::exactlin::space::tensor_power;

    fn complex(degrees: &[i32], entries: &[(usize, usize, i64)]) -> ChainComplex {
        let v = GradedVectorSpace::from_degrees(degrees);
        let d = GradedMap::from_entries(v.clone(), v, -1, entries.iter().map(|&(r, c, x)| (r, c, q(x)))).unwrap();
        ChainComplex::new(d).unwrap()
    }

    fn check_sdr(h: &HomologyData) {
        let c = &h.complex;
        let id_h = GradedMap::identity(&h.homology);
        assert_eq!(h.projection.compose(&h.inclusion).unwrap(), id_h);
        let lhs = &h.inclusion.compose(&h.projection).unwrap() - &c.identity();
        let rhs = hom_differential(&h.splitting_homotopy, &[c], c).unwrap();
        assert_eq!(lhs, rhs);
        assert!(c.differential().compose(&h.inclusion).unwrap().is_zero());
        let phi = &h.splitting_homotopy;
        assert!(phi.compose(phi).unwrap().is_zero());
        assert!(phi.compose(&h.inclusion).unwrap().is_zero());
        assert!(h.projection.compose(phi).unwrap().is_zero());
    }

    #[test]
    fn zero_differential_homology_is_everything() {
        let c = complex(&[0, 1, 1], &[]);
        let h = homology_with_splitting(&c);
        assert_eq!(h.dims(), c.space().dims());
        assert!(h.splitting_homotopy.is_zero());
        check_sdr(&h);
    }

    #[test]
    fn acyclic_two_term() {
        let c = complex(&[0, 1], &[(0, 1, 3)]);
        let h = homology_with_splitting(&c);
        assert_eq!(h.homology.dim(), 0);
        check_sdr(&h);
    }

    #[test]
    fn rank_example() {
        // dims {0:2, 1:1}, ∂ v = e1 - e2
        let c = complex(&[0, 0, 1], &[(0, 2, 1), (1, 2, -1)]);
        let h = homology_with_splitting(&c);
        assert_eq!(h.dims(), [(0, 1)].into_iter().collect());
        check_sdr(&h);
    }

    #[test]
    fn longer_complex() {
        // 0 <- a,b <- c,d,e <- f ; ∂c = a, ∂d = a, ∂e = b ; ∂f = c - d
        let c = complex(
            &[0, 0, 1, 1, 1, 2],
            &[(0, 2, 1), (0, 3, 1), (1, 4, 1), (2, 5, 1), (3, 5, -1)],
        );
        let h = homology_with_splitting(&c);
        assert_eq!(h.homology.dim(), 0);
        check_sdr(&h);
    }

    #[test]
    fn hom_differential_of_chain_map_is_zero() {
        let c = complex(&[0, 1], &[(0, 1, 1)]);
        assert!(hom_differential(&c.identity(), &[&c], &c).unwrap().is_zero());
        let z = GradedMap::zero(c.space().clone(), c.space().clone(), 3);
        assert!(hom_differential(&z, &[&c], &c).unwrap().is_zero());
    }

    #[test]
    fn hom_differential_rejects_wrong_source() {
        let c = complex(&[0, 1], &[(0, 1, 1)]);
        let f = GradedMap::zero(tensor_power(c.space(), 2).unwrap(), c.space().clone(), 0);
        assert_eq!(hom_differential(&f, &[&c], &c).unwrap_err(), LinError::NotTensorPower);
    }

    #[test]
    fn solve_boundary_of_non_cycle_is_inconsistent() {
        let c = complex(&[0, 1, 2], &[(0, 1, 1)]);
        let k = ChainComplex::zero_differential(&GradedVectorSpace::ground());
        // b = v1 in degree 1 is not a cycle, so ∂x = b has no solution
        let b = GradedMap::from_entries(k.space().clone(), c.space().clone(), 1, [(1, 0, q(1))]).unwrap();
        let eq = HomEquation {
            source: vec![&k],
            target: &c,
            rhs: b,
        };
        assert!(matches!(solve_linear(&eq).unwrap(), HomSolution::Inconsistent(_)));
    }

    #[test]
    fn solve_commuting_map_on_acyclic() {
        let c = complex(&[0, 1], &[(0, 1, 1)]);
        let rhs = GradedMap::zero(c.space().clone(), c.space().clone(), -1);
        let eq = HomEquation {
            source: vec![&c],
            target: &c,
            rhs,
        };
        let x = solve_linear(&eq).unwrap();
        assert!(x.map().unwrap().is_zero());
    }
}
