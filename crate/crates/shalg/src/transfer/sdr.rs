use std::path::Path;

use num::One;
use serde::{Deserialize, Serialize};

use crate::exactlin::{
    blocks_of, hom_differential, homology_with_splitting, map_from_blocks, same_space, solve_linear, ChainComplex,
    ComplexFile, ComplexRef, GradedMap, HomEquation, HomSolution, MapBlocks, Q,
};

use super::equations::MapEquations;
use super::TransferError;

fn one() -> Q {
    Q::one()
}

/// `[φ, ∂] = ∂φ + φ∂` for a degree-one self-map.
pub(crate) fn bracket1(phi: &GradedMap, c: &ChainComplex) -> Result<GradedMap, TransferError> {
    Ok(hom_differential(phi, &[c], c)?)
}

fn check_shape(
    m: &GradedMap,
    src: &ChainComplex,
    tgt: &ChainComplex,
    degree: i32,
    name: &str,
) -> Result<(), TransferError> {
    if !same_space(m.source(), src.space()) || !same_space(m.target(), tgt.space()) {
        return Err(TransferError::Invalid(format!("{name} has the wrong source or target")));
    }
    if m.degree() != degree && !m.is_zero() {
        return Err(TransferError::Invalid(format!("{name} must have degree {degree}")));
    }
    Ok(())
}

/// Strong deformation retract data `(∇ : M → A, f : A → M, φ)` with
/// `f∇ = 1` and `∇f - 1 = [φ, ∂]`.
#[derive(Clone, Debug)]
pub struct SDRData {
    pub big: ChainComplex,
    pub small: ChainComplex,
    pub nabla: GradedMap,
    pub f: GradedMap,
    pub phi: GradedMap,
}

impl SDRData {
    /// Validates all invariants.
    pub fn new(
        big: ChainComplex,
        small: ChainComplex,
        nabla: GradedMap,
        f: GradedMap,
        phi: GradedMap,
    ) -> Result<Self, TransferError> {
        check_shape(&nabla, &small, &big, 0, "∇")?;
        check_shape(&f, &big, &small, 0, "f")?;
        check_shape(&phi, &big, &big, 1, "φ")?;
        let s = SDRData {
            nabla: nabla.with_degree(0)?,
            f: f.with_degree(0)?,
            phi: phi.with_degree(1)?,
            big,
            small,
        };
        if !s.small.is_chain_map(&s.nabla, &s.big) || !s.big.is_chain_map(&s.f, &s.small) {
            return Err(TransferError::Invalid("∇ and f must be chain maps".into()));
        }
        if !s.f.compose(&s.nabla)?.equals(&s.small.identity()) {
            return Err(TransferError::Invalid("f∇ is not the identity".into()));
        }
        if !s.homotopy_residual()?.is_zero() {
            return Err(TransferError::Invalid("∇f - 1 is not [φ, ∂]".into()));
        }
        Ok(s)
    }

    /// The canonical retract of a complex onto its homology. With `∂ = 0`
    /// this is the identity retract, basis order included.
    pub fn onto_homology(c: &ChainComplex) -> Self {
        if c.differential().is_zero() {
            let id = c.identity();
            return SDRData {
                big: c.clone(),
                small: c.clone(),
                nabla: id.clone(),
                f: id,
                phi: GradedMap::zero(c.space().clone(), c.space().clone(), 1),
            };
        }
        let h = homology_with_splitting(c);
        SDRData {
            big: c.clone(),
            small: h.homology_complex(),
            nabla: h.inclusion,
            f: h.projection,
            phi: h.splitting_homotopy,
        }
    }

    /// `∇f - 1 - [φ, ∂]`.
    pub fn homotopy_residual(&self) -> Result<GradedMap, TransferError> {
        let nf = self.nabla.compose(&self.f)?;
        let lhs = nf.add_scaled(&self.big.identity(), &-one())?;
        Ok(lhs.add_scaled(&bracket1(&self.phi, &self.big)?, &-one())?)
    }

    /// Same `(∇, f)` with a new homotopy, revalidated.
    pub fn with_phi(&self, phi: GradedMap) -> Result<Self, TransferError> {
        Self::new(
            self.big.clone(),
            self.small.clone(),
            self.nabla.clone(),
            self.f.clone(),
            phi,
        )
    }

    /// The equivalence `(∇, f, 0, φ)` between `M` and `A`.
    pub fn equivalence(&self) -> HomotopyEquivalence {
        HomotopyEquivalence {
            source: self.small.clone(),
            target: self.big.clone(),
            f: self.nabla.clone(),
            g: self.f.clone(),
            h: GradedMap::zero(self.small.space().clone(), self.small.space().clone(), 1),
            l: self.phi.clone(),
        }
    }
}

/// The three products of the side conditions, each zero when its condition
/// holds.
#[derive(Clone, Debug)]
pub struct SideConditions {
    pub phi_phi: GradedMap,
    pub phi_nabla: GradedMap,
    pub f_phi: GradedMap,
}

impl SideConditions {
    pub fn flags(&self) -> (bool, bool, bool) {
        (self.phi_phi.is_zero(), self.phi_nabla.is_zero(), self.f_phi.is_zero())
    }

    pub fn all(&self) -> bool {
        let (a, b, c) = self.flags();
        a && b && c
    }

    /// Names of the failing conditions.
    pub fn failing(&self) -> Vec<&'static str> {
        let (a, b, c) = self.flags();
        [(a, "φφ = 0"), (b, "φ∇ = 0"), (c, "fφ = 0")]
            .into_iter()
            .filter(|(ok, _)| !ok)
            .map(|(_, n)| n)
            .collect()
    }
}

pub fn check_side_conditions(s: &SDRData) -> SideConditions {
    let c = |a: &GradedMap, b: &GradedMap| a.compose(b).expect("SDR maps compose");
    SideConditions {
        phi_phi: c(&s.phi, &s.phi),
        phi_nabla: c(&s.phi, &s.nabla),
        f_phi: c(&s.f, &s.phi),
    }
}

/// `φ ↦ (1-∇f)φ(1-∇f)`, then `φ ↦ -φ∂φ`. Each step is revalidated.
pub fn normalize_side_conditions(s: &SDRData) -> Result<SDRData, TransferError> {
    let id = s.big.identity();
    let proj = id.add_scaled(&s.nabla.compose(&s.f)?, &-one())?;
    let phi1 = proj.compose(&s.phi)?.compose(&proj)?;
    let step1 = s.with_phi(phi1)?;
    let d = s.big.differential();
    let phi2 = step1.phi.compose(d)?.compose(&step1.phi)?.scale(&-one());
    let out = step1.with_phi(phi2)?;
    if !check_side_conditions(&out).all() {
        return Err(TransferError::Invalid(
            "normalization left a side condition unsatisfied".into(),
        ));
    }
    Ok(out)
}

/// `f : V → W`, `g : W → V` with `gf - 1 = [h, ∂]` and `fg - 1 = [l, ∂]`.
#[derive(Clone, Debug)]
pub struct HomotopyEquivalence {
    pub source: ChainComplex,
    pub target: ChainComplex,
    pub f: GradedMap,
    pub g: GradedMap,
    pub h: GradedMap,
    pub l: GradedMap,
}

impl HomotopyEquivalence {
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        f: GradedMap,
        g: GradedMap,
        h: GradedMap,
        l: GradedMap,
    ) -> Result<Self, TransferError> {
        check_shape(&f, &source, &target, 0, "f")?;
        check_shape(&g, &target, &source, 0, "g")?;
        check_shape(&h, &source, &source, 1, "h")?;
        check_shape(&l, &target, &target, 1, "l")?;
        let e = HomotopyEquivalence {
            f: f.with_degree(0)?,
            g: g.with_degree(0)?,
            h: h.with_degree(1)?,
            l: l.with_degree(1)?,
            source,
            target,
        };
        if !e.source.is_chain_map(&e.f, &e.target) || !e.target.is_chain_map(&e.g, &e.source) {
            return Err(TransferError::Invalid("f and g must be chain maps".into()));
        }
        let gf = e.g.compose(&e.f)?.add_scaled(&e.source.identity(), &-one())?;
        if !gf.equals(&bracket1(&e.h, &e.source)?) {
            return Err(TransferError::Invalid("gf - 1 is not [h, ∂]".into()));
        }
        let fg = e.f.compose(&e.g)?.add_scaled(&e.target.identity(), &-one())?;
        if !fg.equals(&bracket1(&e.l, &e.target)?) {
            return Err(TransferError::Invalid("fg - 1 is not [l, ∂]".into()));
        }
        Ok(e)
    }
}

/// Retracts through which an equivalence can be routed: both complexes onto
/// their homology, the induced isomorphism, and, when `f` is injective or
/// surjective, a retract realizing `f` itself. The homotopies `h` and `l` of
/// the input are not reused.
#[derive(Clone, Debug)]
pub struct EquivalenceSplitting {
    pub source_homology: SDRData,
    pub target_homology: SDRData,
    /// `H(f) : H(V) → H(W)`.
    pub homology_iso: GradedMap,
    pub direct: Option<SDRData>,
    pub notes: Vec<String>,
}

fn is_iso(m: &GradedMap) -> bool {
    m.source().dims() == m.target().dims() && m.inverse().is_some()
}

/// Solves `[x, ∂] = rhs` for a self-map homotopy of degree one.
pub(crate) fn solve_homotopy(c: &ChainComplex, rhs: GradedMap, stage: &str) -> Result<GradedMap, TransferError> {
    let eq = HomEquation {
        source: vec![c],
        target: c,
        rhs,
    };
    match solve_linear(&eq)? {
        HomSolution::Solved(x) => Ok(x),
        HomSolution::Inconsistent(certificate) => Err(TransferError::Inconsistent {
            stage: stage.to_string(),
            certificate,
        }),
    }
}

fn rank(m: &GradedMap) -> usize {
    m.to_matrix().rank()
}

pub fn sdr_from_equivalence(e: &HomotopyEquivalence) -> Result<EquivalenceSplitting, TransferError> {
    let sv = SDRData::onto_homology(&e.source);
    let sw = SDRData::onto_homology(&e.target);
    let hf = sw.f.compose(&e.f)?.compose(&sv.nabla)?;
    if !is_iso(&hf) {
        return Err(TransferError::Hypothesis("H(f) is not an isomorphism".into()));
    }
    let mut notes = vec!["the homotopies h and l were replaced by homology splittings".to_string()];
    let (dv, dw) = (e.source.dim(), e.target.dim());
    let direct = if rank(&e.f) == dv && dv == dw {
        let inv = e.f.inverse().expect("square of full rank");
        let zero = GradedMap::zero(e.target.space().clone(), e.target.space().clone(), 1);
        Some(SDRData::new(
            e.target.clone(),
            e.source.clone(),
            e.f.clone(),
            inv,
            zero,
        )?)
    } else if rank(&e.f) == dv {
        // ∇ = f, solve for a chain retraction p with p f = 1
        let mut eqs = MapEquations::new(e.target.space().clone(), e.source.space().clone(), 0);
        eqs.push(&[(one(), None, Some(&e.f))], &e.source.identity());
        let zero = GradedMap::zero(e.target.space().clone(), e.source.space().clone(), -1);
        eqs.push(
            &[
                (one(), Some(e.source.differential()), None),
                (-one(), None, Some(e.target.differential())),
            ],
            &zero,
        );
        let p = eqs.solve("chain retraction of an injective equivalence")?;
        let rhs = e.f.compose(&p)?.add_scaled(&e.target.identity(), &-one())?;
        let phi = solve_homotopy(&e.target, rhs, "homotopy of the retraction")?;
        let s = SDRData::new(e.target.clone(), e.source.clone(), e.f.clone(), p, phi)?;
        notes.push("f is injective: direct retract of W onto V with ∇ = f".into());
        Some(normalize_side_conditions(&s)?)
    } else if rank(&e.f) == dw {
        let mut eqs = MapEquations::new(e.target.space().clone(), e.source.space().clone(), 0);
        eqs.push(&[(one(), Some(&e.f), None)], &e.target.identity());
        let zero = GradedMap::zero(e.target.space().clone(), e.source.space().clone(), -1);
        eqs.push(
            &[
                (one(), Some(e.source.differential()), None),
                (-one(), None, Some(e.target.differential())),
            ],
            &zero,
        );
        let section = eqs.solve("chain section of a surjective equivalence")?;
        let rhs = section.compose(&e.f)?.add_scaled(&e.source.identity(), &-one())?;
        let phi = solve_homotopy(&e.source, rhs, "homotopy of the section")?;
        let s = SDRData::new(e.source.clone(), e.target.clone(), section, e.f.clone(), phi)?;
        notes.push("f is surjective: direct retract of V onto W with projection f".into());
        Some(normalize_side_conditions(&s)?)
    } else {
        None
    };
    Ok(EquivalenceSplitting {
        source_homology: sv,
        target_homology: sw,
        homology_iso: hf,
        direct,
        notes,
    })
}

/// JSON form of SDR data: two complexes (paths or inline) and three maps as
/// blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SdrFile {
    pub big: ComplexRef,
    pub small: ComplexRef,
    pub nabla: MapBlocks,
    pub f: MapBlocks,
    pub phi: MapBlocks,
}

impl SdrFile {
    /// Inline complexes.
    pub fn from_sdr(s: &SDRData) -> Self {
        SdrFile {
            big: ComplexRef::Inline(ComplexFile::from_complex(&s.big)),
            small: ComplexRef::Inline(ComplexFile::from_complex(&s.small)),
            nabla: blocks_of(&s.nabla),
            f: blocks_of(&s.f),
            phi: blocks_of(&s.phi),
        }
    }

    /// Parses and validates the invariants; paths resolve against `base`.
    pub fn to_sdr(&self, base: Option<&Path>) -> Result<SDRData, TransferError> {
        let big = self.big.resolve(base)?;
        let small = self.small.resolve(base)?;
        let (a, m) = (big.space().clone(), small.space().clone());
        let field = |e: crate::exactlin::LinError, name: &str| TransferError::Invalid(format!("{name}: {e}"));
        let nabla = map_from_blocks(m.clone(), a.clone(), 0, &self.nabla).map_err(|e| field(e, "nabla"))?;
        let f = map_from_blocks(a.clone(), m, 0, &self.f).map_err(|e| field(e, "f"))?;
        let phi = map_from_blocks(a.clone(), a, 1, &self.phi).map_err(|e| field(e, "phi"))?;
        SDRData::new(big, small, nabla, f, phi)
    }
}

pub fn load_sdr(path: &Path) -> Result<SDRData, TransferError> {
    let text = std::fs::read_to_string(path).map_err(|e| TransferError::Invalid(format!("{}: {e}", path.display())))?;
    let f: SdrFile =
        serde_json::from_str(&text).map_err(|e| TransferError::Invalid(format!("{}: {e}", path.display())))?;
    f.to_sdr(path.parent())
}
