use num::One;

use crate::ainfty::{compose_morphisms, inverse_iso, morphism_sum, AInfinityAlgebra, AInfinityMorphism};
use crate::exactlin::{
    hom_differential, same_space, sign, solve_linear, tensor_power, ChainComplex, GradedMap, HomEquation, HomSolution,
    Q,
};
use crate::operadcore::{compositions, eta_exponent};

use super::bar::p_infinity;
use super::sdr::{bracket1, check_side_conditions, HomotopyEquivalence, SDRData};
use super::TransferError;

fn one() -> Q {
    Q::one()
}

/// A transferred structure together with the comparison morphism into the
/// original algebra.
#[derive(Clone, Debug)]
pub struct Transferred {
    pub algebra: AInfinityAlgebra,
    pub morphism: AInfinityMorphism,
    pub notes: Vec<String>,
}

/// Tree summation. `incl : W → V`, `proj : V → W`, `phi` of degree one on
/// `V` with `incl∘proj - 1 = [phi, ∂]`.
///
/// `G_1 = incl`, `P_n = Σ_{k>=2} Σ_r (-1)^{k+η(r)} μ_k(G_{r_1} ⊗ ... ⊗ G_{r_k})`,
/// `G_n = -φ P_n`, `ν_n = (-1)^n proj P_n`.
fn tree_transfer(
    a: &AInfinityAlgebra,
    small: &ChainComplex,
    incl: &GradedMap,
    proj: &GradedMap,
    phi: &GradedMap,
) -> Result<(AInfinityAlgebra, AInfinityMorphism), TransferError> {
    let order = a.order();
    let mut nu = AInfinityAlgebra::new(small.clone(), order);
    let mut comps: Vec<GradedMap> = vec![incl.clone()];
    for n in 2..=order {
        let src = tensor_power(small.space(), n)?;
        let mut p = GradedMap::zero(src, a.space().clone(), n as i32 - 2);
        for k in 2..=n {
            for r in compositions(n, k) {
                let parts: Vec<&GradedMap> = r.iter().map(|&x| &comps[x - 1]).collect();
                let term = GradedMap::compose_tensor(a.mu(k), &parts)?;
                p = p.add_scaled(&term, &sign(k as i64 + eta_exponent(&r)))?;
            }
        }
        comps.push(phi.compose(&p)?.scale(&-one()));
        nu.set_mu(n, proj.compose(&p)?.scale(&sign(n as i64)))?;
    }
    let m = AInfinityMorphism::new(nu.clone(), a.clone(), comps)?;
    Ok((nu, m))
}

/// Transfer along SDR data onto the small complex. The morphism goes from
/// the transferred structure into `a` and has underlying map `∇`.
pub fn transfer_m1(a: &AInfinityAlgebra, s: &SDRData) -> Result<Transferred, TransferError> {
    if &s.big != a.complex() {
        return Err(TransferError::Invalid(
            "the SDR does not start at the algebra's complex".into(),
        ));
    }
    let side = check_side_conditions(s);
    if !side.all() {
        return Err(TransferError::SideConditions(side.failing().join(", ")));
    }
    let (algebra, morphism) = tree_transfer(a, &s.small, &s.nabla, &s.f, &s.phi)?;
    Ok(Transferred {
        algebra,
        morphism,
        notes: vec![],
    })
}

/// One-sided data for move (S): `f : V → W`, `g : W → V` and a homotopy `h`
/// on `V` with `gf - 1 = [h, ∂]`. No homotopy on `W` is needed.
#[derive(Clone, Debug)]
pub struct OneSidedData {
    pub source: ChainComplex,
    pub target: ChainComplex,
    pub f: GradedMap,
    pub g: GradedMap,
    pub h: GradedMap,
}

impl OneSidedData {
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        f: GradedMap,
        g: GradedMap,
        h: GradedMap,
    ) -> Result<Self, TransferError> {
        let shapes = same_space(f.source(), source.space())
            && same_space(f.target(), target.space())
            && same_space(g.source(), target.space())
            && same_space(g.target(), source.space())
            && same_space(h.source(), source.space())
            && same_space(h.target(), source.space());
        if !shapes {
            return Err(TransferError::Invalid(
                "f : V → W, g : W → V and h on V required".into(),
            ));
        }
        let d = OneSidedData {
            f: f.with_degree(0)?,
            g: g.with_degree(0)?,
            h: h.with_degree(1)?,
            source,
            target,
        };
        if !d.source.is_chain_map(&d.f, &d.target) || !d.target.is_chain_map(&d.g, &d.source) {
            return Err(TransferError::Invalid("f and g must be chain maps".into()));
        }
        let gf = d.g.compose(&d.f)?.add_scaled(&d.source.identity(), &-one())?;
        if !gf.equals(&bracket1(&d.h, &d.source)?) {
            return Err(TransferError::Hypothesis("gf - 1 is not [h, ∂]".into()));
        }
        Ok(d)
    }
}

/// Move (S): transfer using only the homotopy `h` on the source. The
/// morphism goes from the new structure on `W` into `a`, with underlying `g`.
pub fn transfer_s(a: &AInfinityAlgebra, d: &OneSidedData) -> Result<Transferred, TransferError> {
    if &d.source != a.complex() {
        return Err(TransferError::Invalid(
            "the data does not start at the algebra's complex".into(),
        ));
    }
    let (algebra, morphism) = tree_transfer(a, &d.target, &d.g, &d.f, &d.h)?;
    Ok(Transferred {
        algebra,
        morphism,
        notes: vec!["one-sided hypothesis: only gf - 1 = [h, ∂] was used".into()],
    })
}

fn morphism_bracket(
    x: &GradedMap,
    a: &AInfinityAlgebra,
    b: &AInfinityAlgebra,
    n: usize,
) -> Result<GradedMap, TransferError> {
    let sources = vec![a.complex(); n];
    Ok(hom_differential(x, &sources, b.complex())?)
}

/// Solves `[x, ∂] = rhs` for `x : V^{⊗n} → W`.
fn solve_component(
    rhs: GradedMap,
    a: &AInfinityAlgebra,
    b: &AInfinityAlgebra,
    n: usize,
    stage: &str,
) -> Result<GradedMap, TransferError> {
    let sources = vec![a.complex(); n];
    let eq = HomEquation {
        source: sources,
        target: b.complex(),
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

/// Move (M2): a morphism with underlying map `g`, given `g - f_1 = [h, ∂]`.
///
/// Component `g_n` must satisfy `[g_n, ∂] = R_n`, the residual of the order-n
/// identity with `g_n` omitted. The candidate
/// `f_n + Σ (-1)^{k+η(r)+1+r_1+...+r_{p-1}+k-p} ν_k(f_{r_1} ⊗ ... ⊗ h ⊗ g_{r_{p+1}} ⊗ ... ⊗ g_{r_k}) + (-1)^{n+1} h μ_n`
/// (the sum over blocks `r_p = 1` carrying `h`, `p` counted from 1) is checked against that
/// equation; if it fails the equation is solved directly.
pub fn perturb_m2(m: &AInfinityMorphism, g: &GradedMap, h: &GradedMap) -> Result<AInfinityMorphism, TransferError> {
    let (a, b) = (m.source(), m.target());
    if !same_space(g.source(), a.space()) || !same_space(g.target(), b.space()) {
        return Err(TransferError::Invalid(
            "g must map the source complex to the target".into(),
        ));
    }
    if !same_space(h.source(), a.space()) || !same_space(h.target(), b.space()) {
        return Err(TransferError::Invalid(
            "h must map the source complex to the target".into(),
        ));
    }
    let g = g.clone().with_degree(0)?;
    let h = h.clone().with_degree(1)?;
    let diff = g.add_scaled(m.component(1), &-one())?;
    if !diff.equals(&morphism_bracket(&h, a, b, 1)?) {
        return Err(TransferError::Hypothesis("g - f_1 is not [h, ∂]".into()));
    }
    let order = m.order();
    let mut comps = vec![g];
    for n in 2..=order {
        let rhs = morphism_sum(a, b, &comps, n)?;
        let mut cand = m2_candidate(m, &comps, &h, n)?;
        if !morphism_bracket(&cand, a, b, n)?.equals(&rhs) {
            cand = solve_component(rhs, a, b, n, &format!("perturbation, component {n}"))?;
        }
        comps.push(cand);
    }
    Ok(AInfinityMorphism::new(a.clone(), b.clone(), comps)?)
}

/// The closed-form `g_n` given `g_1, ..., g_{n-1}` in `comps`.
pub(crate) fn m2_candidate(
    m: &AInfinityMorphism,
    comps: &[GradedMap],
    h: &GradedMap,
    n: usize,
) -> Result<GradedMap, TransferError> {
    let (a, b) = (m.source(), m.target());
    let mut cand = m.component(n).clone();
    for k in 2..=n {
        let nu = b.mu(k);
        for r in compositions(n, k) {
            for p in 0..k {
                if r[p] != 1 {
                    continue;
                }
                let parts: Vec<&GradedMap> = (0..k)
                    .map(|q| match q.cmp(&p) {
                        std::cmp::Ordering::Less => m.component(r[q]),
                        std::cmp::Ordering::Equal => h,
                        std::cmp::Ordering::Greater => &comps[r[q] - 1],
                    })
                    .collect();
                let term = GradedMap::compose_tensor(nu, &parts)?;
                // h is odd where f_1 is even
                let before: usize = r[..p].iter().sum();
                let e = k as i64 + eta_exponent(&r) + 1 + before as i64 + (k - p - 1) as i64;
                cand = cand.add_scaled(&term, &sign(e))?;
            }
        }
    }
    Ok(cand.add_scaled(&h.compose(a.mu(n))?, &sign(n as i64 + 1))?)
}

/// Move (M4): composes `morphisms` (the first is applied first) and perturbs
/// the composite to have underlying map `g`.
pub fn chain_m4(
    morphisms: &[AInfinityMorphism],
    g: &GradedMap,
    h: &GradedMap,
) -> Result<AInfinityMorphism, TransferError> {
    let (first, rest) = morphisms
        .split_first()
        .ok_or_else(|| TransferError::Invalid("at least one morphism is required".into()))?;
    let mut acc = first.clone();
    for m in rest {
        acc = compose_morphisms(m, &acc)?;
    }
    perturb_m2(&acc, g, h)
}

/// Move (M3): a morphism `W → V` with underlying `e.g`, where `m : V → W`
/// has underlying `e.f`.
///
/// If `f` is invertible the candidate is the inverse morphism. Otherwise both
/// sides are transferred onto homology, the induced morphism `χ` of minimal
/// models is inverted and the candidate is `i_V ∘ χ^{-1} ∘ p_W`. The candidate
/// is then perturbed to have underlying map `g`, with a homotopy found by a
/// linear solve.
pub fn invert_m3(m: &AInfinityMorphism, e: &HomotopyEquivalence) -> Result<AInfinityMorphism, TransferError> {
    let (v, w) = (m.source(), m.target());
    if v.complex() != &e.source || w.complex() != &e.target {
        return Err(TransferError::Invalid(
            "the equivalence must relate the morphism's complexes".into(),
        ));
    }
    if !m.component(1).equals(&e.f) {
        return Err(TransferError::Hypothesis("the underlying map of m is not f".into()));
    }
    let order = m.order();
    let v = v.with_order(order);
    let w = w.with_order(order);
    let m = AInfinityMorphism::new(v.clone(), w.clone(), m.components().to_vec())?;
    let candidate = if m.component(1).inverse().is_some() {
        inverse_iso(&m)?
    } else {
        let sv = SDRData::onto_homology(v.complex());
        let sw = SDRData::onto_homology(w.complex());
        let tv = transfer_m1(&v, &sv)?;
        let tw = transfer_m1(&w, &sw)?;
        let pw = p_infinity(&w, &sw, &tw.algebra)?;
        let chi = compose_morphisms(&pw, &compose_morphisms(&m, &tv.morphism)?)?;
        let psi = inverse_iso(&chi).map_err(|_| TransferError::Hypothesis("H(f) is not invertible".into()))?;
        compose_morphisms(&tv.morphism, &compose_morphisms(&psi, &pw)?)?
    };
    if candidate.component(1).equals(&e.g) {
        return Ok(candidate);
    }
    let rhs = e.g.add_scaled(candidate.component(1), &-one())?.with_degree(0)?;
    let k = solve_component(rhs, &w, &v, 1, "homotopy between inverses")?;
    perturb_m2(&candidate, &e.g, &k)
}
