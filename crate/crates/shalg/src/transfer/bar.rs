//! The projection `p∞ : A → M` of the transfer, computed on suspended
//! tensor powers where the perturbation formula carries no explicit signs.

use std::collections::BTreeMap;

use num::One;

use crate::ainfty::{AInfinityAlgebra, AInfinityMorphism};
use crate::exactlin::{sign, tensor_power, BasisElement, GradedMap, GradedVectorSpace, Space, Q};

use super::sdr::{check_side_conditions, SDRData};
use super::TransferError;

/// Sign conventions relating suspended and unsuspended data.
#[derive(Clone, Debug)]
pub(crate) struct BarSigns {
    /// Exponent of `c_k` in `M_k = c_k s μ_k (s^{-1})^{⊗k}`.
    pub op: fn(usize) -> i64,
    /// `p∞ = f Σ (ε δ Φ)^m`.
    pub eps: i64,
    /// `p_n = d_n s^{-1} P_n s^{⊗n}`.
    pub out: fn(usize) -> i64,
}

pub(crate) const SIGNS: BarSigns = BarSigns {
    op: |k| k as i64,
    eps: 0,
    out: |n| (n * (n - 1) / 2) as i64,
};

fn suspend(v: &Space) -> Space {
    GradedVectorSpace::new(
        v.basis()
            .iter()
            .map(|b| BasisElement {
                label: format!("s{}", b.label),
                degree: b.degree + 1,
            })
            .collect(),
    )
}

fn shift(from: &Space, to: &Space, degree: i32) -> GradedMap {
    let cols = (0..from.dim()).map(|i| vec![(i, Q::one())]).collect();
    GradedMap::new(from.clone(), to.clone(), degree, cols).expect("suspension is well formed")
}

struct Suspension {
    space: Space,
    s: GradedMap,
    sinv: GradedMap,
}

impl Suspension {
    fn of(v: &Space) -> Self {
        let space = suspend(v);
        Suspension {
            s: shift(v, &space, 1),
            sinv: shift(&space, v, -1),
            space,
        }
    }
}

/// `s_Y ∘ m ∘ (s_X^{-1})^{⊗k}`.
fn conj(m: &GradedMap, x: &Suspension, y: &Suspension, k: usize) -> Result<GradedMap, TransferError> {
    let parts = vec![&x.sinv; k];
    Ok(y.s.compose(&m.compose(&GradedMap::tensor(&parts))?)?)
}

fn whisker(id: &GradedMap, s: usize, m: &GradedMap, rest: usize) -> GradedMap {
    crate::ainfty::whisker(id.source(), s, m, rest)
}

pub(crate) fn p_infinity_with(
    a: &AInfinityAlgebra,
    sdr: &SDRData,
    target: &AInfinityAlgebra,
    signs: &BarSigns,
) -> Result<AInfinityMorphism, TransferError> {
    let order = a.order();
    let sa = Suspension::of(a.space());
    let sm = Suspension::of(sdr.small.space());
    let c = |k: usize| sign((signs.op)(k));
    let mut ops: BTreeMap<usize, GradedMap> = BTreeMap::new();
    for k in 2..=order {
        ops.insert(k, conj(a.mu(k), &sa, &sa, k)?.scale(&c(k)));
    }
    let phi = conj(&sdr.phi, &sa, &sa, 1)?.scale(&c(1));
    let nf = conj(&sdr.nabla.compose(&sdr.f)?, &sa, &sa, 1)?;
    let f = conj(&sdr.f, &sa, &sm, 1)?;
    let id = GradedMap::identity(&sa.space);
    let eps = sign(signs.eps);
    // Φ on the m-th tensor power
    let big_phi = |m: usize| -> Result<GradedMap, TransferError> {
        let src = tensor_power(&sa.space, m)?;
        let mut acc = GradedMap::zero(src, tensor_power(&sa.space, m)?, 1);
        for i in 0..m {
            let mut parts: Vec<&GradedMap> = vec![&id; i];
            parts.push(&phi);
            parts.extend(std::iter::repeat_n(&nf, m - i - 1));
            acc = acc.add_scaled(&GradedMap::tensor(&parts), &eps)?;
        }
        Ok(acc)
    };
    let delta = |from: usize, to: usize| -> Result<GradedMap, TransferError> {
        let k = from - to + 1;
        let src = tensor_power(&sa.space, from)?;
        let mut acc = GradedMap::zero(src, tensor_power(&sa.space, to)?, -1);
        for s in 0..to {
            acc = acc.add_scaled(&whisker(&id, s, &ops[&k], to - s - 1), &Q::one())?;
        }
        Ok(acc)
    };
    let phis: Vec<GradedMap> = (0..=order)
        .map(|m| if m == 0 { Ok(id.clone()) } else { big_phi(m) })
        .collect::<Result<_, _>>()?;
    let mut comps = Vec::with_capacity(order);
    for n in 1..=order {
        // u[m] : T^n → T^m
        let mut u: Vec<Option<GradedMap>> = vec![None; n + 1];
        u[n] = Some(GradedMap::identity(&tensor_power(&sa.space, n)?));
        for m in (1..n).rev() {
            let mut acc = GradedMap::zero(tensor_power(&sa.space, n)?, tensor_power(&sa.space, m)?, 0);
            for from in m + 1..=n {
                let prev = u[from].as_ref().expect("filled");
                let step = delta(from, m)?.compose(&phis[from].compose(prev)?)?;
                acc = acc.add_scaled(&step, &Q::one())?;
            }
            u[m] = Some(acc);
        }
        let big_p = f.compose(u[1].as_ref().expect("filled"))?;
        let parts = vec![&sa.s; n];
        let p = sm
            .sinv
            .compose(&big_p.compose(&GradedMap::tensor(&parts))?)?
            .scale(&sign((signs.out)(n)));
        comps.push(p.with_degree(n as i32 - 1)?);
    }
    Ok(AInfinityMorphism::new(a.clone(), target.clone(), comps)?)
}

/// The morphism `A → M` with underlying `f` into the transferred structure
/// `target` on `M`. Requires the side conditions.
pub fn p_infinity(
    a: &AInfinityAlgebra,
    sdr: &SDRData,
    target: &AInfinityAlgebra,
) -> Result<AInfinityMorphism, TransferError> {
    if !check_side_conditions(sdr).all() {
        return Err(TransferError::SideConditions(
            check_side_conditions(sdr).failing().join(", "),
        ));
    }
    p_infinity_with(a, sdr, target, &SIGNS)
}
