use crate::exactlin::{hom_differential, same_space, sign, tensor_power, ChainComplex, GradedMap, Q};
use crate::operadcore::{compositions, eta_exponent};

use super::algebra::{whisker, AInfinityAlgebra, Residual};
use super::AinftyError;

/// A strongly homotopy morphism `f = (f_1, ..., f_N)`; `f_n` has degree `n - 1`.
#[derive(Clone, Debug)]
pub struct AInfinityMorphism {
    source: AInfinityAlgebra,
    target: AInfinityAlgebra,
    components: Vec<GradedMap>,
}

fn component_shape(
    source: &AInfinityAlgebra,
    target: &AInfinityAlgebra,
    n: usize,
    m: GradedMap,
) -> Result<GradedMap, AinftyError> {
    let src = tensor_power(source.space(), n)?;
    if !same_space(m.source(), &src) || !same_space(m.target(), target.space()) {
        return Err(AinftyError::Mismatch(format!("f_{n} must map V^⊗{n} to W")));
    }
    m.with_degree(n as i32 - 1)
        .map_err(|_| AinftyError::Mismatch(format!("f_{n} must have degree {}", n - 1)))
}

impl AInfinityMorphism {
    /// `components[k]` is `f_{k+1}`; the order is the number of components.
    pub fn new(
        source: AInfinityAlgebra,
        target: AInfinityAlgebra,
        components: Vec<GradedMap>,
    ) -> Result<Self, AinftyError> {
        let order = components.len();
        if order == 0 {
            return Err(AinftyError::Mismatch("a morphism needs f_1".into()));
        }
        if order > source.order() || order > target.order() {
            return Err(AinftyError::Truncation {
                n: order,
                order: source.order().min(target.order()),
            });
        }
        let comps = components
            .into_iter()
            .enumerate()
            .map(|(k, m)| component_shape(&source, &target, k + 1, m))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AInfinityMorphism {
            source,
            target,
            components: comps,
        })
    }

    /// `f_1` given, all higher components zero.
    pub fn strict(
        source: AInfinityAlgebra,
        target: AInfinityAlgebra,
        f1: GradedMap,
        order: usize,
    ) -> Result<Self, AinftyError> {
        let mut comps = vec![f1];
        for n in 2..=order {
            comps.push(GradedMap::zero(
                tensor_power(source.space(), n)?,
                target.space().clone(),
                n as i32 - 1,
            ));
        }
        Self::new(source, target, comps)
    }

    pub fn identity(a: &AInfinityAlgebra) -> Self {
        Self::strict(a.clone(), a.clone(), GradedMap::identity(a.space()), a.order()).expect("identity is well formed")
    }

    pub fn source(&self) -> &AInfinityAlgebra {
        &self.source
    }

    pub fn target(&self) -> &AInfinityAlgebra {
        &self.target
    }

    pub fn order(&self) -> usize {
        self.components.len()
    }

    /// `f_n` for `1 <= n <= order`.
    pub fn component(&self, n: usize) -> &GradedMap {
        &self.components[n - 1]
    }

    pub fn components(&self) -> &[GradedMap] {
        &self.components
    }

    pub fn is_strict(&self) -> bool {
        self.components[1..].iter().all(GradedMap::is_zero)
    }

    /// Same data truncated to a lower order.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.clamp(1, self.order());
        AInfinityMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            components: self.components[..order].to_vec(),
        }
    }

    /// Componentwise equality, with equal endpoints.
    pub fn same_as(&self, other: &Self) -> bool {
        let n = self.order();
        n == other.order()
            && self.source.same_up_to(&other.source, n.max(2).min(self.source.order()))
            && self.target.same_up_to(&other.target, n.max(2).min(self.target.order()))
            && self.components.iter().zip(&other.components).all(|(a, b)| a.equals(b))
    }
}

/// The underlying chain map `f_1`.
pub fn underlying(m: &AInfinityMorphism) -> GradedMap {
    m.component(1).clone()
}

/// `Σ_{k>=2} Σ_r (-1)^{k+η(r)} ν_k(f_{r_1} ⊗ ... ⊗ f_{r_k}) - Σ (-1)^{n+s(j+1)} f_i(1^s ⊗ μ_j ⊗ 1)`
/// for components `comps[k] = f_{k+1}`, without the `[f_n, ∂]` term.
pub(crate) fn morphism_sum(
    source: &AInfinityAlgebra,
    target: &AInfinityAlgebra,
    comps: &[GradedMap],
    n: usize,
) -> Result<GradedMap, AinftyError> {
    let v = source.space();
    let src = tensor_power(v, n)?;
    let mut acc = GradedMap::zero(src, target.space().clone(), n as i32 - 2);
    for k in 2..=n {
        let nu = target.try_mu(k)?;
        for r in compositions(n, k) {
            let parts: Vec<&GradedMap> = r.iter().map(|&x| &comps[x - 1]).collect();
            let term = GradedMap::compose_tensor(nu, &parts)?;
            acc = acc.add_scaled(&term, &sign(k as i64 + eta_exponent(&r)))?;
        }
    }
    for i in 1..n {
        let j = n + 1 - i;
        let mu = source.try_mu(j)?;
        for s in 0..i {
            let term = comps[i - 1].compose(&whisker(v, s, mu, i - s - 1))?;
            acc = acc.add_scaled(&term, &-sign((n + s * (j + 1)) as i64))?;
        }
    }
    Ok(acc)
}

fn bracket(f: &GradedMap, source: &ChainComplex, target: &ChainComplex, n: usize) -> Result<GradedMap, AinftyError> {
    let sources = vec![source; n];
    Ok(hom_differential(f, &sources, target)?)
}

/// Residual of the order-`n` morphism identity; `n = 1` is the chain map
/// condition.
pub fn check_fn(m: &AInfinityMorphism, n: usize) -> Result<Residual, AinftyError> {
    if n < 1 || n > m.order() {
        return Err(AinftyError::Truncation { n, order: m.order() });
    }
    let sum = morphism_sum(&m.source, &m.target, &m.components, n)?;
    let d = bracket(m.component(n), m.source.complex(), m.target.complex(), n)?;
    Ok(Residual {
        n,
        map: sum.add_scaled(&d, &-Q::from_integer(1.into()))?,
    })
}

/// `(g∘f)_n = Σ_r (-1)^{η(r)} g_k(f_{r_1} ⊗ ... ⊗ f_{r_k})`, truncated to the
/// smaller of the two orders.
pub fn compose_morphisms(g: &AInfinityMorphism, f: &AInfinityMorphism) -> Result<AInfinityMorphism, AinftyError> {
    let order = g.order().min(f.order());
    let check = order.clamp(2, f.target.order().min(g.source.order()));
    if !f.target.same_up_to(&g.source, check) {
        return Err(AinftyError::Mismatch("target of f is not the source of g".into()));
    }
    let mut comps = Vec::with_capacity(order);
    for n in 1..=order {
        let src = tensor_power(f.source.space(), n)?;
        let mut acc = GradedMap::zero(src, g.target.space().clone(), n as i32 - 1);
        for k in 1..=n {
            for r in compositions(n, k) {
                let parts: Vec<&GradedMap> = r.iter().map(|&x| f.component(x)).collect();
                let term = GradedMap::compose_tensor(g.component(k), &parts)?;
                acc = acc.add_scaled(&term, &sign(eta_exponent(&r)))?;
            }
        }
        comps.push(acc);
    }
    AInfinityMorphism::new(f.source.clone(), g.target.clone(), comps)
}

/// Transports the structure of `a` along `f_1` (an isomorphism of complexes
/// onto `target`) and the given higher components: returns the unique
/// structure on `target` making `(f_1, f_2, ...)` a morphism, and the
/// morphism itself. `higher[k]` is `f_{k+2}`.
pub fn transport(
    a: &AInfinityAlgebra,
    target: ChainComplex,
    f1: GradedMap,
    higher: Vec<GradedMap>,
) -> Result<AInfinityMorphism, AinftyError> {
    let order = higher.len() + 1;
    if order > a.order() {
        return Err(AinftyError::Truncation {
            n: order,
            order: a.order(),
        });
    }
    let inv = f1
        .inverse()
        .ok_or_else(|| AinftyError::Mismatch("f_1 is not invertible".into()))?;
    if !a.complex().is_chain_map(&f1, &target) {
        return Err(AinftyError::Mismatch("f_1 is not a chain map".into()));
    }
    let mut w = AInfinityAlgebra::new(target, a.order());
    let mut comps = vec![f1];
    comps.extend(higher);
    let probe = AInfinityMorphism::new(a.clone(), w.clone(), comps)?;
    let mut comps = probe.components;
    while comps.len() < a.order() {
        let k = comps.len() + 1;
        comps.push(GradedMap::zero(
            tensor_power(a.space(), k)?,
            w.space().clone(),
            k as i32 - 1,
        ));
    }
    for n in 2..=a.order() {
        // with ν_n = 0 the identity reads (-1)^n ν_n(f_1^{⊗n}) + R = 0
        let extended = &comps[..n];
        let sum = morphism_sum(a, &w, extended, n)?;
        let d = bracket(&extended[n - 1], a.complex(), w.complex(), n)?;
        let r = sum.add_scaled(&d, &-Q::from_integer(1.into()))?;
        let invs = vec![&inv; n];
        let nu = r.compose(&GradedMap::tensor(&invs))?.scale(&sign(n as i64 + 1));
        w.set_mu(n, nu)?;
    }
    AInfinityMorphism::new(a.clone(), w, comps)
}

/// Inverse of a morphism whose `f_1` is invertible.
pub fn inverse_iso(m: &AInfinityMorphism) -> Result<AInfinityMorphism, AinftyError> {
    let inv = m
        .component(1)
        .inverse()
        .ok_or_else(|| AinftyError::Mismatch("f_1 is not invertible".into()))?;
    let order = m.order();
    let mut comps = vec![inv.clone()];
    for n in 2..=order {
        let src = tensor_power(m.target.space(), n)?;
        let mut acc = GradedMap::zero(
            tensor_power(m.source.space(), n)?,
            m.source.space().clone(),
            n as i32 - 1,
        );
        for k in 1..n {
            for r in compositions(n, k) {
                let parts: Vec<&GradedMap> = r.iter().map(|&x| m.component(x)).collect();
                let term = GradedMap::compose_tensor(&comps[k - 1], &parts)?;
                acc = acc.add_scaled(&term, &sign(eta_exponent(&r)))?;
            }
        }
        let invs = vec![&inv; n];
        let psi = acc
            .compose(&GradedMap::tensor(&invs))?
            .scale(&-Q::from_integer(1.into()));
        debug_assert!(same_space(psi.source(), &src));
        comps.push(psi);
    }
    AInfinityMorphism::new(m.target.clone(), m.source.clone(), comps)
}
