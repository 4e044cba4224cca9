use std::collections::BTreeMap;

use crate::exactlin::{hom_differential, sign, tensor_power, ChainComplex, GradedMap, Space, Q};

use super::AinftyError;

/// `1^{⊗s} ⊗ m ⊗ 1^{⊗rest}` on copies of `v`.
pub fn whisker(v: &Space, s: usize, m: &GradedMap, rest: usize) -> GradedMap {
    if s == 0 && rest == 0 {
        return m.clone();
    }
    let id = GradedMap::identity(v);
    let mut parts: Vec<&GradedMap> = Vec::with_capacity(s + rest + 1);
    parts.extend(std::iter::repeat_n(&id, s));
    parts.push(m);
    parts.extend(std::iter::repeat_n(&id, rest));
    GradedMap::tensor(&parts)
}

/// A complex with operations `μ_2, ..., μ_N`; `μ_n` has degree `n - 2`.
#[derive(Clone, Debug)]
pub struct AInfinityAlgebra {
    complex: ChainComplex,
    mu: BTreeMap<usize, GradedMap>,
    order: usize,
}

impl AInfinityAlgebra {
    /// All operations zero.
    pub fn new(complex: ChainComplex, order: usize) -> Self {
        let order = order.max(2);
        let v = complex.space().clone();
        let mu = (2..=order)
            .map(|n| {
                let src = tensor_power(&v, n).expect("n >= 2");
                (n, GradedMap::zero(src, v.clone(), n as i32 - 2))
            })
            .collect();
        AInfinityAlgebra { complex, mu, order }
    }

    /// A strict algebra: only `μ_2` is nonzero.
    pub fn strict(complex: ChainComplex, mu2: GradedMap, order: usize) -> Result<Self, AinftyError> {
        let mut a = Self::new(complex, order);
        a.set_mu(2, mu2)?;
        Ok(a)
    }

    pub fn with_operations(
        complex: ChainComplex,
        ops: BTreeMap<usize, GradedMap>,
        order: usize,
    ) -> Result<Self, AinftyError> {
        let mut a = Self::new(complex, order);
        for (n, m) in ops {
            a.set_mu(n, m)?;
        }
        Ok(a)
    }

    pub fn set_mu(&mut self, n: usize, m: GradedMap) -> Result<(), AinftyError> {
        if n < 2 || n > self.order {
            return Err(AinftyError::Truncation { n, order: self.order });
        }
        let expected = &self.mu[&n];
        if !crate::exactlin::same_space(m.source(), expected.source())
            || !crate::exactlin::same_space(m.target(), expected.target())
        {
            return Err(AinftyError::Mismatch(format!("μ_{n} must map V^⊗{n} to V")));
        }
        let m = m
            .with_degree(n as i32 - 2)
            .map_err(|_| AinftyError::Mismatch(format!("μ_{n} must have degree {}", n - 2)))?;
        self.mu.insert(n, m);
        Ok(())
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn space(&self) -> &Space {
        self.complex.space()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `μ_n` for `2 <= n <= order`.
    pub fn mu(&self, n: usize) -> &GradedMap {
        &self.mu[&n]
    }

    pub fn try_mu(&self, n: usize) -> Result<&GradedMap, AinftyError> {
        self.mu.get(&n).ok_or(AinftyError::Truncation { n, order: self.order })
    }

    pub fn is_strict(&self) -> bool {
        self.mu.range(3..).all(|(_, m)| m.is_zero())
    }

    /// Same data, truncated or zero-extended to a new order.
    pub fn with_order(&self, order: usize) -> Self {
        let mut a = Self::new(self.complex.clone(), order);
        for (&n, m) in &self.mu {
            if n <= a.order {
                a.mu.insert(n, m.clone());
            }
        }
        a
    }

    /// Equal complexes and equal operations up to `order`.
    pub fn same_up_to(&self, other: &Self, order: usize) -> bool {
        self.complex == other.complex
            && (2..=order).all(|n| self.mu.get(&n).map(|m| m.equals(&other.mu[&n])).unwrap_or(false))
    }

    /// `Σ_{i+j=n+1} Σ_s (-1)^{i+s(j+1)} μ_i(1^s ⊗ μ_j ⊗ 1^{i-s-1})`.
    pub fn stasheff_sum(&self, n: usize) -> Result<GradedMap, AinftyError> {
        if n < 2 || n > self.order {
            return Err(AinftyError::Truncation { n, order: self.order });
        }
        let v = self.space();
        let src = tensor_power(v, n)?;
        let mut acc = GradedMap::zero(src, v.clone(), n as i32 - 3);
        for i in 2..n {
            let j = n + 1 - i;
            for s in 0..i {
                let inner = whisker(v, s, &self.mu[&j], i - s - 1);
                let term = self.mu[&i].compose(&inner)?;
                acc = acc.add_scaled(&term, &sign((i + s * (j + 1)) as i64))?;
            }
        }
        Ok(acc)
    }
}

/// A coherence residual; zero exactly when the identity holds.
#[derive(Clone, Debug)]
pub struct Residual {
    pub n: usize,
    pub map: GradedMap,
}

impl Residual {
    pub fn pass(&self) -> bool {
        self.map.is_zero()
    }
}

/// Residual of the order-`n` Stasheff identity.
pub fn check_an(a: &AInfinityAlgebra, n: usize) -> Result<Residual, AinftyError> {
    let sum = a.stasheff_sum(n)?;
    let c = a.complex();
    let sources = vec![c; n];
    let d = hom_differential(a.mu(n), &sources, c)?;
    let map = sum.add_scaled(&d, &-Q::from_integer(1.into()))?;
    Ok(Residual { n, map })
}
