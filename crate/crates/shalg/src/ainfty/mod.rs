//! A∞-algebras and strongly homotopy morphisms on finite-dimensional
//! complexes.
//!
//! Conventions: `μ_n : V^{⊗n} → V` has degree `n - 2`, `f_n : V^{⊗n} → W` has
//! degree `n - 1`, and all tensor products of maps carry Koszul signs, so the
//! element-level sign terms `j(|a_1| + ... + |a_s|)` are produced by the
//! tensor product itself. The coherence residuals are
//!
//! ```text
//! A_n:  Σ_{i+j=n+1} Σ_s (-1)^{i+s(j+1)} μ_i(1^s ⊗ μ_j ⊗ 1^{i-s-1}) - [μ_n, ∂]
//! F_n:  Σ_k Σ_r (-1)^{k+η(r)} ν_k(f_{r_1} ⊗ ... ⊗ f_{r_k})
//!         - Σ_{i+j=n+1} Σ_s (-1)^{n+s(j+1)} f_i(1^s ⊗ μ_j ⊗ 1^{i-s-1}) - [f_n, ∂]
//! ```
//!
//! with `η(r) = Σ_{a<b} r_a (r_b + 1)` and composition
//! `(g∘f)_n = Σ_r (-1)^{η(r)} g_k(f_{r_1} ⊗ ... ⊗ f_{r_k})`.

mod algebra;
mod bridge;
mod io;
mod morphism;
mod signs;

pub use algebra::{check_an, whisker, AInfinityAlgebra, Residual};
pub use bridge::{action_from_structure, minimal_model_differential, structure_from_action, ALGEBRA_COLOR};
pub use io::{load_morphism, load_structure, AlgebraRef, MorphismFile, StructureFile};
pub(crate) use morphism::morphism_sum;
pub use morphism::{check_fn, compose_morphisms, inverse_iso, transport, underlying, AInfinityMorphism};
pub use signs::{sign_epsilon, sign_eta, sign_nu, signs_appendix};

use crate::exactlin::LinError;
use crate::operadcore::OperadError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AinftyError {
    #[error("index constraint violated: {0}")]
    Index(String),
    #[error("order {n} is outside the truncation 1..={order}")]
    Truncation { n: usize, order: usize },
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("format error: {0}")]
    Format(String),
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error(transparent)]
    Operad(#[from] OperadError),
}
