//! Colored dg operads given by generators and a derivation differential.
//!
//! Elements of the free operad are combinations of labelled planar trees
//! ([`Tree`]); the symmetric group acts on leaf labels, so every generator
//! generates a regular representation.

mod action;
mod derivation;
mod element;
mod homology;
mod iso;
mod presentation;
mod tree;

pub use action::{action_check, permutation_map, ActionCertificate, ActionEntry, OperadAction};
pub use derivation::{d_squared_check, derivation_extend, DSquaredCertificate};
pub use element::{compose_elements, graft, FreeOperadElement};
pub use homology::{
    component_basis, free_component_dims, kunneth_check, planar_trees, tree_decomposition_dims,
    tree_decomposition_from, truncated_homology, ArityDims, KunnethCertificate, TruncatedHomology,
};
pub use iso::{alpha_iso, riso_truncation_check, IsoForm, RisoTruncationReport};
pub use presentation::{
    ass_arrow_minimal, ass_minimal, builtin, compositions, decode_tree, encode_tree, eta_exponent, free_binary,
    free_product, iso_normal_forms, riso, word, ColorSet, DerivationDifferential, DifferentialRecord, GeneratorSpec,
    Presentation, PresentationFile, TermRecord,
};
pub use tree::{compose_trees, substitute_planar, Gen, Planar, Tree};

use crate::exactlin::LinError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OperadError {
    #[error("position {position} is out of range for arity {arity}")]
    Position { position: usize, arity: usize },
    #[error("profile mismatch: {0}")]
    Profile(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("generator name {0} is used twice")]
    NameClash(String),
    #[error("color error: {0}")]
    Color(String),
    #[error("infinite-dimensional component: {0}")]
    Infinite(String),
    #[error("{0} is not augmented")]
    NotAugmented(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("unknown model {0}")]
    UnknownModel(String),
    #[error(transparent)]
    Lin(#[from] LinError),
}

#[cfg(test)]
mod tests;
