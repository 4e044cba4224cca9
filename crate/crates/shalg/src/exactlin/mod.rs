//! Exact rational graded linear algebra.
//!
//! Grading is homological: differentials have degree -1 and the Koszul rule
//! `(f ⊗ g)(x ⊗ y) = (-1)^{|g||x|} f(x) ⊗ g(y)` is applied everywhere a
//! tensor product of maps is evaluated.

mod complex;
mod error;
mod io;
mod linalg;
mod map;
mod rational;
mod space;

pub use complex::{
    hom_differential, homology_with_splitting, solve_linear, tensor_differential, ChainComplex, HomEquation,
    HomSolution, HomologyData,
};
pub use error::LinError;
pub use io::{blocks_of, map_from_blocks, ComplexFile, ComplexRef, MapBlocks, QText};
pub use linalg::{InconsistencyCertificate, LinearOutcome, LinearSystem, Matrix};
pub use map::{GradedMap, SVec};
pub use rational::{format_q, parse_q, q, qr, sign, Q};
pub use space::{factor_list, same_space, tensor_power, tensor_product, BasisElement, GradedVectorSpace, Space};
