//! Exact rational engine for colored dg operads and A-infinity algebras.
//!
//! The crate is organised in five layers:
//!
//! - [`exactlin`]: graded vector spaces, graded maps with Koszul signs,
//!   chain complexes, homology with splittings and certified linear solves.
//! - [`operadcore`]: free colored operads on trees, derivation differentials,
//!   free products, truncated homology and actions on endomorphism operads.
//! - [`ainfty`]: A-infinity algebras and morphisms, coherence residuals,
//!   composition and the bridge to operad actions.
//! - [`transfer`]: SDR data, side conditions, R_iso actions and the
//!   homotopy-invariance moves M1, M2, M3, M4 and S.
//! - [`cli`]: file formats, certificates and the batch commands used by the
//!   `shalg` binary.
//!
//! Runnable walkthroughs live in `examples/`; start with
//! `cargo run --example transfer_to_homology`.

pub mod ainfty;
pub mod cli;
pub mod exactlin;
pub mod operadcore;
pub mod random;
pub mod transfer;
