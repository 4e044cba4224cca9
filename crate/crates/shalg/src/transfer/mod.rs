//! Strong deformation retracts, their side conditions, zero extensions to
//! R_iso actions, and the constructive moves: transfer, one-sided transfer,
//! perturbation, inversion and chained composition.

mod bar;
mod equations;
mod moves;
mod report;
mod riso;
mod sdr;

pub use bar::p_infinity;
pub use equations::MapEquations;
pub use moves::{chain_m4, invert_m3, perturb_m2, transfer_m1, transfer_s, OneSidedData, Transferred};
pub use report::{first_entry, verify_algebra, verify_morphism, CheckLine, MoveReport, Status, ANCHOR_AN, ANCHOR_FN};
pub use riso::{riso_action, riso_zero_extension, RIsoAction, RisoExtension};
pub use sdr::{
    check_side_conditions, load_sdr, normalize_side_conditions, sdr_from_equivalence, EquivalenceSplitting,
    HomotopyEquivalence, SDRData, SdrFile, SideConditions,
};

use crate::ainfty::AinftyError;
use crate::exactlin::{InconsistencyCertificate, LinError};
use crate::operadcore::OperadError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransferError {
    #[error("invalid data: {0}")]
    Invalid(String),
    #[error("side conditions violated: {0}")]
    SideConditions(String),
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("internal error: an equation that must be solvable was inconsistent while computing {stage}")]
    Inconsistent {
        stage: String,
        certificate: InconsistencyCertificate,
    },
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error(transparent)]
    Ainfty(#[from] AinftyError),
    #[error(transparent)]
    Operad(#[from] OperadError),
}

#[cfg(test)]
mod tests;
