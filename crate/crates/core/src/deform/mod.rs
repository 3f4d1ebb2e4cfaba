//! Maurer–Cartan elements over artin rings, the gauge action, deformed
//! algebras and complexes, and order-by-order lifting.

mod complex;
mod lift;
mod mc;
mod over;

pub use complex::{conjugation_holds, deformed_mixed_complex, DeformedComplexReport, DeformedMixedComplex};
pub use lift::{lift_order_by_order, lift_to, LiftOutcome, ObstructionClass};
pub use mc::{
    bracket_over, differential_over, gauge_act, gauge_equivalent, mc_residual, CochainTerm, GaugeElement, MCElement,
};
pub use over::{apply_linear, deform_algebra, exp_apply, AlgebraOverArtin, Coords, DeformationReport, RVector};

use crate::hochschild::HochschildError;

#[cfg(test)]
mod tests;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeformError {
    #[error("cochain has a component outside the maximal ideal")]
    NotInMaximalIdeal,
    #[error("cochain is not normalized")]
    NotNormalized,
    #[error("expected shifted degree {expected}, found {found}")]
    WrongDegree { expected: i64, found: i64 },
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("elements live over different rings")]
    RingMismatch,
    #[error("{0} is not Maurer-Cartan")]
    NotMaurerCartan(String),
    #[error("structure fails validation: {0:?}")]
    InvalidDeformation(DeformationReport),
    #[error(transparent)]
    Hochschild(#[from] HochschildError),
}
