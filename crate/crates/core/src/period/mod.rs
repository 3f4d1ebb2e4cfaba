//! The period mapping: first-order period matrices, Torelli and duality
//! diagnostics, trivializations of deformed periodic complexes, and
//! periodically trivialized deformations.

mod first_order;
mod operator;
mod ptd;

pub use first_order::{
    check_transversality, first_order_period_matrix, griffiths_transversality_check, torelli_rank, unit_class,
    vdb_duality_check, DegenerationLabel, DualityDegree, DualityReport, PeriodBlock, PeriodClass, TorelliReport,
    TransversalityReport,
};
pub use operator::{solve_commutator, BlockKey, ChainSpace, Retract, Selection, SolveStats, Stuck, TOp};
pub use ptd::{
    period_map_artin, ptd_isomorphic, trivialize_periodic, Method, Model, Ptd, PtdComparison, PtdInvariants,
    PtdVerdict, RTOp, StepReport, Trivialization, TrivializeConfig, TrivializeOutcome,
};

use crate::cyclic::CyclicError;
use crate::deform::DeformError;
use crate::hochschild::HochschildError;


#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PeriodError {
    #[error("solution needs t-exponent {exponent}, outside the window [{lo}, {hi}]")]
    NotStabilized { exponent: i64, lo: i64, hi: i64 },
    #[error("degree {degree} is outside the computed range")]
    DegreeOutOfComputedRange { degree: i64 },
    #[error("class is not a cycle")]
    NotACycle,
    #[error("trivialization obstructed in direction {label} at t-exponent {exponent}")]
    Obstructed { label: String, exponent: i64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("cannot compare: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Hochschild(HochschildError),
    #[error(transparent)]
    Deform(#[from] DeformError),
    #[error(transparent)]
    Cyclic(#[from] CyclicError),
}
