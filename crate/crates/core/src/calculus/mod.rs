//! The chain-level calculus: cup product, Gerstenhaber bracket,
//! contraction, Lie action and Connes' operator, plus axiom verifiers.

mod defect;
mod ops;
mod verify;

pub use defect::{calculus_defect, DefectBounds};
pub use ops::{brace, contraction, cup_product, gerstenhaber_bracket, lie_action, split_by_degree};
pub use verify::{verify_lie_dagger, verify_lie_dagger_with, AxiomReport, AxiomStatus, LieActionFn, VerifyBounds};
