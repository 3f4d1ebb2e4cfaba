use std::sync::Arc;

use serde::Serialize;

use crate::algebra::DgAlgebra;
use crate::coeff::{ArtinLocalRing, LinearSpace};
use crate::exactlin::{solve, Rational, SparseVec};
use crate::hochschild::{cochain_basis, cochain_differential_matrix, hochschild_cohomology, HochschildError};

use super::mc::{coords, from_coords, mc_residual, MCElement};
use super::DeformError;

/// Class of the obstruction in `HH³(A) ⊗ m^n/m^{n+1}`, one coordinate vector
/// (in the basis of [`hochschild_cohomology`]) per basis element of `m^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionClass {
    pub order: usize,
    pub classes: Vec<(String, Vec<Rational>)>,
}

impl ObstructionClass {
    pub fn is_zero(&self) -> bool {
        self.classes.iter().all(|(_, v)| v.iter().all(Rational::is_zero))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftOutcome {
    Lifted(MCElement),
    Obstructed(ObstructionClass),
}

/// Lift `x_low`, MC over `R/m^n`, to an MC element over `target = R/m^{n+1}`.
///
/// The canonical set-theoretic lift is corrected in the top layer by a
/// particular solution of `∂y = −o`, where `o` is the residual there.
pub fn lift_order_by_order(
    a: &DgAlgebra,
    x_low: &MCElement,
    target: &Arc<ArtinLocalRing>,
) -> Result<LiftOutcome, DeformError> {
    if !a.is_degree_zero() {
        return Err(HochschildError::NotDegreeZero.into());
    }
    let n = x_low.ring.nilpotency_order();
    if target.nilpotency_order() != n + 1 {
        return Err(DeformError::RingMismatch);
    }
    let (low, map) = target.truncate(n);
    if low != *x_low.ring {
        return Err(DeformError::RingMismatch);
    }
    if !x_low.is_maurer_cartan(a) {
        return Err(DeformError::NotMaurerCartan("x_low".into()));
    }
    let mut inverse = vec![None; low.dim()];
    for (i, j) in map.iter().enumerate() {
        if let Some(j) = j {
            inverse[*j] = Some(i);
        }
    }
    let mut x = x_low.reindex(target, &inverse);
    let r = mc_residual(a, &x);
    debug_assert!(r.order() >= n);
    let dom = cochain_basis(a, 2);
    let cod = cochain_basis(a, 3);
    let d2 = cochain_differential_matrix(a, 2);
    let top: Vec<usize> = (0..target.dim()).filter(|&s| target.layer(s) == n).collect();
    let mut blocked = false;
    for &s in &top {
        if r.parts[s].is_zero() {
            continue;
        }
        let rhs: SparseVec = coords(&cod, &r.parts[s]).into_iter().map(|(i, v)| (i, -v)).collect();
        match solve(&d2, &rhs) {
            Some(y) => x.value.parts[s].add_scaled(&from_coords(&dom, &y), &Rational::one()),
            None => blocked = true,
        }
    }
    if !blocked {
        debug_assert!(x.is_maurer_cartan(a));
        return Ok(LiftOutcome::Lifted(x));
    }
    let hh3 = hochschild_cohomology(a, 3..=3, 4)?;
    let group = &hh3.groups[&3];
    let classes = top
        .iter()
        .map(|&s| {
            let c = group.class_of(&r.parts[s]).map_err(HochschildError::from)?;
            Ok((target.labels()[s].clone(), c))
        })
        .collect::<Result<_, DeformError>>()?;
    Ok(LiftOutcome::Obstructed(ObstructionClass { order: n, classes }))
}

/// Lift step by step through the truncations of `target`.
pub fn lift_to(a: &DgAlgebra, x: &MCElement, target: &Arc<ArtinLocalRing>) -> Result<LiftOutcome, DeformError> {
    if target.truncate(x.ring.nilpotency_order()).0 != *x.ring {
        return Err(DeformError::RingMismatch);
    }
    let mut cur = x.clone();
    for k in x.ring.nilpotency_order() + 1..=target.nilpotency_order() {
        let ring = Arc::new(target.truncate(k).0);
        match lift_order_by_order(a, &cur, &ring)? {
            LiftOutcome::Lifted(y) => cur = y,
            other => return Ok(other),
        }
    }
    // The last truncation equals the target up to the shared pointer.
    cur.ring = target.clone();
    cur.value.ring = target.clone();
    Ok(LiftOutcome::Lifted(cur))
}
