use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::DgAlgebra;
use crate::calculus::lie_action;
use crate::coeff::{ArtinLocalRing, RingTensor};
use crate::exactlin::Rational;
use crate::hochschild::{chain_basis, connes_b, deformed_boundary, structure_over, Chain, RChain, RCochain};

use super::mc::{gauge_act, GaugeElement, MCElement};
use super::DeformError;

/// `(C_•(A) ⊗ R, ∂ + L_x, B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformedMixedComplex {
    pub base: DgAlgebra,
    pub ring: Arc<ArtinLocalRing>,
    pub x: MCElement,
    structure: RCochain,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeformedComplexReport {
    pub max_weight: usize,
    pub square_zero: bool,
    /// `B(∂+L_x) + (∂+L_x)B = 0`.
    pub mixed: bool,
    /// Mod `m_R` the differential is the Hochschild boundary.
    pub reduces_to_base: bool,
}

impl DeformedComplexReport {
    pub fn holds(&self) -> bool {
        self.square_zero && self.mixed && self.reduces_to_base
    }
}

pub fn deformed_mixed_complex(a: &DgAlgebra, x: &MCElement) -> Result<DeformedMixedComplex, DeformError> {
    if !x.is_maurer_cartan(a) {
        return Err(DeformError::NotMaurerCartan("x".into()));
    }
    let mut structure = structure_over(a, &x.ring);
    structure.add_scaled(&x.value, &Rational::one());
    Ok(DeformedMixedComplex { base: a.clone(), ring: x.ring.clone(), x: x.clone(), structure })
}

fn basis_chains(a: &DgAlgebra, max_weight: usize) -> Vec<Chain> {
    (0..=max_weight).flat_map(|n| chain_basis(a, n)).map(Chain::basis).collect()
}

impl DeformedMixedComplex {
    /// `(∂ + L_x) c`.
    pub fn boundary(&self, c: &RChain) -> RChain {
        deformed_boundary(&self.base, &self.structure, c)
    }

    pub fn connes(&self, c: &RChain) -> RChain {
        c.map(|ch| connes_b(&self.base, ch))
    }

    pub fn lift_chain(&self, c: Chain) -> RChain {
        RingTensor::pure(&self.ring, c, 0)
    }

    /// Chain-level checks on all basis chains of weight at most `max_weight`.
    pub fn check(&self, max_weight: usize) -> DeformedComplexReport {
        let chains = basis_chains(&self.base, max_weight);
        let (sq, mixed, red) = chains
            .par_iter()
            .map(|c| {
                let c = self.lift_chain(c.clone());
                let dc = self.boundary(&c);
                let sq = self.boundary(&dc).is_zero();
                let mut anti = self.connes(&dc);
                anti.add_scaled(&self.boundary(&self.connes(&c)), &Rational::one());
                let plain = crate::hochschild::hochschild_boundary(&self.base, &c.parts[0]);
                (sq, anti.is_zero(), dc.parts[0] == plain)
            })
            .reduce(|| (true, true, true), |x, y| (x.0 && y.0, x.1 && y.1, x.2 && y.2));
        DeformedComplexReport { max_weight, square_zero: sq, mixed, reduces_to_base: red }
    }

    /// `e^{L_α} c`.
    pub fn exp_lie(&self, alpha: &GaugeElement, c: &RChain) -> RChain {
        exp_lie(&self.base, alpha, c)
    }
}

/// `e^{L_α} c`; terminates because `α` has coefficients in `m_R`.
pub(crate) fn exp_lie(a: &DgAlgebra, alpha: &GaugeElement, c: &RChain) -> RChain {
    let mut acc = c.clone();
    let mut term = c.clone();
    let mut k = 1i64;
    while !term.is_zero() {
        term = crate::coeff::bilinear(&alpha.value, &term, |p, ch| lie_action(a, p, ch)).scaled(&Rational::new(1, k));
        acc.add_scaled(&term, &Rational::one());
        k += 1;
    }
    acc
}

/// Check `(∂ + L_y) e^{L_α} = e^{L_α} (∂ + L_x)` with `y = e^α • x` on basis
/// chains up to `max_weight`.
pub fn conjugation_holds(
    a: &DgAlgebra,
    alpha: &GaugeElement,
    x: &MCElement,
    max_weight: usize,
) -> Result<bool, DeformError> {
    let cx = deformed_mixed_complex(a, x)?;
    let cy = deformed_mixed_complex(a, &gauge_act(a, alpha, x)?)?;
    Ok(basis_chains(a, max_weight).par_iter().all(|c| {
        let c = cx.lift_chain(c.clone());
        cy.boundary(&cx.exp_lie(alpha, &c)) == cx.exp_lie(alpha, &cx.boundary(&c))
    }))
}
