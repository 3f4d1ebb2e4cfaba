use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::DgAlgebra;
use crate::calculus::gerstenhaber_bracket;
use crate::coeff::{bilinear, ArtinLocalRing, LinearSpace, RingTensor};
use crate::exactlin::{solve, Rational, SparseVec};
use crate::hochschild::{cochain_basis, cochain_differential, cochain_differential_matrix};
use crate::hochschild::{Cochain, CochainKey, RCochain};

use super::DeformError;

/// A cochain with coefficients in the maximal ideal of an artin ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MCElement {
    pub ring: Arc<ArtinLocalRing>,
    pub value: RCochain,
}

/// A degree-0 cochain (shifted) with coefficients in the maximal ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeElement {
    pub ring: Arc<ArtinLocalRing>,
    pub value: RCochain,
}

/// One coefficient of a serialized cochain over a ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainTerm {
    pub ring: String,
    pub inputs: Vec<String>,
    pub output: String,
    pub value: Rational,
}

fn check_in_ideal(a: &DgAlgebra, v: &RCochain, degree: i64) -> Result<(), DeformError> {
    if !v.parts[0].is_zero() {
        return Err(DeformError::NotInMaximalIdeal);
    }
    for p in &v.parts {
        if !p.is_normalized() {
            return Err(DeformError::NotNormalized);
        }
        if let Some(d) = p.shifted_degrees(a).into_iter().find(|&d| d != degree) {
            return Err(DeformError::WrongDegree { expected: degree, found: d });
        }
    }
    Ok(())
}

fn to_terms(a: &DgAlgebra, v: &RCochain) -> Vec<CochainTerm> {
    let mut out = Vec::new();
    for (s, p) in v.parts.iter().enumerate() {
        for (w, o, x) in p.iter() {
            out.push(CochainTerm {
                ring: v.ring.labels()[s].clone(),
                inputs: w.iter().map(|&i| a.label(i as usize).to_string()).collect(),
                output: a.label(o as usize).to_string(),
                value: x.clone(),
            });
        }
    }
    out
}

fn from_terms(a: &DgAlgebra, ring: &Arc<ArtinLocalRing>, terms: &[CochainTerm]) -> Result<RCochain, DeformError> {
    let mut v = RCochain::zero(ring);
    let lookup = |l: &str| a.label_index(l).ok_or_else(|| DeformError::UnknownLabel(l.to_string()));
    for t in terms {
        let s = ring.label_index(&t.ring).ok_or_else(|| DeformError::UnknownLabel(t.ring.clone()))?;
        let inputs = t.inputs.iter().map(|l| lookup(l).map(|i| i as u16)).collect::<Result<_, _>>()?;
        v.parts[s].add_term(inputs, lookup(&t.output)? as u16, &t.value);
    }
    Ok(v)
}

impl MCElement {
    /// Wrap a cochain of shifted degree 1 with coefficients in `m_R`. The
    /// Maurer–Cartan equation itself is not checked here.
    pub fn new(a: &DgAlgebra, value: RCochain) -> Result<Self, DeformError> {
        check_in_ideal(a, &value, 1)?;
        Ok(MCElement { ring: value.ring.clone(), value })
    }

    pub fn zero(ring: &Arc<ArtinLocalRing>) -> Self {
        MCElement { ring: ring.clone(), value: RCochain::zero(ring) }
    }

    /// `p ⊗ r` for a single cochain and ring element index.
    pub fn pure(a: &DgAlgebra, ring: &Arc<ArtinLocalRing>, p: Cochain, r: usize) -> Result<Self, DeformError> {
        Self::new(a, RingTensor::pure(ring, p, r))
    }

    pub fn is_maurer_cartan(&self, a: &DgAlgebra) -> bool {
        mc_residual(a, self).is_zero()
    }

    pub fn to_terms(&self, a: &DgAlgebra) -> Vec<CochainTerm> {
        to_terms(a, &self.value)
    }

    pub fn from_terms(a: &DgAlgebra, ring: &Arc<ArtinLocalRing>, terms: &[CochainTerm]) -> Result<Self, DeformError> {
        Self::new(a, from_terms(a, ring, terms)?)
    }

    /// Push forward along a ring map given on basis indices.
    pub fn reindex(&self, target: &Arc<ArtinLocalRing>, map: &[Option<usize>]) -> Self {
        MCElement { ring: target.clone(), value: self.value.reindex(target, map) }
    }
}

impl GaugeElement {
    pub fn new(a: &DgAlgebra, value: RCochain) -> Result<Self, DeformError> {
        check_in_ideal(a, &value, 0)?;
        Ok(GaugeElement { ring: value.ring.clone(), value })
    }

    pub fn zero(ring: &Arc<ArtinLocalRing>) -> Self {
        GaugeElement { ring: ring.clone(), value: RCochain::zero(ring) }
    }

    pub fn to_terms(&self, a: &DgAlgebra) -> Vec<CochainTerm> {
        to_terms(a, &self.value)
    }

    pub fn from_terms(a: &DgAlgebra, ring: &Arc<ArtinLocalRing>, terms: &[CochainTerm]) -> Result<Self, DeformError> {
        Self::new(a, from_terms(a, ring, terms)?)
    }
}

/// `[x, y]` over the ring.
pub fn bracket_over(a: &DgAlgebra, x: &RCochain, y: &RCochain) -> RCochain {
    bilinear(x, y, |p, q| gerstenhaber_bracket(a, p, q))
}

/// `∂x` over the ring.
pub fn differential_over(a: &DgAlgebra, x: &RCochain) -> RCochain {
    x.map(|p| cochain_differential(a, p))
}

/// `∂x + ½[x, x]`; zero exactly when `b + x` squares to zero.
pub fn mc_residual(a: &DgAlgebra, x: &MCElement) -> RCochain {
    let mut r = differential_over(a, &x.value);
    r.add_scaled(&bracket_over(a, &x.value, &x.value), &Rational::new(1, 2));
    r
}

/// `Σ_k c_k ad(α)^k (y)` until the terms vanish, with `c_k` from `coef`.
fn ad_series(a: &DgAlgebra, alpha: &RCochain, y: &RCochain, coef: impl Fn(usize) -> Rational) -> RCochain {
    let mut acc = y.scaled(&coef(0));
    let mut term = y.clone();
    let mut k = 1;
    while !term.is_zero() {
        term = bracket_over(a, alpha, &term);
        acc.add_scaled(&term, &coef(k));
        k += 1;
    }
    acc
}

/// `e^α • x = e^{ad α}(x) − Φ(ad α)(∂α)` with `Φ(z) = (e^z − 1)/z`.
pub fn gauge_act(a: &DgAlgebra, alpha: &GaugeElement, x: &MCElement) -> Result<MCElement, DeformError> {
    if alpha.ring != x.ring {
        return Err(DeformError::RingMismatch);
    }
    let mut out = ad_series(a, &alpha.value, &x.value, |k| Rational::inv_factorial(k as u32));
    let phi = ad_series(a, &alpha.value, &differential_over(a, &alpha.value), |k| Rational::inv_factorial(k as u32 + 1));
    out.add_scaled(&phi, &-Rational::one());
    Ok(MCElement { ring: x.ring.clone(), value: out })
}

/// Coordinates of a cochain of fixed arity in the normalized basis.
pub(crate) fn coords(basis: &[CochainKey], p: &Cochain) -> SparseVec {
    let mut v: SparseVec = p
        .iter()
        .map(|(w, o, x)| {
            let k = CochainKey { inputs: w.clone(), output: o };
            (basis.binary_search(&k).expect("normalized cochain of the expected arity"), x.clone())
        })
        .collect();
    v.sort_by_key(|(i, _)| *i);
    v
}

pub(crate) fn from_coords(basis: &[CochainKey], v: &SparseVec) -> Cochain {
    let mut p = Cochain::new();
    for (i, x) in v {
        p.add_term(basis[*i].inputs.clone(), basis[*i].output, x);
    }
    p
}

/// Find `α` with `e^α • x = y`, one layer of the m-adic filtration at a
/// time. At layer `k` the correction `β ∈ m^k` enters only through `−∂β`,
/// so each step is a linear solve. A failing step returns `None`; earlier
/// layers are solved with a fixed particular solution, so `None` is a
/// certificate only when the base is square-zero.
pub fn gauge_equivalent(a: &DgAlgebra, x: &MCElement, y: &MCElement) -> Result<Option<GaugeElement>, DeformError> {
    if x.ring != y.ring {
        return Err(DeformError::RingMismatch);
    }
    for (name, z) in [("x", x), ("y", y)] {
        if !z.is_maurer_cartan(a) {
            return Err(DeformError::NotMaurerCartan(name.into()));
        }
    }
    if !a.is_degree_zero() {
        return Err(crate::hochschild::HochschildError::NotDegreeZero.into());
    }
    let ring = &x.ring;
    let dom = cochain_basis(a, 1);
    let cod = cochain_basis(a, 2);
    let d1 = cochain_differential_matrix(a, 1);
    let mut alpha = GaugeElement::zero(ring);
    for k in 1..ring.nilpotency_order() {
        let mut r = y.value.clone();
        r.add_scaled(&gauge_act(a, &alpha, x)?.value, &-Rational::one());
        debug_assert!(r.order() >= k, "lower layers already solved");
        for s in (0..ring.dim()).filter(|&s| ring.layer(s) == k) {
            if r.parts[s].is_zero() {
                continue;
            }
            let rhs: SparseVec = coords(&cod, &r.parts[s]).into_iter().map(|(i, v)| (i, -v)).collect();
            match solve(&d1, &rhs) {
                Some(beta) => alpha.value.parts[s].add_scaled(&from_coords(&dom, &beta), &Rational::one()),
                None => return Ok(None),
            }
        }
    }
    let check = gauge_act(a, &alpha, x)?;
    Ok((check == *y).then_some(alpha))
}
