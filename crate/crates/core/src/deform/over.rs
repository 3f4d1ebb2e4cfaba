//! Algebras over an artin ring given by a structure cochain `b ⊗ 1 + x`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::DgAlgebra;
use crate::coeff::{bilinear, ArtinLocalRing, LinearSpace, RingTensor};
use crate::exactlin::{axpy, Rational, SparseVec};
use crate::hochschild::{structure_over, Cochain, RCochain};

use super::mc::{bracket_over, GaugeElement, MCElement};
use super::DeformError;

/// Coordinates in the basis of the underlying algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Coords(pub SparseVec);

impl LinearSpace for Coords {
    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        if !c.is_zero() {
            self.0 = axpy(&self.0, c, &other.0);
        }
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

/// An element of `A ⊗ R`.
pub type RVector = RingTensor<Coords>;

/// `(A ⊗ R, b ⊗ 1 + x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraOverArtin {
    pub base: DgAlgebra,
    pub ring: Arc<ArtinLocalRing>,
    pub structure: RCochain,
}

/// Outcome of validating a structure cochain over a ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeformationReport {
    /// `[S, S] = 0`, i.e. the coderivation squares to zero.
    pub square_zero: bool,
    /// `S − b⊗1` vanishes on unit inputs, so the unit stays strict.
    pub unital: bool,
    /// `S mod m_R = b`.
    pub reduces_to_base: bool,
}

impl DeformationReport {
    pub fn is_valid(&self) -> bool {
        self.square_zero && self.unital && self.reduces_to_base
    }
}

/// `b ⊗ 1 + x`; requires `x` to be Maurer–Cartan.
pub fn deform_algebra(a: &DgAlgebra, x: &MCElement) -> Result<AlgebraOverArtin, DeformError> {
    if !x.is_maurer_cartan(a) {
        return Err(DeformError::NotMaurerCartan("x".into()));
    }
    let mut s = structure_over(a, &x.ring);
    s.add_scaled(&x.value, &Rational::one());
    Ok(AlgebraOverArtin { base: a.clone(), ring: x.ring.clone(), structure: s })
}

/// Apply a cochain of arity `inputs.len()` to basis coordinates, multilinearly.
fn evaluate(p: &Cochain, args: &[&SparseVec]) -> SparseVec {
    let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
    let mut idx = vec![0usize; args.len()];
    if args.iter().any(|v| v.is_empty()) {
        return Vec::new();
    }
    loop {
        let inputs: Vec<u16> = idx.iter().zip(args).map(|(&i, v)| v[i].0 as u16).collect();
        if let Some(outs) = p.value(&inputs) {
            let c: Rational = idx.iter().zip(args).fold(Rational::one(), |acc, (&i, v)| &acc * &v[i].1);
            for (&o, x) in outs {
                *out.entry(o as usize).or_default() += &(&c * x);
            }
        }
        // Odometer over the argument supports.
        let mut pos = args.len();
        loop {
            if pos == 0 {
                return out.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < args[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Apply an `R`-linear combination of arity-1 cochains to a vector.
pub fn apply_linear(g: &RCochain, u: &RVector) -> RVector {
    bilinear(g, u, |p, v| Coords(evaluate(&p.arity_part(1), &[&v.0])))
}

/// `e^α` applied to a vector.
pub fn exp_apply(alpha: &GaugeElement, u: &RVector) -> RVector {
    let mut acc = u.clone();
    let mut term = u.clone();
    let mut k = 1i64;
    while !term.is_zero() {
        term = apply_linear(&alpha.value, &term).scaled(&Rational::new(1, k));
        acc.add_scaled(&term, &Rational::one());
        k += 1;
    }
    acc
}

impl AlgebraOverArtin {
    pub fn basis_vector(&self, i: usize) -> RVector {
        RingTensor::pure(&self.ring, Coords(vec![(i, Rational::one())]), 0)
    }

    /// The deformed product. Degree-0 algebras only need the arity-2 part of
    /// the structure, where `b₂[a|c] = ac`.
    pub fn multiply(&self, u: &RVector, v: &RVector) -> RVector {
        let mut out = RVector::zero(&self.ring);
        for (s, part) in self.structure.parts.iter().enumerate() {
            let mu = part.arity_part(2);
            if mu.is_empty() {
                continue;
            }
            let uv = bilinear(u, v, |p, q| Coords(evaluate(&mu, &[&p.0, &q.0])));
            out.add_scaled(&uv.times(&self.ring.basis_element(s)), &Rational::one());
        }
        out
    }

    /// Products of all pairs of basis vectors.
    pub fn structure_constants(&self) -> BTreeMap<(usize, usize), RVector> {
        let n = self.base.dim();
        let mut out = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                out.insert((i, j), self.multiply(&self.basis_vector(i), &self.basis_vector(j)));
            }
        }
        out
    }

    /// Structure constants of the algebra transported along `g = e^α`:
    /// `(u, v) ↦ g(g⁻¹u · g⁻¹v)`.
    pub fn conjugate_constants(&self, alpha: &GaugeElement) -> BTreeMap<(usize, usize), RVector> {
        let neg = GaugeElement { ring: alpha.ring.clone(), value: alpha.value.scaled(&-Rational::one()) };
        let n = self.base.dim();
        let inv: Vec<RVector> = (0..n).map(|i| exp_apply(&neg, &self.basis_vector(i))).collect();
        let mut out = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                out.insert((i, j), exp_apply(alpha, &self.multiply(&inv[i], &inv[j])));
            }
        }
        out
    }

    /// Check the defining properties of a (curved) deformation.
    pub fn validate(&self) -> DeformationReport {
        let b = structure_over(&self.base, &self.ring);
        let mut x = self.structure.clone();
        x.add_scaled(&b, &-Rational::one());
        DeformationReport {
            square_zero: bracket_over(&self.base, &self.structure, &self.structure).is_zero(),
            unital: x.parts.iter().all(Cochain::is_normalized),
            reduces_to_base: x.parts[0].is_zero(),
        }
    }

    /// The Maurer–Cartan element `S − b ⊗ 1` of a validated deformation.
    pub fn to_mc(&self) -> Result<MCElement, DeformError> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(DeformError::InvalidDeformation(report));
        }
        let mut x = self.structure.clone();
        x.add_scaled(&structure_over(&self.base, &self.ring), &-Rational::one());
        MCElement::new(&self.base, x)
    }

    /// Build from explicit structure constants `e_i e_j = Σ c_{ij}^k e_k`
    /// with coefficients in `R`, as read from a file.
    pub fn from_constants(
        base: &DgAlgebra,
        ring: &Arc<ArtinLocalRing>,
        constants: &[(usize, usize, usize, Vec<Rational>)],
    ) -> Result<Self, DeformError> {
        if !base.is_degree_zero() {
            return Err(crate::hochschild::HochschildError::NotDegreeZero.into());
        }
        let mut s = structure_over(base, ring);
        for p in &mut s.parts {
            *p = p.arity_part(1);
        }
        for (i, j, k, coeffs) in constants {
            if coeffs.len() != ring.dim() {
                return Err(DeformError::RingMismatch);
            }
            for (r, c) in coeffs.iter().enumerate() {
                s.parts[r].add_term([*i as u16, *j as u16].into_iter().collect(), *k as u16, c);
            }
        }
        Ok(AlgebraOverArtin { base: base.clone(), ring: ring.clone(), structure: s })
    }
}
