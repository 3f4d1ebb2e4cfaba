//! Normalized Hochschild chains and cochains, the Hochschild boundary,
//! Connes' operator and homology computations.
//!
//! Sign conventions follow the Koszul rule with the suspension `s` of
//! degree −1 and `s^{⊗n} = (s⊗1⊗…⊗1)∘…∘(1⊗…⊗1⊗s)`. With these choices the
//! structure maps of a dg algebra are `b₁[a] = s(da)` and
//! `b₂[a|c] = (−1)^{|a|} s(ac)`.

mod chain;
mod homology;

use crate::algebra::DgAlgebra;
use crate::calculus::{gerstenhaber_bracket, lie_action};
use crate::coeff::{bilinear, RingTensor};
use crate::exactlin::{LinAlgError, Rational};

pub use chain::{chain_basis, cochain_basis, shifted_degree, word, Chain, Cochain, CochainKey, RChain, RCochain, Word};
pub use homology::{
    boundary_matrix, cochain_differential_matrix, connes_matrix, hochschild_cohomology, hochschild_homology,
    ChainHomology, CochainHomology, GradedDims, HomologyGroup,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HochschildError {
    #[error("chain term has the unit in a bar slot")]
    UnitInBar,
    #[error("chain word is empty")]
    EmptyWord,
    #[error("bar weight {weight} exceeds the bound {bound}")]
    BarBoundExceeded { weight: usize, bound: usize },
    #[error("arity {arity} exceeds the bound {bound}")]
    ArityBoundExceeded { arity: usize, bound: usize },
    #[error("homology computations need an algebra concentrated in degree 0")]
    NotDegreeZero,
    #[error(transparent)]
    Linear(#[from] LinAlgError),
}

pub(crate) fn sign(e: i64) -> Rational {
    Rational::sign(e)
}

/// `μ_i = |a₀| − 1 + Σ_{r≤i} (|a_r| − 1)` for `i = 0..=n`.
pub(crate) fn mu_prefix(a: &DgAlgebra, w: &[u16]) -> Vec<i64> {
    let mut out = Vec::with_capacity(w.len());
    let mut acc = a.degree(w[0] as usize) as i64 - 1;
    out.push(acc);
    for &x in &w[1..] {
        acc += a.degree(x as usize) as i64 - 1;
        out.push(acc);
    }
    out
}

/// The structure cochain `b = b₁ + b₂` of a dg algebra (not normalized: it
/// has entries with unit inputs).
pub fn structure_cochain(a: &DgAlgebra) -> Cochain {
    let mut b = Cochain::new();
    let n = a.dim();
    for i in 0..n {
        for (k, c) in a.differential(i) {
            b.add_term(word(&[i]), *k as u16, c);
        }
        for j in 0..n {
            let s = sign(a.degree(i) as i64);
            for (k, c) in a.product(i, j) {
                b.add_term(word(&[i, j]), *k as u16, &(&s * c));
            }
        }
    }
    b
}

fn splice(w: &[u16], from: usize, to: usize, mid: &[u16]) -> Word {
    let mut out: Word = w[..from].iter().copied().collect();
    out.extend(mid.iter().copied());
    out.extend(w[to..].iter().copied());
    out
}

/// The Hochschild boundary, written directly from the product and the
/// differential: interior terms apply `b` to consecutive bar entries, wrap
/// terms apply it to a cyclic window containing `a₀` and produce the new `a₀`.
pub fn hochschild_boundary(a: &DgAlgebra, c: &Chain) -> Chain {
    let mut out = Chain::new();
    for (w, coef) in c.iter() {
        let n = w.len() - 1;
        let mu = mu_prefix(a, w);
        let deg = |i: u16| a.degree(i as usize) as i64;
        // Interior b₁ on a_j.
        for j in 1..=n {
            let s = coef * &sign(mu[j - 1]);
            for (k, v) in a.differential(w[j] as usize) {
                out.add_term(splice(w, j, j + 1, &[*k as u16]), &(&s * v));
            }
        }
        // Interior b₂ on (a_j, a_{j+1}).
        for j in 1..n {
            let s = coef * &sign(mu[j - 1] + deg(w[j]));
            for (k, v) in a.product(w[j] as usize, w[j + 1] as usize) {
                out.add_term(splice(w, j, j + 2, &[*k as u16]), &(&s * v));
            }
        }
        // Wrap b₁ on a₀ alone.
        for (k, v) in a.differential(w[0] as usize) {
            out.add_term(splice(w, 0, 1, &[*k as u16]), &(coef * v));
        }
        if n >= 1 {
            // Window (a₀, a₁): sign exponent μ_n·0.
            let s = coef * &sign(deg(w[0]));
            for (k, v) in a.product(w[0] as usize, w[1] as usize) {
                out.add_term(splice(w, 0, 2, &[*k as u16]), &(&s * v));
            }
            // Window (a_n, a₀): sign exponent μ_{n−1}(μ_n − μ_{n−1}).
            let e = mu[n - 1] * (mu[n] - mu[n - 1]) + deg(w[n]);
            let s = coef * &sign(e);
            for (k, v) in a.product(w[n] as usize, w[0] as usize) {
                let mut nw: Word = Word::new();
                nw.push(*k as u16);
                nw.extend(w[1..n].iter().copied());
                out.add_term(nw, &(&s * v));
            }
        }
    }
    out
}

/// Connes' operator: the signed sum of cyclic rotations with `1` in front.
pub fn connes_b(a: &DgAlgebra, c: &Chain) -> Chain {
    let mut out = Chain::new();
    for (w, coef) in c.iter() {
        if w[0] == 0 {
            continue;
        }
        let n = w.len() - 1;
        let mu = mu_prefix(a, w);
        for i in 1..=n + 1 {
            let e = mu[i - 1] * (mu[n] - mu[i - 1]);
            let mut nw: Word = Word::new();
            nw.push(0);
            nw.extend(w[i..].iter().copied());
            nw.push(w[0]);
            nw.extend(w[1..i].iter().copied());
            out.add_term(nw, &(coef * &sign(e)));
        }
    }
    out
}

/// Connes' operator with an explicit bar bound on the output.
pub fn connes_b_bounded(a: &DgAlgebra, c: &Chain, bar_bound: usize) -> Result<Chain, HochschildError> {
    if let Some(w) = c.max_weight() {
        if w + 1 > bar_bound {
            return Err(HochschildError::BarBoundExceeded { weight: w + 1, bound: bar_bound });
        }
    }
    Ok(connes_b(a, c))
}

/// `∂P = [b, P]`.
pub fn cochain_differential(a: &DgAlgebra, p: &Cochain) -> Cochain {
    gerstenhaber_bracket(a, &structure_cochain(a), p)
}

/// `∂P` with an arity bound on the result.
pub fn cochain_differential_bounded(a: &DgAlgebra, p: &Cochain, arity_bound: usize) -> Result<Cochain, HochschildError> {
    let d = cochain_differential(a, p);
    match d.max_arity() {
        Some(l) if l > arity_bound => Err(HochschildError::ArityBoundExceeded { arity: l, bound: arity_bound }),
        _ => Ok(d),
    }
}

/// Hochschild boundary of a chain over an artin ring for the deformed
/// structure `b ⊗ 1 + x`, i.e. `L_{b⊗1+x}`.
pub fn deformed_boundary(a: &DgAlgebra, structure: &RCochain, c: &RChain) -> RChain {
    bilinear(structure, c, |p, ch| lie_action(a, p, ch))
}

/// `b ⊗ 1` as a cochain over `R`.
pub fn structure_over(a: &DgAlgebra, ring: &std::sync::Arc<crate::coeff::ArtinLocalRing>) -> RCochain {
    RingTensor::pure(ring, structure_cochain(a), 0)
}
