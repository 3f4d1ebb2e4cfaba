use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::DgAlgebra;
use crate::coeff::LinearSpace;
use crate::exactlin::Rational;
use crate::hochschild::{chain_basis, cochain_basis, connes_b, hochschild_boundary, shifted_degree, structure_cochain};
use crate::hochschild::{Chain, Cochain, CochainKey, Word};

use super::ops::{gerstenhaber_bracket, lie_action};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AxiomStatus {
    HoldsExactly,
    HoldsOnHomology,
    Fails,
}

impl std::fmt::Display for AxiomStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            AxiomStatus::HoldsExactly => "holds exactly",
            AxiomStatus::HoldsOnHomology => "holds on homology",
            AxiomStatus::Fails => "fails",
        })
    }
}

/// Outcome of checking one identity. A failing report always has a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub axiom: String,
    pub status: AxiomStatus,
    /// Number of (operator, chain) instances evaluated.
    pub checked: usize,
    pub witness: Option<String>,
}

impl AxiomReport {
    pub(crate) fn new(axiom: &str, checked: usize, failure: Option<String>) -> Self {
        let status = if failure.is_some() { AxiomStatus::Fails } else { AxiomStatus::HoldsExactly };
        AxiomReport { axiom: axiom.into(), status, checked, witness: failure }
    }

    pub fn holds(&self) -> bool {
        self.status != AxiomStatus::Fails
    }
}

/// Bounds for chain-level verification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyBounds {
    pub arity: usize,
    pub weight: usize,
}

impl Default for VerifyBounds {
    fn default() -> Self {
        VerifyBounds { arity: 3, weight: 4 }
    }
}

/// The Lie action as a replaceable function, so that verifiers can be
/// exercised against deliberately broken implementations.
pub type LieActionFn = dyn Fn(&DgAlgebra, &Cochain, &Chain) -> Chain + Sync;

/// Check the three identities making `L` a map of dg Lie algebras into
/// endomorphisms commuting with `B`, plus `L_b = ∂`:
///
/// 1. `L_{[P,Q]} = L_P L_Q − (−1)^{|P||Q|} L_Q L_P`
/// 2. `∂ L_P − (−1)^{|P|} L_P ∂ = L_{∂P}`
/// 3. `B L_P − (−1)^{|P|} L_P B = 0`
///
/// with `|P|` the shifted degree. Every pair of basis cochains of arity up to
/// `bounds.arity` is tested on every basis chain of weight up to `bounds.weight`.
pub fn verify_lie_dagger(a: &DgAlgebra, bounds: VerifyBounds) -> Vec<AxiomReport> {
    verify_lie_dagger_with(a, bounds, &lie_action)
}

pub fn verify_lie_dagger_with(a: &DgAlgebra, bounds: VerifyBounds, action: &LieActionFn) -> Vec<AxiomReport> {
    let cochains: Vec<(CochainKey, Cochain, i64)> = (0..=bounds.arity)
        .flat_map(|l| cochain_basis(a, l))
        .map(|k| {
            let sd = shifted_degree(a, &k.inputs, k.output);
            let p = Cochain::basis(&k);
            (k, p, sd)
        })
        .collect();
    let chains: Vec<Word> = (0..=bounds.weight).flat_map(|n| chain_basis(a, n)).collect();
    // L_P on all chains that L_Q can produce from the test chains.
    let wide: Vec<Word> = (0..=bounds.weight + 1).flat_map(|n| chain_basis(a, n)).collect();
    let index: HashMap<&Word, usize> = wide.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let table: Vec<Vec<Chain>> = cochains
        .par_iter()
        .map(|(_, p, _)| wide.iter().map(|w| action(a, p, &Chain::basis(w.clone()))).collect())
        .collect();
    let apply = |pi: usize, c: &Chain| -> Chain {
        let mut out = Chain::new();
        for (w, v) in c.iter() {
            match index.get(w) {
                Some(&i) => out.add_scaled(&table[pi][i], v),
                None => out.add_scaled(&action(a, &cochains[pi].1, &Chain::basis(w.clone())), v),
            }
        }
        out
    };
    let describe = |ps: &[usize], w: &Word| {
        let ops: Vec<String> = ps.iter().map(|&i| cochains[i].1.format(a)).collect();
        format!("P = {}, chain = {}", ops.join(", Q = "), Chain::basis(w.clone()).format(a))
    };

    // (1) bracket compatibility.
    let np = cochains.len();
    let first_failure = (0..np * np)
        .into_par_iter()
        .find_map_first(|pq| {
            let (pi, qi) = (pq / np, pq % np);
            let (_, p, sp) = &cochains[pi];
            let (_, q, sq) = &cochains[qi];
            let br = gerstenhaber_bracket(a, p, q);
            let s = -Rational::sign(sp * sq);
            for (ci, w) in chains.iter().enumerate() {
                let c = Chain::basis(w.clone());
                let mut lhs = action(a, &br, &c);
                let pq_c = apply(pi, &table[qi][ci]);
                let qp_c = apply(qi, &table[pi][ci]);
                lhs.add_scaled(&pq_c, &-Rational::one());
                lhs.add_scaled(&qp_c, &-&s);
                if !lhs.is_zero() {
                    return Some(describe(&[pi, qi], w));
                }
            }
            None
        });
    let r1 = AxiomReport::new("L_[P,Q] = [L_P, L_Q]", np * np * chains.len(), first_failure);

    // (2) compatibility with the differentials, (3) commutation with B.
    let b = structure_cochain(a);
    let (f2, f3): (Option<String>, Option<String>) = (0..np)
        .into_par_iter()
        .map(|pi| {
            let (_, p, sp) = &cochains[pi];
            let dp = gerstenhaber_bracket(a, &b, p);
            let s = -Rational::sign(*sp);
            let mut f2 = None;
            let mut f3 = None;
            for (ci, w) in chains.iter().enumerate() {
                let c = Chain::basis(w.clone());
                if f2.is_none() {
                    let mut t = hochschild_boundary(a, &table[pi][ci]);
                    t.add_scaled(&apply(pi, &hochschild_boundary(a, &c)), &s);
                    t.add_scaled(&action(a, &dp, &c), &-Rational::one());
                    if !t.is_zero() {
                        f2 = Some(describe(&[pi], w));
                    }
                }
                if f3.is_none() {
                    let mut t = connes_b(a, &table[pi][ci]);
                    t.add_scaled(&apply(pi, &connes_b(a, &c)), &s);
                    if !t.is_zero() {
                        f3 = Some(describe(&[pi], w));
                    }
                }
            }
            (f2, f3)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold((None, None), |x, y| (x.0.or(y.0), x.1.or(y.1)));
    let r2 = AxiomReport::new("∂L_P - (-1)^|P| L_P ∂ = L_∂P", np * chains.len(), f2);
    let r3 = AxiomReport::new("B L_P - (-1)^|P| L_P B = 0", np * chains.len(), f3);

    // L_b = ∂.
    let f4 = chains.par_iter().find_map_first(|w| {
        let c = Chain::basis(w.clone());
        (action(a, &b, &c) != hochschild_boundary(a, &c)).then(|| format!("chain = {}", c.format(a)))
    });
    let r4 = AxiomReport::new("L_b = ∂", chains.len(), f4);
    vec![r1, r2, r3, r4]
}
