use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use smallvec::SmallVec;

use crate::algebra::DgAlgebra;
use crate::coeff::{LinearSpace, RingTensor};
use crate::exactlin::Rational;

use super::HochschildError;

/// A word of basis indices. For chains, entry 0 is `a₀` and the rest is the
/// bar word; for cochains it is the list of inputs.
pub type Word = SmallVec<[u16; 8]>;

pub fn word(v: &[usize]) -> Word {
    v.iter().map(|&i| i as u16).collect()
}

/// A normalized Hochschild chain with rational coefficients.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Chain {
    terms: BTreeMap<Word, Rational>,
}

impl Chain {
    pub fn new() -> Self {
        Self::default()
    }

    /// Build from terms; rejects the unit in a bar slot.
    pub fn from_terms<I: IntoIterator<Item = (Word, Rational)>>(terms: I) -> Result<Self, HochschildError> {
        let mut c = Chain::new();
        for (w, v) in terms {
            if w.is_empty() {
                return Err(HochschildError::EmptyWord);
            }
            if w[1..].contains(&0) {
                return Err(HochschildError::UnitInBar);
            }
            c.add_raw(w, &v);
        }
        Ok(c)
    }

    /// The basis chain `a₀ ⊗ [a₁|…|a_n]`.
    pub fn basis(w: Word) -> Self {
        let mut c = Chain::new();
        c.add_term(w, &Rational::one());
        c
    }

    /// Add `v·w`; silently drops words with the unit in the bar (they are
    /// zero in the normalized complex).
    pub fn add_term(&mut self, w: Word, v: &Rational) {
        if w[1..].contains(&0) {
            return;
        }
        self.add_raw(w, v);
    }

    fn add_raw(&mut self, w: Word, v: &Rational) {
        if v.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += v;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(v.clone());
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Word, Rational> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Largest bar weight present.
    pub fn max_weight(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.len() - 1).max()
    }

    /// Terms of bar weight `n` only.
    pub fn weight_part(&self, n: usize) -> Chain {
        Chain { terms: self.terms.iter().filter(|(w, _)| w.len() == n + 1).map(|(w, v)| (w.clone(), v.clone())).collect() }
    }

    pub fn format(&self, a: &DgAlgebra) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(w, v)| {
                let bar: Vec<&str> = w[1..].iter().map(|&i| a.label(i as usize)).collect();
                format!("{v}*{}⊗[{}]", a.label(w[0] as usize), bar.join("|"))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl LinearSpace for Chain {
    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (w, v) in &other.terms {
            let e = self.terms.entry(w.clone()).or_default();
            *e += &(v * c);
        }
        self.terms.retain(|_, v| !v.is_zero());
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// Key of a basis cochain: the input word and the output basis index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CochainKey {
    pub inputs: Word,
    pub output: u16,
}

/// A Hochschild cochain, stored as a coefficient tensor: for each input word
/// the coordinates of the output. The same coefficients describe the map on
/// shifted inputs and outputs.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Cochain {
    terms: BTreeMap<Word, BTreeMap<u16, Rational>>,
}

impl Cochain {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(key: &CochainKey) -> Self {
        let mut c = Cochain::new();
        c.add_term(key.inputs.clone(), key.output, &Rational::one());
        c
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, u16, Rational)>>(terms: I) -> Self {
        let mut c = Cochain::new();
        for (w, o, v) in terms {
            c.add_term(w, o, &v);
        }
        c
    }

    pub fn add_term(&mut self, inputs: Word, output: u16, v: &Rational) {
        if v.is_zero() {
            return;
        }
        let outs = self.terms.entry(inputs.clone()).or_default();
        let e = outs.entry(output).or_default();
        *e += v;
        if e.is_zero() {
            outs.remove(&output);
            if outs.is_empty() {
                self.terms.remove(&inputs);
            }
        }
    }

    /// Value on an input word, as sparse output coordinates.
    pub fn value(&self, inputs: &[u16]) -> Option<&BTreeMap<u16, Rational>> {
        self.terms.get(inputs)
    }

    pub fn terms(&self) -> &BTreeMap<Word, BTreeMap<u16, Rational>> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, u16, &Rational)> {
        self.terms.iter().flat_map(|(w, outs)| outs.iter().map(move |(o, v)| (w, *o, v)))
    }

    pub fn coefficient(&self, key: &CochainKey) -> Rational {
        self.terms.get(&key.inputs).and_then(|m| m.get(&key.output)).cloned().unwrap_or_default()
    }

    pub fn arities(&self) -> Vec<usize> {
        let a: BTreeSet<usize> = self.terms.keys().map(|w| w.len()).collect();
        a.into_iter().collect()
    }

    pub fn max_arity(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.len()).max()
    }

    /// Component of arity `l`.
    pub fn arity_part(&self, l: usize) -> Cochain {
        Cochain { terms: self.terms.iter().filter(|(w, _)| w.len() == l).map(|(w, m)| (w.clone(), m.clone())).collect() }
    }

    /// Drop components above the given arity.
    pub fn truncate_arity(&self, bound: usize) -> Cochain {
        Cochain { terms: self.terms.iter().filter(|(w, _)| w.len() <= bound).map(|(w, m)| (w.clone(), m.clone())).collect() }
    }

    /// True when no input word contains the unit.
    pub fn is_normalized(&self) -> bool {
        self.terms.keys().all(|w| !w.contains(&0))
    }

    /// Shifted degrees of the homogeneous pieces present.
    pub fn shifted_degrees(&self, a: &DgAlgebra) -> Vec<i64> {
        let mut d: Vec<i64> = self.iter().map(|(w, o, _)| shifted_degree(a, w, o)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn len(&self) -> usize {
        self.terms.values().map(|m| m.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn format(&self, a: &DgAlgebra) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.iter()
            .map(|(w, o, v)| {
                let ins: Vec<&str> = w.iter().map(|&i| a.label(i as usize)).collect();
                format!("{v}*[{}]->{}", ins.join("|"), a.label(o as usize))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl LinearSpace for Cochain {
    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (w, o, v) in other.iter() {
            self.add_term(w.clone(), o, &(v * c));
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.iter()).finish()
    }
}

/// Shifted degree of the basis cochain `inputs ↦ output`:
/// `(|out| - 1) - Σ (|in| - 1)`.
pub fn shifted_degree(a: &DgAlgebra, inputs: &[u16], output: u16) -> i64 {
    let s: i64 = inputs.iter().map(|&i| a.degree(i as usize) as i64 - 1).sum();
    a.degree(output as usize) as i64 - 1 - s
}

/// Chains with coefficients in an artin ring.
pub type RChain = RingTensor<Chain>;
/// Cochains with coefficients in an artin ring.
pub type RCochain = RingTensor<Cochain>;

/// All normalized chain words of bar weight `n`, in lexicographic order.
pub fn chain_basis(a: &DgAlgebra, n: usize) -> Vec<Word> {
    let d = a.dim();
    let mut out = Vec::new();
    if d == 1 && n > 0 {
        return out;
    }
    let mut cur: Word = SmallVec::from_elem(1, n + 1);
    for a0 in 0..d {
        cur[0] = a0 as u16;
        for i in 1..=n {
            cur[i] = 1;
        }
        loop {
            out.push(cur.clone());
            // Increment the bar part as a base-(d-1) odometer.
            let mut pos = n;
            loop {
                if pos == 0 {
                    break;
                }
                if (cur[pos] as usize) + 1 < d {
                    cur[pos] += 1;
                    break;
                }
                cur[pos] = 1;
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
        }
    }
    out
}

/// All normalized basis cochains of a given arity, sorted.
pub fn cochain_basis(a: &DgAlgebra, arity: usize) -> Vec<CochainKey> {
    let d = a.dim();
    let mut inputs: Vec<Word> = vec![SmallVec::new()];
    for _ in 0..arity {
        inputs = inputs
            .into_iter()
            .flat_map(|w| {
                (1..d).map(move |i| {
                    let mut v = w.clone();
                    v.push(i as u16);
                    v
                })
            })
            .collect();
    }
    inputs
        .into_iter()
        .flat_map(|w| (0..d).map(move |o| CochainKey { inputs: w.clone(), output: o as u16 }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_truncated_polynomial_algebra;

    #[test]
    fn basis_counts() {
        let d = build_truncated_polynomial_algebra(3);
        for n in 0..5 {
            assert_eq!(chain_basis(&d, n).len(), 3 * 2usize.pow(n as u32));
            assert_eq!(cochain_basis(&d, n).len(), 3 * 2usize.pow(n as u32));
        }
        let b = chain_basis(&d, 2);
        let mut sorted = b.clone();
        sorted.sort();
        assert_eq!(b, sorted);
    }

    #[test]
    fn normalization_is_enforced() {
        assert_eq!(Chain::from_terms([(word(&[1, 0]), Rational::one())]), Err(HochschildError::UnitInBar));
        let mut c = Chain::new();
        c.add_term(word(&[1, 0]), &Rational::one());
        assert!(c.is_empty());
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut c = Chain::basis(word(&[0, 1]));
        c.add_term(word(&[0, 1]), &-Rational::one());
        assert!(c.is_empty());
        let mut p = Cochain::new();
        p.add_term(word(&[1]), 1, &Rational::one());
        p.add_term(word(&[1]), 1, &-Rational::one());
        assert!(p.is_empty());
    }
}
