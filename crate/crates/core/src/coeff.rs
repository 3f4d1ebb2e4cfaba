//! Artin local coefficient rings with residue field ℚ, and the tensor
//! decomposition used to run ℚ-linear formulas over such a ring.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::exactlin::{Echelon, Rational, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("ring table is empty")]
    Empty,
    #[error("multiplication table has wrong shape: {0}")]
    Shape(String),
    #[error("first basis element is not a two-sided unit (fails at {0})")]
    NotUnital(String),
    #[error("product is not commutative at ({0}, {1})")]
    NotCommutative(String, String),
    #[error("product is not associative at ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("non-unit basis elements do not span a nilpotent ideal")]
    NotLocal,
    #[error("basis is not adapted to the m-adic filtration")]
    NotAdapted,
    #[error("index set is not an ideal of the ring")]
    NotAnIdeal,
    #[error("element has length {got}, ring has dimension {expected}")]
    LengthMismatch { expected: usize, got: usize },
}

/// A finite-dimensional commutative local ℚ-algebra with residue field ℚ.
///
/// Basis element 0 is the unit and the remaining basis elements span the
/// maximal ideal. Every power `m^k` is spanned by a subset of the basis.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct ArtinLocalRing {
    labels: Vec<String>,
    /// `table[i][j]` is the product of basis elements `i` and `j`.
    table: Vec<Vec<SparseVec>>,
    /// `layer[i]` = largest k with basis element i in m^k (0 for the unit).
    layer: Vec<usize>,
    nilpotency_order: usize,
}

impl fmt::Debug for ArtinLocalRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ArtinLocalRing{:?}", self.labels)
    }
}

/// An element of a ring, as coordinates in its basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RingElement {
    pub coefficients: Vec<Rational>,
}

impl RingElement {
    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Rational::is_zero)
    }
}

impl ArtinLocalRing {
    /// Validate a multiplication table. `table[i][j]` lists the coordinates
    /// of `e_i e_j`; the basis must already be adapted to the m-adic filtration.
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<SparseVec>>) -> Result<Self, RingError> {
        let n = labels.len();
        if n == 0 {
            return Err(RingError::Empty);
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(RingError::Shape(format!("expected {n}x{n}")));
        }
        if table.iter().flatten().flatten().any(|(k, _)| *k >= n) {
            return Err(RingError::Shape("product index out of range".into()));
        }
        for i in 0..n {
            let ei = vec![(i, Rational::one())];
            if table[0][i] != ei || table[i][0] != ei {
                return Err(RingError::NotUnital(labels[i].clone()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if table[i][j] != table[j][i] {
                    return Err(RingError::NotCommutative(labels[i].clone(), labels[j].clone()));
                }
            }
        }
        let mut ring = ArtinLocalRing { labels, table, layer: vec![0; n], nilpotency_order: 1 };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let l = ring.mul_basis_vec(&ring.table[i][j], k);
                    let r = ring.mul_vec_basis(i, &ring.table[j][k]);
                    if l != r {
                        let lb = &ring.labels;
                        return Err(RingError::NotAssociative(lb[i].clone(), lb[j].clone(), lb[k].clone()));
                    }
                }
            }
        }
        ring.compute_filtration()?;
        Ok(ring)
    }

    fn mul_basis_vec(&self, v: &SparseVec, k: usize) -> SparseVec {
        let mut acc = Vec::new();
        for (i, c) in v {
            acc = crate::exactlin::axpy(&acc, c, &self.table[*i][k]);
        }
        acc
    }

    fn mul_vec_basis(&self, i: usize, v: &SparseVec) -> SparseVec {
        let mut acc = Vec::new();
        for (k, c) in v {
            acc = crate::exactlin::axpy(&acc, c, &self.table[i][*k]);
        }
        acc
    }

    /// Compute m ⊇ m² ⊇ … and check each power is spanned by basis elements.
    fn compute_filtration(&mut self) -> Result<(), RingError> {
        let n = self.dim();
        // Current power as a basis-index set; must be closed under the checks below.
        let mut current: Vec<usize> = (1..n).collect();
        for i in 1..n {
            for j in 1..n {
                if self.table[i][j].iter().any(|(k, _)| *k == 0) {
                    return Err(RingError::NotLocal);
                }
            }
        }
        let mut k = 1;
        let mut layer = vec![0usize; n];
        while !current.is_empty() {
            for &i in &current {
                layer[i] = k;
            }
            // m^{k+1} = m · m^k as a subspace.
            let mut span = Echelon::new();
            let mut gens: Vec<SparseVec> = Vec::new();
            for i in 1..n {
                for &j in &current {
                    let p = &self.table[i][j];
                    if !p.is_empty() && span.insert(p).is_some() {
                        gens.push(p.clone());
                    }
                }
            }
            let next: Vec<usize> = {
                let mut idx: Vec<usize> = gens.iter().flat_map(|g| g.iter().map(|(i, _)| *i)).collect();
                idx.sort_unstable();
                idx.dedup();
                idx
            };
            if next.len() != span.len() {
                return Err(RingError::NotAdapted);
            }
            if next.len() >= current.len() {
                return Err(RingError::NotLocal);
            }
            if next.iter().any(|i| !current.contains(i)) {
                return Err(RingError::NotAdapted);
            }
            current = next;
            k += 1;
        }
        self.layer = layer;
        self.nilpotency_order = k;
        Ok(())
    }

    /// Like [`from_table`](Self::from_table), but first rewrites the basis so
    /// that it is adapted to the m-adic filtration. The unit must be element 0
    /// and the remaining elements must span the maximal ideal.
    pub fn adapted_from_table(labels: Vec<String>, table: Vec<Vec<SparseVec>>) -> Result<Self, RingError> {
        let n = labels.len();
        if n == 0 {
            return Err(RingError::Empty);
        }
        let mul = |a: &SparseVec, b: &SparseVec| -> SparseVec {
            let mut acc = Vec::new();
            for (i, x) in a {
                for (j, y) in b {
                    acc = crate::exactlin::axpy(&acc, &(x * y), &table[*i][*j]);
                }
            }
            acc
        };
        // Powers of m as lists of spanning vectors in the old basis.
        let mut powers: Vec<Vec<SparseVec>> = vec![(1..n).map(|i| vec![(i, Rational::one())]).collect()];
        loop {
            let last = powers.last().expect("nonempty");
            let mut ech = Echelon::new();
            let mut next = Vec::new();
            for i in 1..n {
                for v in last {
                    let p = mul(&vec![(i, Rational::one())], v);
                    if !p.is_empty() && ech.insert(&p).is_some() {
                        next.push(p);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            if next.len() >= last.len() || powers.len() > n {
                return Err(RingError::NotLocal);
            }
            powers.push(next);
        }
        // Choose the new basis from the deepest power outward.
        let mut ech = Echelon::new();
        let mut chosen: Vec<SparseVec> = Vec::new();
        for p in powers.iter().rev() {
            for v in p {
                if ech.insert(v).is_some() {
                    chosen.push(v.clone());
                }
            }
        }
        chosen.reverse();
        let mut basis = vec![vec![(0usize, Rational::one())]];
        basis.extend(chosen);
        if basis.len() != n {
            return Err(RingError::NotLocal);
        }
        let mut coords = Echelon::new();
        for b in &basis {
            coords.insert(b);
        }
        let express = |v: &SparseVec| -> SparseVec {
            let (res, combo) = coords.reduce(v);
            debug_assert!(res.is_empty());
            combo
        };
        let new_labels: Vec<String> = basis
            .iter()
            .map(|b| {
                if b.len() == 1 && b[0].1.is_one() {
                    labels[b[0].0].clone()
                } else {
                    b.iter()
                        .map(|(i, c)| if c.is_one() { labels[*i].clone() } else { format!("{c}*{}", labels[*i]) })
                        .collect::<Vec<_>>()
                        .join("+")
                }
            })
            .collect();
        let new_table = (0..n)
            .map(|i| (0..n).map(|j| express(&mul(&basis[i], &basis[j]))).collect())
            .collect();
        Self::from_table(new_labels, new_table)
    }

    /// ℚ[ε₁..ε_s]/(monomials of total degree ≥ order), graded-lex monomial basis.
    pub fn truncated_poly(num_vars: usize, order: usize) -> Self {
        assert!(num_vars >= 1 && order >= 2, "need num_vars >= 1 and order >= 2");
        let mut monos: Vec<Vec<usize>> = Vec::new();
        for deg in 0..order {
            let mut of_deg = Vec::new();
            exponent_vectors(num_vars, deg, &mut Vec::new(), &mut of_deg);
            of_deg.sort_by(|a, b| b.cmp(a));
            monos.extend(of_deg);
        }
        let labels = monos.iter().map(|m| monomial_label(m, num_vars)).collect();
        let index = |m: &Vec<usize>| monos.iter().position(|x| x == m);
        let table = monos
            .iter()
            .map(|a| {
                monos
                    .iter()
                    .map(|b| {
                        let p: Vec<usize> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                        match index(&p) {
                            Some(k) => vec![(k, Rational::one())],
                            None => Vec::new(),
                        }
                    })
                    .collect()
            })
            .collect();
        Self::from_table(labels, table).expect("truncated polynomial ring is artin local")
    }

    /// ℚ[ε]/(ε²).
    pub fn dual_numbers() -> Self {
        Self::truncated_poly(1, 2)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn nilpotency_order(&self) -> usize {
        self.nilpotency_order
    }

    /// Largest k with basis element `i` in m^k.
    pub fn layer(&self, i: usize) -> usize {
        self.layer[i]
    }

    /// Products of basis elements.
    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    /// Index sets of m ⊇ m² ⊇ … ⊇ m^N = ∅.
    pub fn m_adic_filtration(&self) -> Vec<Vec<usize>> {
        (1..=self.nilpotency_order)
            .map(|k| (0..self.dim()).filter(|&i| self.layer[i] >= k).collect())
            .collect()
    }

    pub fn zero(&self) -> RingElement {
        RingElement { coefficients: vec![Rational::zero(); self.dim()] }
    }

    pub fn one(&self) -> RingElement {
        self.basis_element(0)
    }

    pub fn basis_element(&self, i: usize) -> RingElement {
        let mut e = self.zero();
        e.coefficients[i] = Rational::one();
        e
    }

    pub fn element(&self, coefficients: Vec<Rational>) -> Result<RingElement, RingError> {
        if coefficients.len() != self.dim() {
            return Err(RingError::LengthMismatch { expected: self.dim(), got: coefficients.len() });
        }
        Ok(RingElement { coefficients })
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement { coefficients: a.coefficients.iter().zip(&b.coefficients).map(|(x, y)| x + y).collect() }
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let mut out = self.zero();
        for (i, x) in a.coefficients.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.coefficients.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (k, c) in &self.table[i][j] {
                    out.coefficients[*k] += &(&xy * c);
                }
            }
        }
        out
    }

    /// The residue map R → ℚ.
    pub fn reduce(&self, a: &RingElement) -> Rational {
        a.coefficients[0].clone()
    }

    pub fn in_m_power(&self, a: &RingElement, k: usize) -> bool {
        a.coefficients.iter().enumerate().all(|(i, c)| c.is_zero() || self.layer[i] >= k)
    }

    /// R / I for an ideal I spanned by the basis elements in `ideal`.
    /// Returns the quotient and, for each old index, its new index if kept.
    pub fn quotient(&self, ideal: &[usize]) -> Result<(ArtinLocalRing, Vec<Option<usize>>), RingError> {
        let n = self.dim();
        let in_ideal = |i: usize| ideal.contains(&i);
        if in_ideal(0) {
            return Err(RingError::NotAnIdeal);
        }
        for &i in ideal {
            for j in 0..n {
                if self.table[i][j].iter().any(|(k, _)| !in_ideal(*k)) {
                    return Err(RingError::NotAnIdeal);
                }
            }
        }
        let mut map = vec![None; n];
        let mut kept = Vec::new();
        for i in 0..n {
            if !in_ideal(i) {
                map[i] = Some(kept.len());
                kept.push(i);
            }
        }
        let labels = kept.iter().map(|&i| self.labels[i].clone()).collect();
        let table = kept
            .iter()
            .map(|&i| {
                kept.iter()
                    .map(|&j| {
                        self.table[i][j]
                            .iter()
                            .filter_map(|(k, c)| map[*k].map(|m| (m, c.clone())))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok((Self::adapted_from_table(labels, table)?, map))
    }

    /// R / m^k together with the index map.
    pub fn truncate(&self, k: usize) -> (ArtinLocalRing, Vec<Option<usize>>) {
        let ideal: Vec<usize> = (0..self.dim()).filter(|&i| self.layer[i] >= k).collect();
        self.quotient(&ideal).expect("powers of m are ideals")
    }

    /// Fiber product R ×_{R/I} R for an ideal I spanned by basis elements.
    /// Basis: the diagonal copy of R, then a second copy of I.
    pub fn fiber_product_over_quotient(&self, ideal: &[usize]) -> Result<ArtinLocalRing, RingError> {
        self.quotient(ideal)?;
        let n = self.dim();
        let mut labels = self.labels.clone();
        labels.extend(ideal.iter().map(|&i| format!("{}'", self.labels[i])));
        let pos = |i: usize| n + ideal.iter().position(|&x| x == i).expect("in ideal");
        let total = n + ideal.len();
        let mut table = vec![vec![Vec::new(); total]; total];
        // (r, r) * (s, s) = (rs, rs); (r, r) * (0, i) = (0, ri); (0, i) * (0, j) = (0, ij).
        for i in 0..n {
            for j in 0..n {
                table[i][j] = self.table[i][j].clone();
            }
        }
        for i in 0..n {
            for &j in ideal {
                let p: SparseVec = self.table[i][j].iter().map(|(k, c)| (pos(*k), c.clone())).collect();
                table[i][pos(j)] = sorted(p.clone());
                table[pos(j)][i] = sorted(p);
            }
        }
        for &i in ideal {
            for &j in ideal {
                let p: SparseVec = self.table[i][j].iter().map(|(k, c)| (pos(*k), c.clone())).collect();
                table[pos(i)][pos(j)] = sorted(p);
            }
        }
        Self::adapted_from_table(labels, table)
    }

    pub fn format_element(&self, a: &RingElement) -> String {
        let terms: Vec<String> = a
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| if i == 0 { format!("{c}") } else { format!("{c}*{}", self.labels[i]) })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

fn sorted(mut v: SparseVec) -> SparseVec {
    v.sort_by_key(|(i, _)| *i);
    v
}

fn exponent_vectors(vars: usize, deg: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if prefix.len() + 1 == vars {
        let mut m = prefix.clone();
        m.push(deg);
        out.push(m);
        return;
    }
    for e in (0..=deg).rev() {
        prefix.push(e);
        exponent_vectors(vars, deg - e, prefix, out);
        prefix.pop();
    }
}

fn monomial_label(m: &[usize], vars: usize) -> String {
    if m.iter().all(|&e| e == 0) {
        return "1".into();
    }
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, e)| **e > 0)
        .map(|(v, e)| {
            let name = if vars == 1 { "eps".to_string() } else { format!("eps{}", v + 1) };
            if *e == 1 {
                name
            } else {
                format!("{name}^{e}")
            }
        })
        .collect();
    parts.join("*")
}

/// Objects that form a ℚ-vector space.
pub trait LinearSpace: Clone + Default {
    fn add_scaled(&mut self, other: &Self, c: &Rational);
    fn is_zero(&self) -> bool;

    fn scaled(&self, c: &Rational) -> Self {
        let mut out = Self::default();
        out.add_scaled(self, c);
        out
    }
}

/// `T ⊗ R`, stored as one `T` per ring basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingTensor<T> {
    pub ring: Arc<ArtinLocalRing>,
    pub parts: Vec<T>,
}

impl<T: LinearSpace> RingTensor<T> {
    pub fn zero(ring: &Arc<ArtinLocalRing>) -> Self {
        RingTensor { ring: ring.clone(), parts: vec![T::default(); ring.dim()] }
    }

    /// `t ⊗ e_i`.
    pub fn pure(ring: &Arc<ArtinLocalRing>, t: T, i: usize) -> Self {
        let mut out = Self::zero(ring);
        out.parts[i] = t;
        out
    }

    /// `t ⊗ r`.
    pub fn from_element(ring: &Arc<ArtinLocalRing>, t: &T, r: &RingElement) -> Self {
        let mut out = Self::zero(ring);
        for (i, c) in r.coefficients.iter().enumerate() {
            if !c.is_zero() {
                out.parts[i].add_scaled(t, c);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(T::is_zero)
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        for (a, b) in self.parts.iter_mut().zip(&other.parts) {
            a.add_scaled(b, c);
        }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        RingTensor { ring: self.ring.clone(), parts: self.parts.iter().map(|p| p.scaled(c)).collect() }
    }

    /// Apply a ℚ-linear map partwise.
    pub fn map<U: LinearSpace>(&self, f: impl Fn(&T) -> U) -> RingTensor<U> {
        RingTensor {
            ring: self.ring.clone(),
            parts: self.parts.iter().map(|p| if p.is_zero() { U::default() } else { f(p) }).collect(),
        }
    }

    /// Multiply by a ring element.
    pub fn times(&self, r: &RingElement) -> Self {
        let mut out = Self::zero(&self.ring);
        for (i, p) in self.parts.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
            for (j, c) in r.coefficients.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                for (k, s) in self.ring.product(i, j) {
                    out.parts[*k].add_scaled(p, &(c * s));
                }
            }
        }
        out
    }

    /// Smallest k such that the element lies in T ⊗ m^k (N if zero).
    pub fn order(&self) -> usize {
        self.parts
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(i, _)| self.ring.layer(i))
            .min()
            .unwrap_or(self.ring.nilpotency_order())
    }

    /// Keep only components in m^k.
    pub fn restrict_to_m_power(&self, k: usize) -> Self {
        let mut out = self.clone();
        for (i, p) in out.parts.iter_mut().enumerate() {
            if self.ring.layer(i) < k {
                *p = T::default();
            }
        }
        out
    }

    /// Transport along an index map (e.g. R → R/I or a canonical lift).
    pub fn reindex(&self, target: &Arc<ArtinLocalRing>, map: &[Option<usize>]) -> Self {
        let mut out = Self::zero(target);
        for (i, p) in self.parts.iter().enumerate() {
            if let Some(j) = map[i] {
                out.parts[j].add_scaled(p, &Rational::one());
            }
        }
        out
    }
}

/// Extend a ℚ-bilinear operation to `R`-tensors.
pub fn bilinear<A, B, C>(a: &RingTensor<A>, b: &RingTensor<B>, f: impl Fn(&A, &B) -> C) -> RingTensor<C>
where
    A: LinearSpace,
    B: LinearSpace,
    C: LinearSpace,
{
    let ring = &a.ring;
    let mut out = RingTensor::<C>::zero(ring);
    for (i, x) in a.parts.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.parts.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
            let prod = ring.product(i, j);
            if prod.is_empty() {
                continue;
            }
            let v = f(x, y);
            for (k, c) in prod {
                out.parts[*k].add_scaled(&v, c);
            }
        }
    }
    out
}

impl LinearSpace for Rational {
    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        *self += &(other * c);
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn truncated_poly_examples() {
        let d = ArtinLocalRing::truncated_poly(1, 2);
        assert_eq!(d.labels(), ["1", "eps"]);
        assert!(d.product(1, 1).is_empty());
        let r = ArtinLocalRing::truncated_poly(1, 3);
        assert_eq!(r.labels(), ["1", "eps", "eps^2"]);
        assert_eq!(r.product(1, 1), &vec![(2, q(1))]);
        let s = ArtinLocalRing::truncated_poly(2, 2);
        assert_eq!(s.labels(), ["1", "eps1", "eps2"]);
        assert!((1..3).all(|i| (1..3).all(|j| s.product(i, j).is_empty())));
    }

    #[test]
    fn filtrations() {
        assert_eq!(ArtinLocalRing::dual_numbers().m_adic_filtration(), vec![vec![1], vec![]]);
        assert_eq!(ArtinLocalRing::truncated_poly(1, 3).m_adic_filtration(), vec![vec![1, 2], vec![2], vec![]]);
        assert_eq!(ArtinLocalRing::truncated_poly(2, 2).m_adic_filtration(), vec![vec![1, 2], vec![]]);
        let r = ArtinLocalRing::truncated_poly(2, 4);
        assert_eq!(r.nilpotency_order(), 4);
        assert_eq!(r.dim(), 10);
    }

    #[test]
    fn nilpotency_invariant_for_truncated_polys() {
        for vars in 1..=2 {
            for order in 2..=4 {
                let r = ArtinLocalRing::truncated_poly(vars, order);
                let n = r.nilpotency_order();
                assert_eq!(n, order);
                let f = r.m_adic_filtration();
                assert!(f[n - 1].is_empty() && !f[n - 2].is_empty());
            }
        }
    }

    #[test]
    fn rejects_bad_tables() {
        let labels = vec!["1".to_string(), "e".to_string()];
        // e*e = 1 is a field extension, not local.
        let table = vec![vec![vec![(0, q(1))], vec![(1, q(1))]], vec![vec![(1, q(1))], vec![(0, q(1))]]];
        assert_eq!(ArtinLocalRing::from_table(labels.clone(), table), Err(RingError::NotLocal));
        let table = vec![vec![vec![(0, q(1))], vec![]], vec![vec![(1, q(1))], vec![]]];
        assert!(matches!(ArtinLocalRing::from_table(labels, table), Err(RingError::NotUnital(_))));
    }

    #[test]
    fn adapts_a_skewed_basis() {
        // Basis {1, u = eps + eps^2, v = eps^2} of Q[eps]/(eps^3): u*u = v.
        let labels: Vec<String> = ["1", "u", "w"].iter().map(|s| s.to_string()).collect();
        // Use w = eps (so the basis is {1, u, w} with u = w + w^2): u*u = w^2 = u - w,
        // which is not adapted because m^2 = span(u - w).
        let table = vec![
            vec![vec![(0, q(1))], vec![(1, q(1))], vec![(2, q(1))]],
            vec![vec![(1, q(1))], vec![(1, q(1)), (2, q(-1))], vec![(1, q(1)), (2, q(-1))]],
            vec![vec![(2, q(1))], vec![(1, q(1)), (2, q(-1))], vec![(1, q(1)), (2, q(-1))]],
        ];
        assert_eq!(ArtinLocalRing::from_table(labels.clone(), table.clone()), Err(RingError::NotAdapted));
        let r = ArtinLocalRing::adapted_from_table(labels, table).unwrap();
        assert_eq!(r.nilpotency_order(), 3);
        assert_eq!(r.m_adic_filtration().iter().map(Vec::len).collect::<Vec<_>>(), vec![2, 1, 0]);
    }

    #[test]
    fn residue_map_is_a_homomorphism() {
        let r = ArtinLocalRing::truncated_poly(2, 3);
        let a = r.element((0..r.dim()).map(|i| q(i as i64 + 2)).collect()).unwrap();
        let b = r.element((0..r.dim()).map(|i| q(3 - i as i64)).collect()).unwrap();
        assert_eq!(r.reduce(&r.mul(&a, &b)), &r.reduce(&a) * &r.reduce(&b));
        assert_eq!(r.reduce(&r.add(&a, &b)), &r.reduce(&a) + &r.reduce(&b));
    }

    #[test]
    fn fiber_product_of_dual_numbers() {
        let d = ArtinLocalRing::dual_numbers();
        let f = d.fiber_product_over_quotient(&[1]).unwrap();
        // Q[e] x_Q Q[e] = Q[e1, e2]/(e1, e2)^2.
        assert_eq!(f.dim(), 3);
        assert_eq!(f.nilpotency_order(), 2);
        let r = ArtinLocalRing::truncated_poly(1, 3);
        let g = r.fiber_product_over_quotient(&[2]).unwrap();
        assert_eq!(g.dim(), 4);
        assert_eq!(g.nilpotency_order(), 3);
    }

    #[test]
    fn quotient_and_truncate() {
        let r = ArtinLocalRing::truncated_poly(1, 4);
        let (q3, map) = r.truncate(3);
        assert_eq!(q3.labels(), ["1", "eps", "eps^2"]);
        assert_eq!(map, vec![Some(0), Some(1), Some(2), None]);
        assert_eq!(r.quotient(&[1]).unwrap_err(), RingError::NotAnIdeal);
    }
}
