use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::DgAlgebra;
use crate::exactlin::{homology_at, LinAlgError, Rational, SparseMatrix, SparseVec, SubquotientBasis};

use super::{chain_basis, cochain_basis, cochain_differential, connes_b, hochschild_boundary};
use super::{Chain, Cochain, CochainKey, HochschildError, Word};

/// Dimensions by degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GradedDims {
    pub dims: BTreeMap<i64, usize>,
}

impl GradedDims {
    pub fn get(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn as_vec(&self) -> Vec<usize> {
        self.dims.values().copied().collect()
    }
}

/// Homology at one degree: the basis of the ambient space and the
/// subquotient data in that basis.
#[derive(Clone, Debug)]
pub struct HomologyGroup<K> {
    pub degree: i64,
    pub basis: Vec<K>,
    pub data: SubquotientBasis,
}

impl<K: Ord> HomologyGroup<K> {
    pub fn dim(&self) -> usize {
        self.data.dim()
    }

    fn index(&self, k: &K) -> Option<usize> {
        self.basis.binary_search(k).ok()
    }
}

impl HomologyGroup<Word> {
    pub fn to_vector(&self, c: &Chain) -> Option<SparseVec> {
        let mut v = Vec::new();
        for (w, x) in c.iter() {
            v.push((self.index(w)?, x.clone()));
        }
        v.sort_by_key(|(i, _)| *i);
        Some(v)
    }

    pub fn to_chain(&self, v: &[(usize, Rational)]) -> Chain {
        let mut c = Chain::new();
        for (i, x) in v {
            c.add_term(self.basis[*i].clone(), x);
        }
        c
    }

    pub fn representatives(&self) -> Vec<Chain> {
        self.data.representatives.iter().map(|r| self.to_chain(r)).collect()
    }

    /// Coordinates of the class of a cycle.
    pub fn class_of(&self, c: &Chain) -> Result<Vec<Rational>, LinAlgError> {
        let v = self.to_vector(c).ok_or(LinAlgError::NotACycle)?;
        self.data.class_coordinates(&v)
    }
}

impl HomologyGroup<CochainKey> {
    pub fn to_vector(&self, p: &Cochain) -> Option<SparseVec> {
        let mut v = Vec::new();
        for (w, o, x) in p.iter() {
            let key = CochainKey { inputs: w.clone(), output: o };
            v.push((self.index(&key)?, x.clone()));
        }
        v.sort_by_key(|(i, _)| *i);
        Some(v)
    }

    pub fn to_cochain(&self, v: &[(usize, Rational)]) -> Cochain {
        let mut p = Cochain::new();
        for (i, x) in v {
            let k = &self.basis[*i];
            p.add_term(k.inputs.clone(), k.output, x);
        }
        p
    }

    pub fn representatives(&self) -> Vec<Cochain> {
        self.data.representatives.iter().map(|r| self.to_cochain(r)).collect()
    }

    pub fn class_of(&self, p: &Cochain) -> Result<Vec<Rational>, LinAlgError> {
        let v = self.to_vector(p).ok_or(LinAlgError::NotACycle)?;
        self.data.class_coordinates(&v)
    }
}

/// HH_* of a degree-0 algebra in a range of degrees.
#[derive(Clone, Debug)]
pub struct ChainHomology {
    pub groups: BTreeMap<i64, HomologyGroup<Word>>,
}

/// HH^* of a degree-0 algebra in a range of degrees.
#[derive(Clone, Debug)]
pub struct CochainHomology {
    pub groups: BTreeMap<i64, HomologyGroup<CochainKey>>,
}

impl ChainHomology {
    pub fn dims(&self) -> GradedDims {
        GradedDims { dims: self.groups.iter().map(|(k, g)| (*k, g.dim())).collect() }
    }
}

impl CochainHomology {
    pub fn dims(&self) -> GradedDims {
        GradedDims { dims: self.groups.iter().map(|(k, g)| (*k, g.dim())).collect() }
    }
}

fn matrix_from_images<K: Ord + Sync, F>(domain: &[K], codomain: &[K], f: F) -> SparseMatrix
where
    F: Fn(&K) -> Vec<(K, Rational)> + Sync,
{
    let columns: Vec<SparseVec> = domain
        .par_iter()
        .map(|k| {
            let mut col: SparseVec = f(k)
                .into_iter()
                .map(|(key, v)| (codomain.binary_search(&key).expect("image lies in the codomain basis"), v))
                .collect();
            col.sort_by_key(|(i, _)| *i);
            col
        })
        .collect();
    SparseMatrix::from_columns(codomain.len(), columns)
}

/// Matrix of ∂ : C_n → C_{n−1} in the lexicographic word bases.
pub fn boundary_matrix(a: &DgAlgebra, n: usize) -> SparseMatrix {
    let dom = chain_basis(a, n);
    if n == 0 {
        return SparseMatrix::zeros(0, dom.len());
    }
    let cod = chain_basis(a, n - 1);
    matrix_from_images(&dom, &cod, |w| {
        hochschild_boundary(a, &Chain::basis(w.clone())).iter().map(|(k, v)| (k.clone(), v.clone())).collect()
    })
}

/// Matrix of B : C_n → C_{n+1}.
pub fn connes_matrix(a: &DgAlgebra, n: usize) -> SparseMatrix {
    let dom = chain_basis(a, n);
    let cod = chain_basis(a, n + 1);
    matrix_from_images(&dom, &cod, |w| {
        connes_b(a, &Chain::basis(w.clone())).iter().map(|(k, v)| (k.clone(), v.clone())).collect()
    })
}

/// Matrix of ∂ : C^n → C^{n+1} on normalized cochains of a degree-0 algebra.
pub fn cochain_differential_matrix(a: &DgAlgebra, n: usize) -> SparseMatrix {
    let dom = cochain_basis(a, n);
    let cod = cochain_basis(a, n + 1);
    matrix_from_images(&dom, &cod, |k| {
        cochain_differential(a, &Cochain::basis(k))
            .iter()
            .map(|(w, o, v)| (CochainKey { inputs: w.clone(), output: o }, v.clone()))
            .collect()
    })
}

fn check_degree_zero(a: &DgAlgebra) -> Result<(), HochschildError> {
    if a.is_degree_zero() {
        Ok(())
    } else {
        Err(HochschildError::NotDegreeZero)
    }
}

/// HH_n for `n` in `degrees`; degree `n` uses bar weights `n−1, n, n+1`.
pub fn hochschild_homology(
    a: &DgAlgebra,
    degrees: std::ops::RangeInclusive<usize>,
) -> Result<ChainHomology, HochschildError> {
    check_degree_zero(a)?;
    let lo = *degrees.start();
    let hi = *degrees.end();
    let mats: BTreeMap<usize, SparseMatrix> =
        (lo..=hi + 1).collect::<Vec<_>>().into_par_iter().map(|n| (n, boundary_matrix(a, n))).collect();
    let groups = (lo..=hi)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|n| {
            let data = homology_at(&mats[&(n + 1)], &mats[&n])?;
            Ok((n as i64, HomologyGroup { degree: n as i64, basis: chain_basis(a, n), data }))
        })
        .collect::<Result<BTreeMap<_, _>, LinAlgError>>()?;
    Ok(ChainHomology { groups })
}

/// HH^n for `n` in `degrees` on the normalized complex. Needs cochains of
/// arity `n+1`, which must not exceed `arity_bound`.
pub fn hochschild_cohomology(
    a: &DgAlgebra,
    degrees: std::ops::RangeInclusive<usize>,
    arity_bound: usize,
) -> Result<CochainHomology, HochschildError> {
    check_degree_zero(a)?;
    let lo = *degrees.start();
    let hi = *degrees.end();
    if hi + 1 > arity_bound {
        return Err(HochschildError::ArityBoundExceeded { arity: hi + 1, bound: arity_bound });
    }
    let from = lo.saturating_sub(1);
    let mats: BTreeMap<usize, SparseMatrix> = (from..=hi)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|n| (n, cochain_differential_matrix(a, n)))
        .collect();
    let groups = (lo..=hi)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|n| {
            let basis = cochain_basis(a, n);
            let d_in = if n == 0 { SparseMatrix::zeros(basis.len(), 0) } else { mats[&(n - 1)].clone() };
            let data = homology_at(&d_in, &mats[&n])?;
            Ok((n as i64, HomologyGroup { degree: n as i64, basis, data }))
        })
        .collect::<Result<BTreeMap<_, _>, LinAlgError>>()?;
    Ok(CochainHomology { groups })
}
