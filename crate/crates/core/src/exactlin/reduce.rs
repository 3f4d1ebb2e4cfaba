use std::collections::BTreeMap;

use serde::Serialize;

use super::sparse::{axpy, scale, SparseMatrix, SparseVec};
use super::{LinAlgError, Rational};

/// Below this size elimination runs on a dense buffer.
const DENSE_CUTOFF: usize = 64;

/// Reduced row echelon form of a matrix together with its kernel.
#[derive(Clone, Debug, Serialize)]
pub struct Rref {
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
    /// Nonzero RREF rows, ordered by pivot column.
    pub rows: Vec<SparseVec>,
    /// One kernel vector per free column, in column order.
    pub kernel: Vec<SparseVec>,
}

/// Row-reduce `m`. Rows are processed in index order and the pivot of each
/// new row is its first nonzero column, so the output is deterministic.
pub fn rref(m: &SparseMatrix) -> Rref {
    let rows = if m.rows() < DENSE_CUTOFF && m.cols() < DENSE_CUTOFF {
        rref_rows_dense(m)
    } else {
        rref_rows_sparse(m.row_vectors(), m.cols())
    };
    finish(rows, m.cols())
}

fn finish(mut rows: Vec<SparseVec>, ncols: usize) -> Rref {
    rows.sort_by_key(|r| r[0].0);
    let pivot_cols: Vec<usize> = rows.iter().map(|r| r[0].0).collect();
    let mut is_pivot = vec![false; ncols];
    for &p in &pivot_cols {
        is_pivot[p] = true;
    }
    let mut kernel = Vec::new();
    for f in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v: SparseVec = Vec::new();
        for r in &rows {
            if let Ok(k) = r.binary_search_by_key(&f, |(i, _)| *i) {
                v.push((r[0].0, -&r[k].1));
            }
        }
        v.push((f, Rational::one()));
        v.sort_by_key(|(i, _)| *i);
        kernel.push(v);
    }
    Rref { rank: rows.len(), pivot_cols, rows, kernel }
}

fn rref_rows_sparse(input: Vec<SparseVec>, ncols: usize) -> Vec<SparseVec> {
    let mut piv_rows: Vec<SparseVec> = Vec::new();
    let mut piv_index: BTreeMap<usize, usize> = BTreeMap::new();
    let _ = ncols;
    for row in input {
        if row.is_empty() {
            continue;
        }
        // Pivot rows are kept fully reduced, so one pass clears every pivot column.
        let hits: Vec<(usize, Rational)> =
            row.iter().filter(|(c, _)| piv_index.contains_key(c)).cloned().collect();
        let mut v = row;
        for (c, coef) in hits {
            let k = piv_index[&c];
            v = axpy(&v, &-&coef, &piv_rows[k]);
        }
        if v.is_empty() {
            continue;
        }
        let lead = v[0].1.recip().expect("nonzero leading entry");
        let v = scale(&v, &lead);
        let pc = v[0].0;
        for r in piv_rows.iter_mut() {
            if let Ok(k) = r.binary_search_by_key(&pc, |(i, _)| *i) {
                let a = r[k].1.clone();
                *r = axpy(r, &-&a, &v);
            }
        }
        piv_index.insert(pc, piv_rows.len());
        piv_rows.push(v);
    }
    piv_rows
}

fn rref_rows_dense(m: &SparseMatrix) -> Vec<SparseVec> {
    let ncols = m.cols();
    let mut piv: Vec<Vec<Rational>> = Vec::new();
    let mut piv_col: Vec<usize> = Vec::new();
    for row in m.to_dense() {
        let mut v = row;
        for (k, &c) in piv_col.iter().enumerate() {
            if !v[c].is_zero() {
                let a = v[c].clone();
                for j in 0..ncols {
                    if !piv[k][j].is_zero() {
                        v[j] = &v[j] - &(&a * &piv[k][j]);
                    }
                }
            }
        }
        let Some(pc) = v.iter().position(|x| !x.is_zero()) else { continue };
        let inv = v[pc].recip().expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
        for k in 0..piv.len() {
            if !piv[k][pc].is_zero() {
                let a = piv[k][pc].clone();
                for j in 0..ncols {
                    if !v[j].is_zero() {
                        piv[k][j] = &piv[k][j] - &(&a * &v[j]);
                    }
                }
            }
        }
        piv.push(v);
        piv_col.push(pc);
    }
    piv.into_iter()
        .map(|r| r.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
        .collect()
}

pub fn rank(m: &SparseMatrix) -> usize {
    rref(m).rank
}

/// Canonical basis (RREF rows of the transpose) of the column space.
pub fn column_space(m: &SparseMatrix) -> Vec<SparseVec> {
    rref(&m.transpose()).rows
}

/// Solve `a x = b` exactly. Free variables are set to zero.
pub fn solve(a: &SparseMatrix, b: &[(usize, Rational)]) -> Option<SparseVec> {
    let n = a.cols();
    let mut rows = a.row_vectors();
    for (i, v) in b {
        rows[*i].push((n, v.clone()));
    }
    let reduced = rref_rows_sparse(rows, n + 1);
    let mut x = Vec::new();
    for r in &reduced {
        let pc = r[0].0;
        if pc == n {
            return None;
        }
        if let Some((c, v)) = r.last() {
            if *c == n {
                x.push((pc, v.clone()));
            }
        }
    }
    x.sort_by_key(|(i, _)| *i);
    Some(x)
}

/// An echelon basis that remembers how each row was built from the
/// independent vectors inserted so far ("generators").
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    combos: Vec<SparseVec>,
    pivot_of: BTreeMap<usize, usize>,
    generators: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.generators
    }

    pub fn is_empty(&self) -> bool {
        self.generators == 0
    }

    /// Write `v = residual + Σ c_g gen_g`; returns `(residual, c)`.
    pub fn reduce(&self, v: &[(usize, Rational)]) -> (SparseVec, SparseVec) {
        let mut cur: BTreeMap<usize, Rational> = v.iter().cloned().collect();
        let mut combo: SparseVec = Vec::new();
        let mut cursor = 0usize;
        loop {
            let hit = cur
                .range(cursor..)
                .find(|(c, _)| self.pivot_of.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((c, coef)) = hit else { break };
            let k = self.pivot_of[&c];
            // Stored rows have leading coefficient 1.
            for (j, x) in &self.rows[k] {
                let e = cur.entry(*j).or_default();
                *e = &*e - &(&coef * x);
                if e.is_zero() {
                    cur.remove(j);
                }
            }
            combo = axpy(&combo, &coef, &self.combos[k]);
            cursor = c + 1;
        }
        (cur.into_iter().collect(), combo)
    }

    /// Insert `v`; returns its generator index when it is independent.
    pub fn insert(&mut self, v: &[(usize, Rational)]) -> Option<usize> {
        let (res, combo) = self.reduce(v);
        if res.is_empty() {
            return None;
        }
        let g = self.generators;
        self.generators += 1;
        let inv = res[0].1.recip().expect("nonzero leading entry");
        let mut c = scale(&combo, &-Rational::one());
        c.push((g, Rational::one()));
        self.pivot_of.insert(res[0].0, self.rows.len());
        self.rows.push(scale(&res, &inv));
        self.combos.push(scale(&c, &inv));
        Some(g)
    }

    pub fn contains(&self, v: &[(usize, Rational)]) -> bool {
        self.reduce(v).0.is_empty()
    }
}

/// Cycles, boundaries and chosen homology representatives at one spot of a
/// chain complex `C_{k+1} -> C_k -> C_{k-1}`.
#[derive(Clone, Debug)]
pub struct SubquotientBasis {
    pub ambient_dim: usize,
    pub cycle_basis: Vec<SparseVec>,
    pub boundary_basis: Vec<SparseVec>,
    pub representatives: Vec<SparseVec>,
    frame: Echelon,
    boundary_count: usize,
}

impl SubquotientBasis {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Coordinates of the class of `v` in the representative basis.
    pub fn class_coordinates(&self, v: &[(usize, Rational)]) -> Result<Vec<Rational>, LinAlgError> {
        let (res, combo) = self.frame.reduce(v);
        if !res.is_empty() {
            return Err(LinAlgError::NotACycle);
        }
        let mut out = vec![Rational::zero(); self.dim()];
        for (g, c) in combo {
            if g >= self.boundary_count {
                out[g - self.boundary_count] = c;
            }
        }
        Ok(out)
    }

    pub fn is_boundary(&self, v: &[(usize, Rational)]) -> Result<bool, LinAlgError> {
        Ok(self.class_coordinates(v)?.iter().all(Rational::is_zero))
    }

    pub fn is_cycle(&self, v: &[(usize, Rational)]) -> bool {
        self.frame.contains(v)
    }

    /// Sparse combination of representatives with the given coordinates.
    pub fn lift(&self, coords: &[Rational]) -> SparseVec {
        let mut acc = Vec::new();
        for (r, c) in self.representatives.iter().zip(coords) {
            acc = axpy(&acc, c, r);
        }
        acc
    }
}

/// Homology at the middle spot of `d_in : C_{k+1} -> C_k` and
/// `d_out : C_k -> C_{k-1}`.
pub fn homology_at(d_in: &SparseMatrix, d_out: &SparseMatrix) -> Result<SubquotientBasis, LinAlgError> {
    if d_in.rows() != d_out.cols() {
        return Err(LinAlgError::DimensionMismatch { left: d_out.cols(), right: d_in.rows() });
    }
    if !d_out.mul(d_in).is_zero() {
        return Err(LinAlgError::CompositionNonzero);
    }
    let n = d_in.rows();
    let cycle_basis = if d_out.rows() == 0 {
        (0..n).map(|i| vec![(i, Rational::one())]).collect()
    } else {
        rref(d_out).kernel
    };
    let boundary_basis = if d_in.cols() == 0 { Vec::new() } else { column_space(d_in) };
    let mut frame = Echelon::new();
    for b in &boundary_basis {
        frame.insert(b);
    }
    let boundary_count = frame.len();
    let mut representatives = Vec::new();
    for z in &cycle_basis {
        if frame.insert(z).is_some() {
            representatives.push(z.clone());
        }
    }
    Ok(SubquotientBasis {
        ambient_dim: n,
        cycle_basis,
        boundary_basis,
        representatives,
        frame,
        boundary_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn dense(rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn rref_small_example() {
        let m = dense(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let r = rref(&m);
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivot_cols, vec![0, 1]);
        assert_eq!(r.kernel.len(), 1);
        assert!(m.mul_vec(&r.kernel[0]).is_empty());
    }

    #[test]
    fn homology_of_circle() {
        // Simplicial circle: 3 vertices, 3 edges.
        let d1 = dense(&[&[-1, 0, 1], &[1, -1, 0], &[0, 1, -1]]);
        let zero_in = SparseMatrix::zeros(3, 0);
        let zero_out = SparseMatrix::zeros(0, 3);
        let h1 = homology_at(&zero_in, &d1).unwrap();
        let h0 = homology_at(&d1, &zero_out).unwrap();
        assert_eq!((h0.dim(), h1.dim()), (1, 1));
        let c = h0.class_coordinates(&[(0, q(1))]).unwrap();
        assert_eq!(c, vec![q(1)]);
        assert!(h0.is_boundary(&[(0, q(1)), (1, q(-1))]).unwrap());
    }

    #[test]
    fn composition_and_shape_errors() {
        let a = dense(&[&[1]]);
        assert_eq!(homology_at(&a, &a).unwrap_err(), LinAlgError::CompositionNonzero);
        let b = SparseMatrix::zeros(2, 3);
        assert!(matches!(homology_at(&b, &a), Err(LinAlgError::DimensionMismatch { .. })));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = dense(&[&[1, 1], &[1, -1], &[2, 0]]);
        let x = solve(&a, &[(0, q(3)), (1, q(1)), (2, q(4))]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![(0, q(3)), (1, q(1)), (2, q(4))]);
        assert!(solve(&a, &[(0, q(1))]).is_none());
    }

    fn matrix_strategy() -> impl Strategy<Value = SparseMatrix> {
        (1usize..9, 1usize..9).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..4, r * c).prop_map(move |v| {
                SparseMatrix::from_entries(
                    r,
                    c,
                    v.iter().enumerate().filter(|(_, x)| **x != 0).map(|(k, x)| (k / c, k % c, q(*x))),
                )
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity_and_transpose(m in matrix_strategy()) {
            let r = rref(&m);
            prop_assert_eq!(r.rank + r.kernel.len(), m.cols());
            prop_assert_eq!(r.rank, rank(&m.transpose()));
            for k in &r.kernel {
                prop_assert!(m.mul_vec(k).is_empty());
            }
        }

        #[test]
        fn dense_and_sparse_paths_agree(m in matrix_strategy()) {
            let d = rref_rows_dense(&m);
            let mut s = rref_rows_sparse(m.row_vectors(), m.cols());
            let mut d2 = d.clone();
            d2.sort_by_key(|r| r[0].0);
            s.sort_by_key(|r| r[0].0);
            prop_assert_eq!(d2, s);
        }

        #[test]
        fn homology_euler_characteristic(m in matrix_strategy()) {
            // Two-term complex C1 --m--> C0.
            let zin = SparseMatrix::zeros(m.cols(), 0);
            let zout = SparseMatrix::zeros(0, m.rows());
            let h1 = homology_at(&zin, &m).unwrap();
            let h0 = homology_at(&m, &zout).unwrap();
            prop_assert_eq!(h0.dim() as i64 - h1.dim() as i64, m.rows() as i64 - m.cols() as i64);
        }
    }
}
