use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Rational;

/// A sparse vector: `(index, value)` pairs, strictly increasing, no zeros.
pub type SparseVec = Vec<(usize, Rational)>;

/// `y + a*x`, merging two sorted sparse vectors.
pub fn axpy(y: &[(usize, Rational)], a: &Rational, x: &[(usize, Rational)]) -> SparseVec {
    if a.is_zero() {
        return y.to_vec();
    }
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        let take_y = j >= x.len() || (i < y.len() && y[i].0 < x[j].0);
        let take_x = i >= y.len() || (j < x.len() && x[j].0 < y[i].0);
        if take_y {
            out.push(y[i].clone());
            i += 1;
        } else if take_x {
            out.push((x[j].0, a * &x[j].1));
            j += 1;
        } else {
            let v = &y[i].1 + &(a * &x[j].1);
            if !v.is_zero() {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(v: &[(usize, Rational)], a: &Rational) -> SparseVec {
    if a.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * a)).collect()
}

/// Collect arbitrary `(index, value)` pairs into a canonical sparse vector.
pub fn collect_sparse<I: IntoIterator<Item = (usize, Rational)>>(it: I) -> SparseVec {
    let mut m: BTreeMap<usize, Rational> = BTreeMap::new();
    for (i, v) in it {
        *m.entry(i).or_default() += v;
    }
    m.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

pub fn dot_dense(v: &[(usize, Rational)], dense: &[Rational]) -> Rational {
    v.iter().map(|(i, x)| x * &dense[*i]).sum()
}

/// Sparse matrix over ℚ, stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, Rational)>,
}

impl Serialize for SparseMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixRepr { rows: self.rows, cols: self.cols, entries: self.entries() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SparseMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = MatrixRepr::deserialize(d)?;
        if r.entries.iter().any(|(i, j, _)| *i >= r.rows || *j >= r.cols) {
            return Err(serde::de::Error::custom("matrix entry out of range"));
        }
        Ok(SparseMatrix::from_entries(r.rows, r.cols, r.entries))
    }
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        let columns = (0..n).map(|i| vec![(i, Rational::one())]).collect();
        SparseMatrix { rows: n, cols: n, columns }
    }

    /// Build from column vectors; each must have indices below `rows`.
    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns.iter().all(|c| c.iter().all(|(i, v)| *i < rows && !v.is_zero())));
        SparseMatrix { rows, cols: columns.len(), columns }
    }

    pub fn from_entries<I: IntoIterator<Item = (usize, usize, Rational)>>(
        rows: usize,
        cols: usize,
        entries: I,
    ) -> Self {
        let mut per_col: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); cols];
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            per_col[c].push((r, v));
        }
        let columns = per_col.into_iter().map(collect_sparse).collect();
        SparseMatrix { rows, cols, columns }
    }

    pub fn from_dense(d: &[Vec<Rational>]) -> Self {
        let rows = d.len();
        let cols = d.first().map_or(0, |r| r.len());
        Self::from_entries(
            rows,
            cols,
            d.iter().enumerate().flat_map(|(i, row)| {
                row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(j, v)| (i, j, v.clone()))
            }),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        match self.columns[c].binary_search_by_key(&r, |(i, _)| *i) {
            Ok(k) => self.columns[c][k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Nonzero entries ordered by `(row, col)`.
    pub fn entries(&self) -> Vec<(usize, usize, Rational)> {
        let mut e: Vec<_> = self
            .columns
            .iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().map(move |(i, v)| (*i, j, v.clone())))
            .collect();
        e.sort_by_key(|(i, j, _)| (*i, *j));
        e
    }

    pub fn row_vectors(&self) -> Vec<SparseVec> {
        let mut rows = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                rows[*i].push((j, v.clone()));
            }
        }
        rows
    }

    pub fn transpose(&self) -> SparseMatrix {
        SparseMatrix { rows: self.cols, cols: self.rows, columns: self.row_vectors() }
    }

    pub fn mul_vec(&self, v: &[(usize, Rational)]) -> SparseVec {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (j, x) in v {
            for (i, a) in &self.columns[*j] {
                *acc.entry(*i).or_default() += a * x;
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let columns = other.columns.iter().map(|c| self.mul_vec(c)).collect();
        SparseMatrix { rows: self.rows, cols: other.cols, columns }
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut d = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                d[*i][j] = v.clone();
            }
        }
        d
    }
}
