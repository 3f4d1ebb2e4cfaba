//! Finite pieces of the mixed complex `(C_•(A), ∂, B)` as matrices.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::DgAlgebra;
use crate::exactlin::{solve, Rational, SparseMatrix, SparseVec};
use crate::hochschild::{chain_basis, connes_b, hochschild_boundary, Chain, Word};

/// Which chain model carries the mixed complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainModel {
    /// The normalized complex `A ⊗ Ā^{⊗n}`.
    Normalized,
    /// The complex relative to the span of the vertex idempotents: bar entries
    /// are non-vertex frame elements and words must close up into cycles.
    VertexRelative,
}

/// One summand of the mixed complex, closed under `∂` and `B`.
#[derive(Clone, Debug)]
pub struct Sector {
    /// Total internal weight of the words (0 when no weights are attached).
    pub weight: i64,
    /// Basis words per chain degree `0..=top`.
    pub bases: Vec<Vec<Word>>,
    /// `d[m] : C_m → C_{m−1}`.
    pub d: Vec<SparseMatrix>,
    /// `b[m] : C_m → C_{m+1}` for `m < top`.
    pub b: Vec<SparseMatrix>,
}

impl Sector {
    pub fn dim(&self, m: usize) -> usize {
        self.bases.get(m).map_or(0, Vec::len)
    }
}

/// The mixed complex in chain degrees `0..=top`, split into sectors.
#[derive(Clone, Debug)]
pub struct MixedComplex {
    pub model: ChainModel,
    pub top: usize,
    /// Labels of the letters appearing in words.
    pub labels: Vec<String>,
    pub sectors: Vec<Sector>,
}

impl MixedComplex {
    /// Pick the smallest available model: vertex-relative when the algebra
    /// carries a frame with several vertices, otherwise normalized.
    pub fn build(a: &DgAlgebra, top: usize) -> Self {
        match a.frame() {
            Some(f) if f.vertices > 1 && f.elements[0].is_vertex => Self::relative(a, top),
            _ => Self::normalized(a, top),
        }
    }

    /// The normalized complex, split by total weight when weights exist.
    pub fn normalized(a: &DgAlgebra, top: usize) -> Self {
        let weight = |w: &Word| -> i64 { a.weights().map_or(0, |ws| w.iter().map(|&x| ws[x as usize] as i64).sum()) };
        let mut grouped: BTreeMap<i64, Vec<Vec<Word>>> = BTreeMap::new();
        for m in 0..=top {
            for w in chain_basis(a, m) {
                grouped.entry(weight(&w)).or_insert_with(|| vec![Vec::new(); top + 1])[m].push(w);
            }
        }
        let sectors = grouped
            .into_par_iter()
            .map(|(wt, bases)| {
                assemble(wt, bases, |w| hochschild_boundary(a, &Chain::basis(w.clone())), |w| {
                    connes_b(a, &Chain::basis(w.clone()))
                })
            })
            .collect();
        MixedComplex { model: ChainModel::Normalized, top, labels: a.labels().to_vec(), sectors }
    }

    /// The vertex-relative complex of an algebra with a frame.
    pub fn relative(a: &DgAlgebra, top: usize) -> Self {
        let fa = FrameAlgebra::new(a);
        let mut bases = vec![Vec::new(); top + 1];
        for (m, slot) in bases.iter_mut().enumerate() {
            *slot = fa.words(m);
        }
        let sector = assemble(0, bases, |w| fa.boundary(w), |w| fa.connes(w));
        MixedComplex { model: ChainModel::VertexRelative, top, labels: fa.labels.clone(), sectors: vec![sector] }
    }

    /// Total dimension of `C_m`.
    pub fn dim(&self, m: usize) -> usize {
        self.sectors.iter().map(|s| s.dim(m)).sum()
    }

    pub fn format_word(&self, w: &Word) -> String {
        let bar: Vec<&str> = w[1..].iter().map(|&i| self.labels[i as usize].as_str()).collect();
        format!("{}⊗[{}]", self.labels[w[0] as usize], bar.join("|"))
    }
}

fn to_column(index: &HashMap<&Word, usize>, c: &Chain) -> SparseVec {
    let mut v: SparseVec =
        c.iter().map(|(w, x)| (*index.get(w).expect("operators preserve the sector"), x.clone())).collect();
    v.sort_by_key(|(i, _)| *i);
    v
}

fn assemble<D, B>(weight: i64, bases: Vec<Vec<Word>>, bdry: D, connes: B) -> Sector
where
    D: Fn(&Word) -> Chain + Sync,
    B: Fn(&Word) -> Chain + Sync,
{
    let top = bases.len() - 1;
    let index: Vec<HashMap<&Word, usize>> =
        bases.iter().map(|ws| ws.iter().enumerate().map(|(i, w)| (w, i)).collect()).collect();
    let d = (0..=top)
        .into_par_iter()
        .map(|m| {
            if m == 0 {
                return SparseMatrix::zeros(0, bases[0].len());
            }
            let cols = bases[m].iter().map(|w| to_column(&index[m - 1], &bdry(w))).collect();
            SparseMatrix::from_columns(bases[m - 1].len(), cols)
        })
        .collect();
    let b = (0..top)
        .into_par_iter()
        .map(|m| {
            let cols = bases[m].iter().map(|w| to_column(&index[m + 1], &connes(w))).collect();
            SparseMatrix::from_columns(bases[m + 1].len(), cols)
        })
        .collect();
    Sector { weight, bases, d, b }
}

/// Structure constants in a vertex frame.
struct FrameAlgebra {
    labels: Vec<String>,
    source: Vec<usize>,
    target: Vec<usize>,
    is_vertex: Vec<bool>,
    vertex_index: Vec<usize>,
    mult: Vec<Vec<SparseVec>>,
}

impl FrameAlgebra {
    fn new(a: &DgAlgebra) -> Self {
        let frame = a.frame().expect("relative model needs a frame");
        let n = frame.elements.len();
        let change = SparseMatrix::from_columns(a.dim(), frame.elements.iter().map(|f| f.coords.clone()).collect());
        let mult = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let p = a.multiply(&frame.elements[i].coords, &frame.elements[j].coords);
                        solve(&change, &p).expect("frame is a basis")
                    })
                    .collect()
            })
            .collect();
        let mut vertex_index = vec![0; frame.vertices];
        for (k, f) in frame.elements.iter().enumerate() {
            if f.is_vertex {
                vertex_index[f.source] = k;
            }
        }
        FrameAlgebra {
            labels: frame.elements.iter().map(|f| f.label.clone()).collect(),
            source: frame.elements.iter().map(|f| f.source).collect(),
            target: frame.elements.iter().map(|f| f.target).collect(),
            is_vertex: frame.elements.iter().map(|f| f.is_vertex).collect(),
            vertex_index,
            mult,
        }
    }

    /// Cyclically composable words `a₀ ⊗ [a₁|…|a_m]` with non-vertex bar entries.
    fn words(&self, m: usize) -> Vec<Word> {
        let n = self.labels.len();
        let bar: Vec<usize> = (0..n).filter(|&k| !self.is_vertex[k]).collect();
        let mut out = Vec::new();
        let mut cur: Word = Word::new();
        fn rec(fa: &FrameAlgebra, bar: &[usize], m: usize, cur: &mut Word, out: &mut Vec<Word>) {
            let last = *cur.last().expect("nonempty") as usize;
            if cur.len() == m + 1 {
                if fa.target[last] == fa.source[cur[0] as usize] {
                    out.push(cur.clone());
                }
                return;
            }
            for &k in bar {
                if fa.source[k] == fa.target[last] {
                    cur.push(k as u16);
                    rec(fa, bar, m, cur, out);
                    cur.pop();
                }
            }
        }
        for a0 in 0..n {
            cur.push(a0 as u16);
            rec(self, &bar, m, &mut cur, &mut out);
            cur.pop();
        }
        out.sort();
        out
    }

    fn put(&self, out: &mut BTreeMap<Word, Rational>, w: Word, c: Rational) {
        if w[1..].iter().any(|&x| self.is_vertex[x as usize]) || c.is_zero() {
            return;
        }
        let e = out.entry(w).or_default();
        *e += &c;
    }

    fn finish(out: BTreeMap<Word, Rational>) -> Chain {
        Chain::from_terms(out.into_iter().filter(|(_, v)| !v.is_zero())).unwrap_or_default()
    }

    /// Classical Hochschild boundary with vertex terms in bar slots dropped.
    fn boundary(&self, w: &Word) -> Chain {
        let n = w.len() - 1;
        let mut out = BTreeMap::new();
        if n == 0 {
            return Chain::new();
        }
        for (k, v) in &self.mult[w[0] as usize][w[1] as usize] {
            let mut nw: Word = Word::new();
            nw.push(*k as u16);
            nw.extend(w[2..].iter().copied());
            self.put(&mut out, nw, v.clone());
        }
        for i in 1..n {
            for (k, v) in &self.mult[w[i] as usize][w[i + 1] as usize] {
                let mut nw: Word = w[..i].iter().copied().collect();
                nw.push(*k as u16);
                nw.extend(w[i + 2..].iter().copied());
                self.put(&mut out, nw, v * &Rational::sign(i as i64));
            }
        }
        for (k, v) in &self.mult[w[n] as usize][w[0] as usize] {
            let mut nw: Word = Word::new();
            nw.push(*k as u16);
            nw.extend(w[1..n].iter().copied());
            self.put(&mut out, nw, v * &Rational::sign(n as i64));
        }
        Self::finish(out)
    }

    /// `B = Σ_i (−1)^{ni} e ⊗ [a_i|…|a_n|a₀|…|a_{i−1}]` with the vertex `e`
    /// at which the rotated word starts.
    fn connes(&self, w: &Word) -> Chain {
        if self.is_vertex[w[0] as usize] {
            return Chain::new();
        }
        let n = w.len() - 1;
        let mut out = BTreeMap::new();
        for i in 0..=n {
            let first = w[i] as usize;
            let mut nw: Word = Word::new();
            nw.push(self.vertex_index[self.source[first]] as u16);
            for r in 0..=n {
                nw.push(w[(i + r) % (n + 1)]);
            }
            self.put(&mut out, nw, Rational::sign((n * i) as i64));
        }
        Self::finish(out)
    }
}
