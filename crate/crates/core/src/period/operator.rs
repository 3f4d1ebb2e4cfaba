//! `t`-linear operators on a finite piece of the normalized Hochschild
//! complex, with the contraction data needed to invert `[∂ + tB, ·]`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::algebra::DgAlgebra;
use crate::calculus::{contraction, lie_action};
use crate::coeff::LinearSpace;
use crate::exactlin::{axpy, homology_at, solve, Echelon, Rational, SparseMatrix, SparseVec};
use crate::hochschild::{chain_basis, connes_b, hochschild_boundary, Chain, Cochain, Word};

/// `(source chain degree, chain degree shift, t-exponent)`.
pub type BlockKey = (usize, i64, i64);

/// Which basis chains span the finite piece.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Selection {
    /// All chains of degree at most the bound. Closed under `∂` only.
    Degree(usize),
    /// All chains of weight at most the bound. Closed under `∂`, `B` and
    /// every operator that does not raise weight.
    Weight(usize),
}

/// Spanning words of the selected subspace, per chain degree.
#[derive(Clone, Debug)]
pub struct ChainSpace {
    pub algebra: DgAlgebra,
    pub selection: Selection,
    bases: Vec<Vec<Word>>,
    index: Vec<HashMap<Word, usize>>,
}

fn word_weight(w: &[i32], word: &Word) -> usize {
    word.iter().map(|&i| w[i as usize] as usize).sum()
}

impl ChainSpace {
    pub fn new(a: &DgAlgebra, selection: Selection) -> Self {
        let (top, bound) = match selection {
            Selection::Degree(n) => (n, None),
            Selection::Weight(n) => (n, Some(n)),
        };
        let weights = a.weights().map(<[i32]>::to_vec);
        let bases: Vec<Vec<Word>> = (0..=top)
            .into_par_iter()
            .map(|m| {
                let all = chain_basis(a, m);
                match (bound, &weights) {
                    (Some(b), Some(w)) => all.into_iter().filter(|x| word_weight(w, x) <= b).collect(),
                    _ => all,
                }
            })
            .collect();
        let index = bases.iter().map(|b| b.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect()).collect();
        ChainSpace { algebra: a.clone(), selection, bases, index }
    }

    pub fn top(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn dim(&self, m: usize) -> usize {
        self.bases.get(m).map_or(0, Vec::len)
    }

    pub fn total_dim(&self) -> usize {
        self.bases.iter().map(Vec::len).sum()
    }

    pub fn word(&self, m: usize, i: usize) -> &Word {
        &self.bases[m][i]
    }

    /// Coordinates of a homogeneous chain of degree `m`; terms outside the
    /// selection are dropped.
    pub fn coords(&self, m: usize, c: &Chain) -> SparseVec {
        let mut v: SparseVec = c.iter().filter_map(|(w, x)| self.index[m].get(w).map(|&i| (i, x.clone()))).collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }

    pub fn chain(&self, m: usize, v: &[(usize, Rational)]) -> Chain {
        let mut c = Chain::new();
        for (i, x) in v {
            c.add_term(self.bases[m][*i].clone(), x);
        }
        c
    }

    fn target(&self, m: usize, d: i64) -> Option<usize> {
        let t = m as i64 + d;
        (t >= 0 && t as usize <= self.top()).then_some(t as usize)
    }

    /// The operator `t^r f` with `f` of chain degree `d`.
    pub fn op_from_fn(&self, d: i64, r: i64, f: impl Fn(&Chain) -> Chain + Sync) -> TOp {
        let mut out = TOp::default();
        for m in 0..=self.top() {
            let Some(t) = self.target(m, d) else { continue };
            let cols: Vec<SparseVec> =
                self.bases[m].par_iter().map(|w| self.coords(t, &f(&Chain::basis(w.clone())))).collect();
            out.insert((m, d, r), SparseMatrix::from_columns(self.dim(t), cols));
        }
        out
    }

    pub fn boundary(&self) -> TOp {
        self.op_from_fn(-1, 0, |c| hochschild_boundary(&self.algebra, c))
    }

    /// `tB`.
    pub fn connes_t(&self) -> TOp {
        self.op_from_fn(1, 1, |c| connes_b(&self.algebra, c))
    }

    /// `∂ + tB`.
    pub fn periodic_differential(&self) -> TOp {
        let mut d = self.boundary();
        d.add_scaled(&self.connes_t(), &Rational::one());
        d
    }

    /// `L_P`, split by arity (degree-0 algebras).
    pub fn lie(&self, p: &Cochain) -> TOp {
        let mut out = TOp::default();
        for l in p.arities() {
            let pl = p.arity_part(l);
            out.add_scaled(&self.op_from_fn(1 - l as i64, 0, |c| lie_action(&self.algebra, &pl, c)), &Rational::one());
        }
        out
    }

    /// `t^r I_P`, split by arity (degree-0 algebras).
    pub fn contraction_t(&self, p: &Cochain, r: i64) -> TOp {
        let mut out = TOp::default();
        for l in p.arities() {
            let pl = p.arity_part(l);
            out.add_scaled(&self.op_from_fn(-(l as i64), r, |c| contraction(&self.algebra, &pl, c)), &Rational::one());
        }
        out
    }

    pub fn identity(&self) -> TOp {
        let mut out = TOp::default();
        for m in 0..=self.top() {
            out.insert((m, 0, 0), SparseMatrix::identity(self.dim(m)));
        }
        out
    }
}

fn mat_axpy(y: &SparseMatrix, c: &Rational, x: &SparseMatrix) -> SparseMatrix {
    debug_assert_eq!((y.rows(), y.cols()), (x.rows(), x.cols()));
    let cols = y.columns().iter().zip(x.columns()).map(|(a, b)| axpy(a, c, b)).collect();
    SparseMatrix::from_columns(y.rows(), cols)
}

/// A `t`-linear operator `Σ t^r f_{m,d}` stored blockwise.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TOp {
    blocks: BTreeMap<BlockKey, SparseMatrix>,
}

impl LinearSpace for TOp {
    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (k, m) in &other.blocks {
            let next = match self.blocks.get(k) {
                Some(y) => mat_axpy(y, c, m),
                None => mat_axpy(&SparseMatrix::zeros(m.rows(), m.cols()), c, m),
            };
            if next.is_zero() {
                self.blocks.remove(k);
            } else {
                self.blocks.insert(*k, next);
            }
        }
    }

    fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }
}

impl TOp {
    pub fn blocks(&self) -> &BTreeMap<BlockKey, SparseMatrix> {
        &self.blocks
    }

    pub fn block(&self, key: BlockKey) -> Option<&SparseMatrix> {
        self.blocks.get(&key)
    }

    pub fn insert(&mut self, key: BlockKey, m: SparseMatrix) {
        if m.is_zero() {
            return;
        }
        let mut single = TOp::default();
        single.blocks.insert(key, m);
        self.add_scaled(&single, &Rational::one());
    }

    /// `0` for even, `1` for odd; the parity of `t^r f` is that of `d − 2r`.
    pub fn parity(&self) -> u8 {
        self.blocks.keys().next().map_or(0, |(_, d, r)| (d - 2 * r).rem_euclid(2) as u8)
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &TOp) -> TOp {
        let pieces: Vec<(BlockKey, SparseMatrix)> = rhs
            .blocks
            .par_iter()
            .flat_map_iter(|(&(m, d1, r1), b)| {
                let t = (m as i64 + d1) as usize;
                self.blocks
                    .range((t, i64::MIN, i64::MIN)..=(t, i64::MAX, i64::MAX))
                    .map(move |(&(_, d2, r2), a)| ((m, d1 + d2, r1 + r2), a.mul(b)))
                    .collect::<Vec<_>>()
            })
            .collect();
        let mut out = TOp::default();
        for (k, m) in pieces {
            out.insert(k, m);
        }
        out
    }

    /// Graded commutator `[self, rhs]`.
    pub fn commutator(&self, rhs: &TOp) -> TOp {
        let mut out = self.compose(rhs);
        let s = if self.parity() * rhs.parity() == 1 { Rational::one() } else { -Rational::one() };
        out.add_scaled(&rhs.compose(self), &s);
        out
    }

    pub fn exponent_part(&self, r: i64) -> TOp {
        TOp { blocks: self.blocks.iter().filter(|(k, _)| k.2 == r).map(|(k, m)| (*k, m.clone())).collect() }
    }

    pub fn exponents(&self) -> Vec<i64> {
        let mut e: Vec<i64> = self.blocks.keys().map(|k| k.2).collect();
        e.sort_unstable();
        e.dedup();
        e
    }

    /// Keep blocks whose `t`-exponent lies in `[lo, hi]`.
    pub fn restrict_exponents(&self, lo: i64, hi: i64) -> TOp {
        TOp { blocks: self.blocks.iter().filter(|(k, _)| (lo..=hi).contains(&k.2)).map(|(k, m)| (*k, m.clone())).collect() }
    }

    pub fn nnz(&self) -> usize {
        self.blocks.values().map(SparseMatrix::nnz).sum()
    }
}

/// A strong deformation retract of `(C, ∂)` onto chosen homology
/// representatives: `∂h + h∂ = 1 − ιp`, `p∂ = 0`, `∂ι = 0`.
#[derive(Clone, Debug)]
pub struct Retract {
    /// `p_m : C_m → H_m`.
    pub p: Vec<SparseMatrix>,
    /// `ι_m : H_m → C_m`.
    pub iota: Vec<SparseMatrix>,
    pub h: TOp,
    pub pi: TOp,
}

impl Retract {
    pub fn new(space: &ChainSpace, boundary: &TOp) -> Self {
        let top = space.top();
        let d = |m: usize| -> SparseMatrix {
            if m == 0 || m > top {
                SparseMatrix::zeros(if m == 0 { 0 } else { space.dim(m - 1) }, space.dim(m.min(top + 1)))
            } else {
                boundary.block((m, -1, 0)).cloned().unwrap_or_else(|| SparseMatrix::zeros(space.dim(m - 1), space.dim(m)))
            }
        };
        // Columns of ∂_m with independent images, per degree.
        let pivots: Vec<Vec<usize>> = (0..=top)
            .map(|m| {
                let dm = d(m);
                let mut e = Echelon::new();
                (0..dm.cols()).filter(|&j| e.insert(dm.column(j)).is_some()).collect()
            })
            .collect();
        let per_degree: Vec<(SparseMatrix, SparseMatrix, SparseMatrix)> = (0..=top)
            .into_par_iter()
            .map(|m| {
                let n = space.dim(m);
                let d_in = if m < top { d(m + 1) } else { SparseMatrix::zeros(n, 0) };
                let d_out = if m == 0 { SparseMatrix::zeros(0, n) } else { d(m) };
                let reps = homology_at(&d_in, &d_out).expect("∂² = 0").representatives;
                let up: &[usize] = if m < top { &pivots[m + 1] } else { &[] };
                let mut frame = Echelon::new();
                for &j in up {
                    frame.insert(d_in.column(j)).expect("boundary basis is independent");
                }
                for r in &reps {
                    frame.insert(r).expect("representatives are independent of boundaries");
                }
                for &j in &pivots[m] {
                    frame.insert(&[(j, Rational::one())]).expect("complement of cycles");
                }
                assert_eq!(frame.len(), n, "adapted basis spans C_{m}");
                let (nb, nh) = (up.len(), reps.len());
                let mut hcols = Vec::with_capacity(n);
                let mut pcols = Vec::with_capacity(n);
                for i in 0..n {
                    let (_, combo) = frame.reduce(&[(i, Rational::one())]);
                    let mut hv: SparseVec = Vec::new();
                    let mut pv: SparseVec = Vec::new();
                    for (g, c) in combo {
                        if g < nb {
                            hv.push((up[g], c));
                        } else if g < nb + nh {
                            pv.push((g - nb, c));
                        }
                    }
                    hv.sort_by_key(|(k, _)| *k);
                    hcols.push(hv);
                    pcols.push(pv);
                }
                let hm = SparseMatrix::from_columns(if m < top { space.dim(m + 1) } else { 0 }, hcols);
                (hm, SparseMatrix::from_columns(nh, pcols), SparseMatrix::from_columns(n, reps))
            })
            .collect();
        let mut h = TOp::default();
        let mut pi = TOp::default();
        let mut p = Vec::new();
        let mut iota = Vec::new();
        for (m, (hm, pm, im)) in per_degree.into_iter().enumerate() {
            if m < top {
                h.insert((m, 1, 0), hm);
            }
            pi.insert((m, 0, 0), im.mul(&pm));
            p.push(pm);
            iota.push(im);
        }
        Retract { p, iota, h, pi }
    }

    pub fn hdim(&self, m: usize) -> usize {
        self.p.get(m).map_or(0, SparseMatrix::rows)
    }

    /// The map induced on homology by one block of a `∂`-closed operator.
    pub fn on_homology(&self, key: BlockKey, m: &SparseMatrix) -> SparseMatrix {
        let t = (key.0 as i64 + key.1) as usize;
        self.p[t].mul(&m.mul(&self.iota[key.0]))
    }

    /// `ι z p` for homology-level blocks `z`.
    pub fn lift(&self, z: &BTreeMap<BlockKey, SparseMatrix>) -> TOp {
        let mut out = TOp::default();
        for (&(m, d, r), zm) in z {
            let t = (m as i64 + d) as usize;
            out.insert((m, d, r), self.iota[t].mul(&zm.mul(&self.p[m])));
        }
        out
    }
}

/// Why `[∂ + tB, c] = E` has no solution in the truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stuck {
    pub exponent: i64,
}

/// Statistics of one solve.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct SolveStats {
    /// Exponents at which a homology-level correction was needed.
    pub adjustments: usize,
    pub lowest_exponent: Option<i64>,
}

/// Solve `[∂ + tB, c] = e` for `c`, exponent by exponent. `e` must be closed.
/// At each exponent the right-hand side is first made null on homology by a
/// chain-map correction one exponent lower, then inverted with the retract.
pub fn solve_commutator(
    space: &ChainSpace,
    retract: &Retract,
    connes: &TOp,
    e: &TOp,
    max_exponent: i64,
) -> Result<(TOp, SolveStats), Stuck> {
    let mut stats = SolveStats::default();
    let Some(&r0) = e.exponents().first() else { return Ok((TOp::default(), stats)) };
    let pe = e.parity();
    let pc = 1 - pe;
    let mut c = TOp::default();
    let mut prev = TOp::default();
    for r in r0..=max_exponent {
        let mut f = e.exponent_part(r);
        f.add_scaled(&connes.commutator(&prev), &-Rational::one());
        let f_h = homology_blocks(retract, &f);
        if !f_h.is_empty() {
            let mut shifts: Vec<i64> = f_h.keys().map(|k| k.1).collect();
            shifts.sort_unstable();
            shifts.dedup();
            let mut z = BTreeMap::new();
            for df in shifts {
                let part = homology_correction(space, retract, connes, &f_h, df - 1, r - 1, pc)
                    .ok_or(Stuck { exponent: r })?;
                z.extend(part);
            }
            let zc = retract.lift(&z);
            stats.adjustments += 1;
            c.add_scaled(&zc, &Rational::one());
            prev.add_scaled(&zc, &Rational::one());
            f.add_scaled(&connes.commutator(&zc), &-Rational::one());
            debug_assert!(homology_blocks(retract, &f).is_empty());
        }
        // c_r = h f + (−1)^{|f|} π f h.
        let mut cr = retract.h.compose(&f);
        let sign_f = if pe == 1 { -Rational::one() } else { Rational::one() };
        cr.add_scaled(&retract.pi.compose(&f).compose(&retract.h), &sign_f);
        c.add_scaled(&cr, &Rational::one());
        prev = cr;
        if prev.is_zero() && e.exponents().iter().all(|&x| x <= r) {
            break;
        }
    }
    stats.lowest_exponent = c.exponents().first().copied();
    Ok((c, stats))
}

fn homology_blocks(retract: &Retract, f: &TOp) -> BTreeMap<BlockKey, SparseMatrix> {
    f.blocks()
        .iter()
        .map(|(k, m)| (*k, retract.on_homology(*k, m)))
        .filter(|(_, m)| !m.is_zero())
        .collect()
}

/// Find homology-level `z` of chain shift `dz`, exponent `rz` and parity
/// `pz` with `[B_*, z] = f_*` on the blocks of shift `dz + 1`.
fn homology_correction(
    space: &ChainSpace,
    retract: &Retract,
    connes: &TOp,
    f_h: &BTreeMap<BlockKey, SparseMatrix>,
    dz: i64,
    rz: i64,
    pz: u8,
) -> Option<BTreeMap<BlockKey, SparseMatrix>> {
    let top = space.top();
    let b_h = |m: usize| -> SparseMatrix {
        match connes.block((m, 1, 1)) {
            Some(b) if m < top => retract.p[m + 1].mul(&b.mul(&retract.iota[m])),
            _ => SparseMatrix::zeros(retract.hdim(m + 1), retract.hdim(m)),
        }
    };
    // Unknown blocks z_m : H_m → H_{m+dz}.
    let mut offsets: BTreeMap<usize, usize> = BTreeMap::new();
    let mut n_unknowns = 0;
    for m in 0..=top {
        let t = m as i64 + dz;
        if t >= 0 && t as usize <= top {
            offsets.insert(m, n_unknowns);
            n_unknowns += retract.hdim(t as usize) * retract.hdim(m);
        }
    }
    let s = if pz == 1 { -Rational::one() } else { Rational::one() };
    // Equations: (B z_m − (−1)^{pz} z_{m+1} B)[i, j] = f_m[i, j] for every source m.
    let mut entries: Vec<(usize, usize, Rational)> = Vec::new();
    let mut rhs: SparseVec = Vec::new();
    let mut row = 0;
    for m in 0..=top {
        let t = m as i64 + dz + 1;
        if t < 0 || t as usize > top {
            continue;
        }
        let t = t as usize;
        let (rows, cols) = (retract.hdim(t), retract.hdim(m));
        if rows * cols == 0 {
            continue;
        }
        let target = f_h.get(&(m, dz + 1, rz + 1));
        let left = offsets.get(&m).map(|&o| (o, b_h(t - 1)));
        let right = offsets.get(&(m + 1)).filter(|_| m < top).map(|&o| (o, b_h(m)));
        for i in 0..rows {
            for j in 0..cols {
                // (B z_m)[i, j] = Σ_k B[i, k] z_m[k, j]
                if let Some((o, b)) = &left {
                    let inner = retract.hdim(t - 1);
                    for k in 0..inner {
                        let v = b.get(i, k);
                        if !v.is_zero() {
                            entries.push((row, o + k * cols + j, v));
                        }
                    }
                }
                // (z_{m+1} B)[i, j] = Σ_k z_{m+1}[i, k] B[k, j]
                if let Some((o, b)) = &right {
                    let inner = retract.hdim(m + 1);
                    for k in 0..inner {
                        let v = b.get(k, j);
                        if !v.is_zero() {
                            entries.push((row, o + i * inner + k, &-&s * &v));
                        }
                    }
                }
                if let Some(fm) = target {
                    let v = fm.get(i, j);
                    if !v.is_zero() {
                        rhs.push((row, v));
                    }
                }
                row += 1;
            }
        }
    }
    let a = SparseMatrix::from_entries(row, n_unknowns, entries);
    let sol = solve(&a, &rhs)?;
    let mut z = BTreeMap::new();
    for (&m, &o) in &offsets {
        let t = (m as i64 + dz) as usize;
        let (rows, cols) = (retract.hdim(t), m);
        let cols = retract.hdim(cols);
        let block: Vec<(usize, usize, Rational)> = sol
            .iter()
            .filter(|(i, _)| *i >= o && *i < o + rows * cols)
            .map(|(i, v)| ((i - o) / cols, (i - o) % cols, v.clone()))
            .collect();
        if !block.is_empty() {
            z.insert((m, dz, rz), SparseMatrix::from_entries(rows, cols, block));
        }
    }
    Some(z)
}
