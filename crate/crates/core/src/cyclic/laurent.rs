//! Truncated Laurent totalizations of a mixed complex.
//!
//! The total complex in degree `n` has one block `C_{n+2i} · t^i` per
//! exponent `i` of the window, with differential `∂ + tB`: the diagonal
//! block is `∂` and the block `t^i → t^{i+1}` is `B`. Exponents `≥ p` form a
//! subcomplex and exponents `> q` form a subcomplex of that, so every window
//! `[p, q]` is a genuine complex.

use serde::{Deserialize, Serialize};

use crate::exactlin::{rref, Echelon, SparseMatrix, SparseVec};

use super::mixed::{MixedComplex, Sector};
use super::CyclicError;

/// Which Laurent ring the totalization models.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LaurentVariant {
    /// `C[[t]]`: negative cyclic.
    Negative,
    /// `C((t))`: periodic cyclic.
    Periodic,
    /// `C((t))/tC[[t]]`: cyclic.
    Cyclic,
}

/// Exponents of `t` kept in a truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TWindow {
    pub lo: i64,
    pub hi: i64,
}

impl Default for TWindow {
    fn default() -> Self {
        TWindow { lo: -6, hi: 6 }
    }
}

impl TWindow {
    pub fn new(lo: i64, hi: i64) -> Result<Self, CyclicError> {
        if lo > 0 || hi < 2 {
            return Err(CyclicError::BadWindow { lo, hi });
        }
        Ok(TWindow { lo, hi })
    }
}

#[derive(Clone, Copy, Debug)]
struct Block {
    m: usize,
    offset: usize,
}

/// The mixed complex together with a window, ready for homology queries.
#[derive(Clone, Debug)]
pub struct TruncatedLaurentComplex {
    pub mixed: MixedComplex,
    pub window: TWindow,
}

/// Rank of the span of `vs` modulo the span of `bnd`.
pub(crate) fn rank_modulo(vs: &[SparseVec], bnd: &[SparseVec]) -> usize {
    let mut e = Echelon::new();
    for b in bnd {
        e.insert(b);
    }
    let base = e.len();
    for v in vs {
        e.insert(v);
    }
    e.len() - base
}

fn shift(v: &SparseVec, by: usize) -> SparseVec {
    v.iter().map(|(i, x)| (i + by, x.clone())).collect()
}

fn prefix(v: &SparseVec, len: usize) -> SparseVec {
    v.iter().filter(|(i, _)| *i < len).cloned().collect()
}

impl TruncatedLaurentComplex {
    /// Chain degree needed to evaluate degrees up to `max_degree` with the
    /// lookahead used for stabilization.
    pub fn required_top(window: TWindow, max_degree: i64) -> usize {
        (max_degree + 1 + 2 * (window.hi + 2)).max(1) as usize
    }

    pub fn new(mixed: MixedComplex, window: TWindow) -> Self {
        TruncatedLaurentComplex { mixed, window }
    }

    /// Exponent range kept by a variant.
    pub fn exponents(&self, v: LaurentVariant) -> (i64, i64) {
        let TWindow { lo, hi } = self.window;
        match v {
            LaurentVariant::Negative => (lo.max(0), hi),
            LaurentVariant::Periodic => (lo, hi),
            LaurentVariant::Cyclic => (lo, hi.min(0)),
        }
    }

    fn layout(&self, s: &Sector, n: i64, p: i64, q: i64) -> (Vec<(i64, Block)>, usize) {
        let mut out = Vec::new();
        let mut off = 0;
        for i in p..=q {
            let m = n + 2 * i;
            if m < 0 {
                continue;
            }
            let m = m as usize;
            assert!(m <= self.mixed.top, "chain degree {m} beyond the built range {}", self.mixed.top);
            out.push((i, Block { m, offset: off }));
            off += s.dim(m);
        }
        (out, off)
    }

    /// `∂ + tB : Tot_n → Tot_{n−1}` on exponents `[p, q]` of one sector.
    fn differential(&self, s: &Sector, n: i64, p: i64, q: i64) -> SparseMatrix {
        let (src, src_dim) = self.layout(s, n, p, q);
        let (tgt, tgt_dim) = self.layout(s, n - 1, p, q);
        let find = |i: i64| tgt.iter().find(|(j, _)| *j == i).map(|(_, b)| *b);
        let mut cols: Vec<SparseVec> = vec![Vec::new(); src_dim];
        for (i, blk) in &src {
            for c in 0..s.dim(blk.m) {
                let mut col: SparseVec = Vec::new();
                if blk.m > 0 {
                    if let Some(t) = find(*i) {
                        col.extend(shift(s.d[blk.m].column(c), t.offset));
                    }
                }
                if *i < q {
                    if let Some(t) = find(i + 1) {
                        col.extend(shift(s.b[blk.m].column(c), t.offset));
                    }
                }
                col.sort_by_key(|(r, _)| *r);
                cols[blk.offset + c] = col;
            }
        }
        SparseMatrix::from_columns(tgt_dim, cols)
    }

    /// The whole differential in degree `n` for a variant, summed over sectors.
    pub fn total_differential(&self, v: LaurentVariant, n: i64) -> SparseMatrix {
        let (p, q) = self.exponents(v);
        let parts: Vec<SparseMatrix> = self.mixed.sectors.iter().map(|s| self.differential(s, n, p, q)).collect();
        let rows: usize = parts.iter().map(SparseMatrix::rows).sum();
        let mut cols = Vec::new();
        let mut roff = 0;
        for m in &parts {
            cols.extend(m.columns().iter().map(|c| shift(c, roff)));
            roff += m.rows();
        }
        SparseMatrix::from_columns(rows, cols)
    }

    /// `D_{n−1} ∘ D_n = 0`.
    pub fn squares_to_zero(&self, v: LaurentVariant, n: i64) -> bool {
        self.total_differential(v, n - 1).mul(&self.total_differential(v, n)).is_zero()
    }

    fn cycles(&self, s: &Sector, n: i64, p: i64, q: i64) -> Vec<SparseVec> {
        rref(&self.differential(s, n, p, q)).kernel
    }

    fn boundaries(&self, s: &Sector, n: i64, p: i64, q: i64) -> Vec<SparseVec> {
        self.differential(s, n + 1, p, q).columns().to_vec()
    }

    /// Cycles of the window `[p, q+2]` cut down to `[p, q]`: the image of
    /// the longer truncation, which agrees with the limit once stable.
    fn stable_cycles(&self, s: &Sector, n: i64, p: i64, q: i64) -> Vec<SparseVec> {
        let (_, len) = self.layout(s, n, p, q);
        self.cycles(s, n, p, q + 2).iter().map(|z| prefix(z, len)).collect()
    }

    fn stable_dim(&self, n: i64, p: i64, q: i64) -> usize {
        self.mixed
            .sectors
            .iter()
            .map(|s| rank_modulo(&self.stable_cycles(s, n, p, q), &self.boundaries(s, n, p, q)))
            .sum()
    }

    /// Degree `n` homology of an upward-unbounded variant (negative or
    /// periodic), checked for stability against the window two steps shorter.
    pub fn stable_homology(&self, v: LaurentVariant, n: i64) -> Result<usize, CyclicError> {
        let (p, q) = self.exponents(v);
        let TWindow { lo, hi } = self.window;
        let lowest = (-n).div_euclid(2) + (-n).rem_euclid(2);
        if lowest > q - 2 || (v == LaurentVariant::Periodic && p > -((n + 1).div_euclid(2))) {
            return Err(CyclicError::NotStabilized { degree: n, lo, hi });
        }
        let big = self.stable_dim(n, p, q);
        let small = self.stable_dim(n, p, q - 2);
        if big != small {
            return Err(CyclicError::NotStabilized { degree: n, lo, hi });
        }
        Ok(big)
    }

    /// Cyclic homology `HC_n`, exact once the window reaches far enough down.
    pub fn cyclic_homology(&self, n: i64) -> Result<usize, CyclicError> {
        let (p, _) = self.exponents(LaurentVariant::Cyclic);
        self.finite_homology(n, p, 0)
    }

    fn finite_homology(&self, n: i64, p: i64, q: i64) -> Result<usize, CyclicError> {
        let needed = -((n + 1).div_euclid(2));
        if p > needed {
            return Err(CyclicError::NotStabilized { degree: n, lo: self.window.lo, hi: self.window.hi });
        }
        Ok(self
            .mixed
            .sectors
            .iter()
            .map(|s| rank_modulo(&self.cycles(s, n, p, q), &self.boundaries(s, n, p, q)))
            .sum())
    }

    /// Ranks of the maps in `… → HN_n →ι HP_n →π HC_{n−2} →δ HN_{n−1} → …`.
    pub fn sbi_ranks(&self, n: i64) -> SbiRanks {
        let TWindow { lo, hi } = self.window;
        let mut r = SbiRanks::default();
        for s in &self.mixed.sectors {
            // ι: embed stable negative cycles into the periodic window.
            let (pl, _) = self.layout(s, n, lo, hi);
            let off0 = pl.iter().find(|(i, _)| *i >= 0).map_or(0, |(_, b)| b.offset);
            let zn: Vec<SparseVec> = self.stable_cycles(s, n, 0, hi).iter().map(|z| shift(z, off0)).collect();
            r.iota += rank_modulo(&zn, &self.boundaries(s, n, lo, hi));
            // π: keep the strictly negative exponents.
            let (_, qlen) = self.layout(s, n, lo, -1);
            let zp: Vec<SparseVec> = self.stable_cycles(s, n, lo, hi).iter().map(|z| prefix(z, qlen)).collect();
            r.pi += rank_modulo(&zp, &self.boundaries(s, n, lo, -1));
            // δ: B of the t^{−1} component, placed at t^0 in degree n−1.
            if n >= 1 {
                let (ql, _) = self.layout(s, n, lo, -1);
                if let Some((_, blk)) = ql.iter().find(|(i, _)| *i == -1) {
                    let len = s.dim(blk.m);
                    let img: Vec<SparseVec> = self
                        .cycles(s, n, lo, -1)
                        .iter()
                        .map(|z| {
                            let comp: SparseVec = z
                                .iter()
                                .filter(|(i, _)| *i >= blk.offset && *i < blk.offset + len)
                                .map(|(i, x)| (i - blk.offset, x.clone()))
                                .collect();
                            s.b[blk.m].mul_vec(&comp)
                        })
                        .collect();
                    r.delta += rank_modulo(&img, &self.boundaries(s, n - 1, 0, hi));
                }
            }
        }
        r
    }

    /// Homology of `(C_*, ∂)` sector by sector.
    pub fn hochschild_dim(&self, m: usize) -> usize {
        self.mixed.sectors.iter().map(|s| hh_dim(s, m)).sum()
    }

    /// Rank of `B` on Hochschild homology, `HH_m → HH_{m+1}`.
    pub fn connes_rank_on_homology(&self, m: usize) -> usize {
        self.mixed
            .sectors
            .iter()
            .map(|s| {
                let z = rref(&s.d[m]).kernel;
                let img: Vec<SparseVec> = z.iter().map(|v| s.b[m].mul_vec(v)).collect();
                rank_modulo(&img, s.d[m + 1].columns())
            })
            .sum()
    }

    /// `dim F^i HP_n`: classes with a representative in exponents `≥ i`.
    pub fn filtration_dim(&self, n: i64, i: i64) -> usize {
        let TWindow { lo, hi } = self.window;
        self.mixed
            .sectors
            .iter()
            .map(|s| {
                let (pl, _) = self.layout(s, n, lo, hi);
                let off = pl.iter().find(|(j, _)| *j >= i).map_or(0, |(_, b)| b.offset);
                let (_, plen) = self.layout(s, n, lo, hi);
                let (sub, _) = self.layout(s, n, i, hi);
                if sub.is_empty() {
                    return 0;
                }
                let z: Vec<SparseVec> = self
                    .stable_cycles(s, n, i, hi)
                    .iter()
                    .map(|z| shift(z, off))
                    .filter(|z| z.iter().all(|(k, _)| *k < plen))
                    .collect();
                rank_modulo(&z, &self.boundaries(s, n, lo, hi))
            })
            .sum()
    }
}

fn hh_dim(s: &Sector, m: usize) -> usize {
    let z = rref(&s.d[m]).kernel;
    rank_modulo(&z, s.d[m + 1].columns())
}

/// Ranks of the three maps in one step of the long exact sequence.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SbiRanks {
    pub iota: usize,
    pub pi: usize,
    pub delta: usize,
}
