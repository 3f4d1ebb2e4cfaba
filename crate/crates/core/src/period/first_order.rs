use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::DgAlgebra;
use crate::calculus::contraction;
use crate::cyclic::{hodge_spectral_sequence, TWindow};
use crate::exactlin::{rank, Rational, SparseMatrix};
use crate::hochschild::{hochschild_cohomology, hochschild_homology, Chain, ChainHomology, Cochain, HochschildError};

use super::PeriodError;

/// One block `HH_source → HH_target` of a period class, at `t`-exponent
/// `(target − source)/2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodBlock {
    pub source: usize,
    pub target: usize,
    pub exponent: i64,
    /// Row `j` holds the coordinates of the image of the `j`-th source class.
    /// Stored row-major as `rows × cols = dim target × dim source`.
    pub matrix: Vec<Vec<Rational>>,
}

impl PeriodBlock {
    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(Rational::is_zero)
    }
}

/// A class in `End(HH)((t)) / End(HH)[[t]]`, stored through its strictly
/// negative `t`-exponent blocks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PeriodClass {
    pub label: String,
    pub blocks: Vec<PeriodBlock>,
}

impl PeriodClass {
    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(PeriodBlock::is_zero)
    }

    /// All block entries in a fixed order, for rank computations.
    pub fn flatten(&self) -> Vec<Rational> {
        self.blocks.iter().flat_map(|b| b.matrix.iter().flatten().cloned()).collect()
    }

    pub fn nonzero_blocks(&self) -> impl Iterator<Item = &PeriodBlock> {
        self.blocks.iter().filter(|b| !b.is_zero())
    }
}

/// The matrix of `f` from `HH_source` to `HH_target`, both read from `hh`.
pub(crate) fn induced_block(
    hh: &ChainHomology,
    source: usize,
    target: usize,
    exponent: i64,
    f: impl Fn(&Chain) -> Chain + Sync,
) -> Result<PeriodBlock, PeriodError> {
    let src = hh.groups.get(&(source as i64)).ok_or(PeriodError::DegreeOutOfComputedRange { degree: source as i64 })?;
    let tgt = hh.groups.get(&(target as i64)).ok_or(PeriodError::DegreeOutOfComputedRange { degree: target as i64 })?;
    let cols = src
        .representatives()
        .par_iter()
        .map(|r| tgt.class_of(&f(r)).map_err(|_| PeriodError::NotACycle))
        .collect::<Result<Vec<_>, _>>()?;
    let rows = (0..tgt.dim()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    Ok(PeriodBlock { source, target, exponent, matrix: rows })
}

fn hh2(a: &DgAlgebra) -> Result<Vec<Cochain>, PeriodError> {
    Ok(hochschild_cohomology(a, 2..=2, 3)?.groups[&2].representatives())
}

/// For each `HH²` representative `P`, the blocks of `I_P : HH_i → HH_{i−2}`
/// for `i` in `degrees` with `i ≥ 2`, all at `t`-exponent `−1`.
pub fn first_order_period_matrix(
    a: &DgAlgebra,
    degrees: RangeInclusive<usize>,
) -> Result<Vec<PeriodClass>, PeriodError> {
    let reps = hh2(a)?;
    if reps.is_empty() {
        return Ok(Vec::new());
    }
    let lo = (*degrees.start()).max(2);
    let hi = *degrees.end();
    let hh = hochschild_homology(a, lo.saturating_sub(2)..=hi)?;
    reps.par_iter()
        .enumerate()
        .map(|(k, p)| {
            let blocks = (lo..=hi)
                .map(|i| induced_block(&hh, i, i - 2, -1, |c| contraction(a, p, c)))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(PeriodClass { label: format!("P{k}"), blocks })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorelliReport {
    pub hh2_dim: usize,
    pub rank: usize,
    pub injective: bool,
}

/// Rank of `HH² → ⊕ Hom(HH_i, HH_{i−2})`, `P ↦ I_P`.
pub fn torelli_rank(a: &DgAlgebra, degrees: RangeInclusive<usize>) -> Result<TorelliReport, PeriodError> {
    let classes = first_order_period_matrix(a, degrees)?;
    let n = classes.len();
    let cols: Vec<_> = classes
        .iter()
        .map(|c| c.flatten().into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect())
        .collect();
    let len = classes.first().map_or(0, |c| c.flatten().len());
    let r = if n == 0 { 0 } else { rank(&SparseMatrix::from_columns(len, cols)) };
    Ok(TorelliReport { hh2_dim: n, rank: r, injective: r == n })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityDegree {
    pub s: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub isomorphism: bool,
    pub matrix: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub d: usize,
    pub degrees: Vec<DualityDegree>,
}

impl DualityReport {
    pub fn all_isomorphisms(&self) -> bool {
        self.degrees.iter().all(|x| x.isomorphism)
    }
}

/// The unit class `1 ⊗ []` in `HH_0`.
pub fn unit_class(_a: &DgAlgebra) -> Chain {
    Chain::basis(crate::hochschild::word(&[0]))
}

/// For each `s` in `range`, the matrix of `P ↦ [I_P(π)]` from `HH^s` to
/// `HH_{d−s}` (zero when `d < s`).
pub fn vdb_duality_check(
    a: &DgAlgebra,
    d: usize,
    pi: &Chain,
    range: RangeInclusive<usize>,
) -> Result<DualityReport, PeriodError> {
    let hi = *range.end();
    let hh = hochschild_homology(a, 0..=d)?;
    let group = &hh.groups[&(d as i64)];
    if group.to_vector(pi).is_none() {
        return Err(PeriodError::DegreeOutOfComputedRange { degree: d as i64 });
    }
    if group.class_of(pi).is_err() {
        return Err(PeriodError::NotACycle);
    }
    let coh = hochschild_cohomology(a, *range.start()..=hi, hi + 1)?;
    let degrees = range
        .map(|s| {
            let reps = coh.groups[&(s as i64)].representatives();
            let target_dim = if s <= d { hh.groups[&((d - s) as i64)].dim() } else { 0 };
            let cols: Vec<Vec<Rational>> = if s <= d {
                let tgt = &hh.groups[&((d - s) as i64)];
                reps.par_iter()
                    .map(|p| tgt.class_of(&contraction(a, p, pi)).map_err(|_| PeriodError::NotACycle))
                    .collect::<Result<_, _>>()?
            } else {
                vec![Vec::new(); reps.len()]
            };
            let matrix: Vec<Vec<Rational>> =
                (0..target_dim).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
            let sparse_cols =
                cols.iter().map(|c| c.iter().cloned().enumerate().filter(|(_, v)| !v.is_zero()).collect()).collect();
            let r = rank(&SparseMatrix::from_columns(target_dim, sparse_cols));
            Ok(DualityDegree {
                s,
                source_dim: reps.len(),
                target_dim,
                rank: r,
                isomorphism: r == reps.len() && r == target_dim,
                matrix,
            })
        })
        .collect::<Result<_, PeriodError>>()?;
    Ok(DualityReport { d, degrees })
}

/// Whether the Hodge-to-de Rham degeneration behind the transversality
/// statement was verified in the window, or only assumed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DegenerationLabel {
    Verified,
    Formal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransversalityReport {
    pub blocks_checked: usize,
    /// `(class label, source, target, exponent)` of every offending block.
    pub violations: Vec<(String, usize, usize, i64)>,
    pub holds: bool,
    pub label: DegenerationLabel,
}

/// Every nonzero block must lower the `t`-filtration index by exactly one.
pub fn check_transversality(classes: &[PeriodClass]) -> (usize, Vec<(String, usize, usize, i64)>) {
    let mut checked = 0;
    let mut bad = Vec::new();
    for c in classes {
        for b in c.nonzero_blocks() {
            checked += 1;
            let shape_ok = b.exponent == -1 && b.source == b.target + 2;
            if !shape_ok {
                bad.push((c.label.clone(), b.source, b.target, b.exponent));
            }
        }
    }
    (checked, bad)
}

/// Transversality of the first-order period matrix. The degeneration label
/// is read from the Hodge spectral sequence in `window`.
pub fn griffiths_transversality_check(
    a: &DgAlgebra,
    degrees: RangeInclusive<usize>,
    window: TWindow,
) -> Result<TransversalityReport, PeriodError> {
    let classes = first_order_period_matrix(a, degrees)?;
    let (blocks_checked, violations) = check_transversality(&classes);
    let label = match hodge_spectral_sequence(a, window) {
        Ok(r) if r.degenerate_at_e1 => DegenerationLabel::Verified,
        Ok(_) => DegenerationLabel::Formal,
        Err(crate::cyclic::CyclicError::NotStabilized { .. }) => DegenerationLabel::Formal,
        Err(e) => return Err(e.into()),
    };
    Ok(TransversalityReport { blocks_checked, holds: violations.is_empty(), violations, label })
}

impl From<HochschildError> for PeriodError {
    fn from(e: HochschildError) -> Self {
        PeriodError::Hochschild(e)
    }
}
