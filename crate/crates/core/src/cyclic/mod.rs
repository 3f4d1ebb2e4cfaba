//! Negative cyclic, periodic cyclic and cyclic homology of degree-zero
//! algebras, computed from truncated Laurent totalizations.

mod laurent;
mod mixed;
mod spectral;

use std::ops::RangeInclusive;

use serde::Serialize;

use crate::algebra::DgAlgebra;
use crate::hochschild::{GradedDims, HochschildError};

pub use laurent::{LaurentVariant, SbiRanks, TWindow, TruncatedLaurentComplex};
pub use mixed::{ChainModel, MixedComplex, Sector};
pub use spectral::SpectralReport;

#[cfg(test)]
mod tests;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CyclicError {
    #[error("degree {degree} is not stable in the t-window [{lo}, {hi}]")]
    NotStabilized { degree: i64, lo: i64, hi: i64 },
    #[error("t-window [{lo}, {hi}] must contain [0, 2]")]
    BadWindow { lo: i64, hi: i64 },
    #[error(transparent)]
    Hochschild(#[from] HochschildError),
}

/// Build the truncated complex needed for degrees up to `max_degree`.
pub fn laurent_complex(
    a: &DgAlgebra,
    window: TWindow,
    max_degree: i64,
) -> Result<TruncatedLaurentComplex, CyclicError> {
    if !a.is_degree_zero() {
        return Err(HochschildError::NotDegreeZero.into());
    }
    TWindow::new(window.lo, window.hi)?;
    let top = TruncatedLaurentComplex::required_top(window, max_degree);
    Ok(TruncatedLaurentComplex::new(MixedComplex::build(a, top), window))
}

/// `HN_n` for `n` in `degrees`. Degrees whose answer still changes when the
/// window grows are reported as [`CyclicError::NotStabilized`].
pub fn negative_cyclic_homology(
    a: &DgAlgebra,
    degrees: RangeInclusive<i64>,
    window: TWindow,
) -> Result<GradedDims, CyclicError> {
    let c = laurent_complex(a, window, *degrees.end())?;
    let mut out = GradedDims::default();
    for n in degrees {
        out.dims.insert(n, c.stable_homology(LaurentVariant::Negative, n)?);
    }
    Ok(out)
}

/// `(dim HP_0, dim HP_1)`; the groups are 2-periodic.
pub fn periodic_cyclic_homology(a: &DgAlgebra, window: TWindow) -> Result<(usize, usize), CyclicError> {
    let c = laurent_complex(a, window, 1)?;
    Ok((c.stable_homology(LaurentVariant::Periodic, 0)?, c.stable_homology(LaurentVariant::Periodic, 1)?))
}

/// `HC_n` for `n` in `degrees`.
pub fn cyclic_homology(
    a: &DgAlgebra,
    degrees: RangeInclusive<i64>,
    window: TWindow,
) -> Result<GradedDims, CyclicError> {
    let c = laurent_complex(a, window, *degrees.end())?;
    let mut out = GradedDims::default();
    for n in degrees {
        out.dims.insert(n, c.cyclic_homology(n)?);
    }
    Ok(out)
}

/// One step `HN_n → HP_n → HC_{n−2} → HN_{n−1}` of the long exact sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SbiRow {
    pub degree: i64,
    pub hn: usize,
    pub hp: usize,
    pub hc_shifted: usize,
    pub ranks: SbiRanks,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SbiReport {
    pub rows: Vec<SbiRow>,
    pub exact: bool,
}

/// Check exactness of `… → HN_n → HP_n → HC_{n−2} → HN_{n−1} → …` from the
/// ranks of the three maps, for `n` in `degrees`.
pub fn sbi_check(a: &DgAlgebra, degrees: RangeInclusive<i64>, window: TWindow) -> Result<SbiReport, CyclicError> {
    let c = laurent_complex(a, window, *degrees.end())?;
    let (lo, hi) = (*degrees.start(), *degrees.end());
    let mut ranks = std::collections::BTreeMap::new();
    for n in lo - 1..=hi {
        ranks.insert(n, c.sbi_ranks(n));
    }
    let mut rows = Vec::new();
    for n in lo..=hi {
        let hn = c.stable_homology(LaurentVariant::Negative, n)?;
        let hn_prev = c.stable_homology(LaurentVariant::Negative, n - 1)?;
        let hp = c.stable_homology(LaurentVariant::Periodic, n)?;
        let hc_shifted = c.cyclic_homology(n - 2)?;
        let r = ranks[&n];
        let exact = hp == r.iota + r.pi && hc_shifted == r.pi + r.delta && hn_prev == r.delta + ranks[&(n - 1)].iota;
        rows.push(SbiRow { degree: n, hn, hp, hc_shifted, ranks: r, exact });
    }
    let exact = rows.iter().all(|r| r.exact);
    Ok(SbiReport { rows, exact })
}

/// The Hodge-to-de Rham spectral sequence of the `t`-adic filtration.
pub fn hodge_spectral_sequence(a: &DgAlgebra, window: TWindow) -> Result<SpectralReport, CyclicError> {
    let c = laurent_complex(a, window, 1)?;
    spectral::spectral_report(&c)
}
