use serde::Serialize;

use super::laurent::{LaurentVariant, TWindow, TruncatedLaurentComplex};
use super::CyclicError;

/// Hodge-to-de Rham data for the `t`-adic filtration of the periodic complex.
///
/// `E₁` in total degree `n` is `⊕_i HH_{n+2i}`; the first differential is
/// `B` acting on Hochschild homology. All entries are restricted to the
/// window of exponents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralReport {
    pub window: TWindow,
    /// `HH_m` for `m = 0..=top`.
    pub e1: Vec<usize>,
    /// Rank of `B : HH_m → HH_{m+1}` for `m = 0..top`.
    pub d1_ranks: Vec<usize>,
    /// Homology of `(HH_*, B)` at `m = 0..top`.
    pub e2: Vec<usize>,
    /// `Σ E₁` in even and odd total degree.
    pub e1_total: (usize, usize),
    pub e2_total: (usize, usize),
    /// `(dim HP_0, dim HP_1)`.
    pub abutment: (usize, usize),
    /// `(i, dim F^i HP_0, dim F^i HP_1)` for exponents in the window.
    pub filtration_dims: Vec<(i64, usize, usize)>,
    pub degenerate_at_e1: bool,
}

pub(crate) fn spectral_report(c: &TruncatedLaurentComplex) -> Result<SpectralReport, CyclicError> {
    let hi = c.window.hi as usize;
    // HH up to the largest chain degree a window exponent can reach in
    // total degree 0 or 1.
    let top = 2 * hi + 1;
    let e1: Vec<usize> = (0..=top).map(|m| c.hochschild_dim(m)).collect();
    let d1_ranks: Vec<usize> = (0..top).map(|m| c.connes_rank_on_homology(m)).collect();
    let e2: Vec<usize> = (0..top)
        .map(|m| e1[m] - d1_ranks[m] - if m > 0 { d1_ranks[m - 1] } else { 0 })
        .collect();
    let by_parity = |v: &[usize]| -> (usize, usize) {
        v.iter().enumerate().fold((0, 0), |(e, o), (m, x)| if m % 2 == 0 { (e + x, o) } else { (e, o + x) })
    };
    let e1_total = by_parity(&e1[..top]);
    let e2_total = by_parity(&e2);
    let abutment =
        (c.stable_homology(LaurentVariant::Periodic, 0)?, c.stable_homology(LaurentVariant::Periodic, 1)?);
    let filtration_dims =
        (c.window.lo..=c.window.hi).map(|i| (i, c.filtration_dim(0, i), c.filtration_dim(1, i))).collect();
    let degenerate_at_e1 = d1_ranks.iter().all(|&r| r == 0) && e1_total == abutment;
    Ok(SpectralReport {
        window: c.window,
        e1,
        d1_ranks,
        e2,
        e1_total,
        e2_total,
        abutment,
        filtration_dims,
        degenerate_at_e1,
    })
}
