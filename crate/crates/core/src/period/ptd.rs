use std::ops::RangeInclusive;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{reduced_basis, DgAlgebra};
use crate::coeff::{bilinear, ArtinLocalRing, LinearSpace, RingTensor};
use crate::cyclic::TWindow;
use crate::deform::{
    deformed_mixed_complex, gauge_equivalent, CochainTerm, DeformError, DeformedComplexReport, DeformedMixedComplex,
    GaugeElement, MCElement,
};
use crate::exactlin::Rational;
use crate::hochschild::{hochschild_homology, Cochain, RCochain};

use super::first_order::{induced_block, PeriodClass};
use super::operator::{solve_commutator, ChainSpace, Retract, Selection, SolveStats, Stuck, TOp};
use super::PeriodError;

/// `End(C) ⊗ R`, as `t`-linear operators.
pub type RTOp = RingTensor<TOp>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TrivializeConfig {
    pub window: TWindow,
    /// Bar weight cut-off of the finite model for weight-graded algebras;
    /// defaults to `2·hi`, enough for every exponent in the window.
    pub weight_bound: Option<usize>,
    /// Chain degree cut-off used when no weight grading applies. The
    /// trivialization there has no `t`-dependence, so small values suffice.
    pub chain_bound: usize,
}

impl Default for TrivializeConfig {
    fn default() -> Self {
        TrivializeConfig { window: TWindow::default(), weight_bound: None, chain_bound: 3 }
    }
}

impl TrivializeConfig {
    pub fn with_window(window: TWindow) -> Self {
        TrivializeConfig { window, ..Self::default() }
    }

    pub fn weight_bound(&self) -> usize {
        self.weight_bound.unwrap_or(2 * self.window.hi as usize)
    }
}

/// The finite mixed complex the operators act on, with its contraction.
#[derive(Clone, Debug)]
pub struct Model {
    pub space: ChainSpace,
    pub boundary: TOp,
    pub connes: TOp,
    pub d0: TOp,
    pub retract: Retract,
}

impl Model {
    pub fn new(a: &DgAlgebra, selection: Selection) -> Self {
        let space = ChainSpace::new(a, selection);
        let boundary = space.boundary();
        let connes = space.connes_t();
        let mut d0 = boundary.clone();
        d0.add_scaled(&connes, &Rational::one());
        let retract = Retract::new(&space, &boundary);
        Model { space, boundary, connes, d0, retract }
    }

    fn over(&self, ring: &Arc<ArtinLocalRing>, op: &TOp) -> RTOp {
        RTOp::from_element(ring, op, &ring.one())
    }

    fn lie_over(&self, v: &RCochain) -> RTOp {
        v.map(|p| self.space.lie(p))
    }

    /// `[∂ + tB, c] = e` exactly, or the exponent where it fails.
    fn solve_exact(&self, e: &TOp, window: TWindow) -> Result<(TOp, SolveStats), Stuck> {
        let (c, stats) = solve_commutator(&self.space, &self.retract, &self.connes, e, window.hi + 1)?;
        let mut check = self.d0.commutator(&c);
        check.add_scaled(e, &-Rational::one());
        match check.exponents().first() {
            None => Ok((c, stats)),
            Some(&r) => Err(Stuck { exponent: r }),
        }
    }
}

fn rcompose(x: &RTOp, y: &RTOp) -> RTOp {
    bilinear(x, y, |p, q| p.compose(q))
}

/// `e^{ad a}(y)` for `a` even with coefficients in `m_R`.
fn exp_ad(a: &RTOp, y: &RTOp) -> RTOp {
    let mut acc = y.clone();
    let mut term = y.clone();
    let mut k = 1;
    while !term.is_zero() {
        let mut next = rcompose(a, &term);
        next.add_scaled(&rcompose(&term, a), &-Rational::one());
        term = next.scaled(&Rational::new(1, k));
        acc.add_scaled(&term, &Rational::one());
        k += 1;
    }
    acc
}

fn exp_op(x: &RTOp, one: &RTOp) -> RTOp {
    let mut acc = one.clone();
    let mut term = one.clone();
    let mut k = 1;
    while !term.is_zero() {
        term = rcompose(&term, x).scaled(&Rational::new(1, k));
        acc.add_scaled(&term, &Rational::one());
        k += 1;
    }
    acc
}

/// `log(1 + n)` for `n` with coefficients in `m_R`.
fn log_unipotent(n: &RTOp) -> RTOp {
    let mut acc = RTOp::zero(&n.ring);
    let mut power = n.clone();
    let mut k = 1i64;
    while !power.is_zero() {
        let c = Rational::new(if k % 2 == 1 { 1 } else { -1 }, k);
        acc.add_scaled(&power, &c);
        power = rcompose(&power, n);
        k += 1;
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    /// `x = 0`.
    Zero,
    /// Seeded by `−(1/t)I_x` and corrected by linear solves on a
    /// weight-truncated model.
    Seeded,
    /// `x` is gauge trivial, `e^α • 0 = x`; the trivialization is `−L_α`.
    Gauge,
}

/// Per-direction record of one m-adic step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepReport {
    pub label: String,
    pub layer: usize,
    /// The seed alone already solved the step.
    pub seed_closes: bool,
    /// The polar part of `a − seed` is exact modulo `End[[t]]`.
    pub seed_agreement: bool,
    pub stats: SolveStats,
}

#[derive(Clone, Debug)]
pub struct Trivialization {
    pub method: Method,
    pub window: TWindow,
    pub model: Arc<Model>,
    /// `a` with `e^a (∂ + L_x + tB) e^{−a} = ∂ + tB`.
    pub gauge: RTOp,
    pub steps: Vec<StepReport>,
    pub verified: bool,
}

#[derive(Clone, Debug)]
pub enum TrivializeOutcome {
    Trivialized(Box<Trivialization>),
    /// No solution at this step within the window.
    Obstructed { label: String, exponent: i64 },
}

impl Trivialization {
    /// `−a` read on Hochschild homology, one class per first-layer
    /// direction, for the strictly negative exponents.
    pub fn period_classes(&self, degrees: RangeInclusive<usize>) -> Result<Vec<PeriodClass>, PeriodError> {
        let space = &self.model.space;
        let a = &space.algebra;
        let ring = &self.gauge.ring;
        let lo = (*degrees.start()).max(2);
        let hi = (*degrees.end()).min(space.top());
        if lo > hi {
            return Ok(Vec::new());
        }
        let hh = hochschild_homology(a, lo - 2..=hi)?;
        let mut out = Vec::new();
        for s in (0..ring.dim()).filter(|&s| ring.layer(s) == 1) {
            let op = &self.gauge.parts[s];
            let mut blocks = Vec::new();
            let mut exps: Vec<i64> = op.exponents().into_iter().filter(|&r| r < 0).collect();
            if !exps.contains(&-1) {
                exps.push(-1);
            }
            exps.sort_unstable_by(|x, y| y.cmp(x));
            for r in exps {
                for i in lo..=hi {
                    let j = i as i64 + 2 * r;
                    if j < 0 {
                        continue;
                    }
                    let missing = AtomicBool::new(false);
                    let block = induced_block(&hh, i, j as usize, r, |c| {
                        let Some(m) = op.block((i, 2 * r, r)) else { return Default::default() };
                        let v = space.coords(i, c);
                        if v.len() != c.len() {
                            missing.store(true, Ordering::Relaxed);
                        }
                        let img: Vec<_> = m.mul_vec(&v).into_iter().map(|(k, x)| (k, -x)).collect();
                        space.chain(j as usize, &img)
                    });
                    let block = block?;
                    if missing.load(Ordering::Relaxed) {
                        return Err(PeriodError::DegreeOutOfComputedRange { degree: i as i64 });
                    }
                    if r == -1 || !block.is_zero() {
                        blocks.push(block);
                    }
                }
            }
            out.push(PeriodClass { label: ring.labels()[s].clone(), blocks });
        }
        Ok(out)
    }
}

/// Can the weight-truncated model carry `x`: every reduced basis element has
/// positive weight and no component of `x` raises weight.
fn weighted(a: &DgAlgebra, values: &[&Cochain]) -> bool {
    let Some(w) = a.weights() else { return false };
    if reduced_basis(a).any(|i| w[i] < 1) {
        return false;
    }
    values.iter().all(|p| p.iter().all(|(ins, o, _)| w[o as usize] <= ins.iter().map(|&i| w[i as usize]).sum()))
}

fn residual(a: &RTOp, dx: &RTOp, d0: &RTOp) -> RTOp {
    let mut r = exp_ad(a, dx);
    r.add_scaled(d0, &-Rational::one());
    r
}

/// The polar part of `c` is `[∂ + tB, b]` modulo nonnegative exponents.
fn polar_exact(model: &Model, c: &TOp) -> bool {
    let polar = c.restrict_exponents(i64::MIN, -1);
    if polar.is_zero() {
        return true;
    }
    let Ok((b, _)) = solve_commutator(&model.space, &model.retract, &model.connes, &polar, -1) else {
        return false;
    };
    let mut diff = model.d0.commutator(&b);
    diff.add_scaled(&polar, &-Rational::one());
    diff.restrict_exponents(i64::MIN, -1).is_zero()
}

/// Find `a ∈ End(C)((t)) ⊗ m_R` of even degree with
/// `e^a (∂ + L_x + tB) e^{−a} = ∂ + tB`, one m-adic layer at a time.
pub fn trivialize_periodic(
    a: &DgAlgebra,
    x: &MCElement,
    config: &TrivializeConfig,
) -> Result<TrivializeOutcome, PeriodError> {
    if !a.is_degree_zero() {
        return Err(crate::hochschild::HochschildError::NotDegreeZero.into());
    }
    if !x.is_maurer_cartan(a) {
        return Err(DeformError::NotMaurerCartan("x".into()).into());
    }
    let ring = x.ring.clone();
    let parts: Vec<&Cochain> = x.value.parts.iter().collect();
    let use_weights = weighted(a, &parts);
    let selection =
        if use_weights { Selection::Weight(config.weight_bound()) } else { Selection::Degree(config.chain_bound) };
    if x.value.is_zero() {
        let model = Arc::new(Model::new(a, selection));
        return Ok(TrivializeOutcome::Trivialized(Box::new(Trivialization {
            method: Method::Zero,
            window: config.window,
            model,
            gauge: RTOp::zero(&ring),
            steps: Vec::new(),
            verified: true,
        })));
    }
    if use_weights {
        seeded(a, x, config, Arc::new(Model::new(a, selection)))
    } else {
        let zero = MCElement::zero(&ring);
        let Some(alpha) = gauge_equivalent(a, &zero, x)? else {
            return Err(PeriodError::Unsupported(
                "deformation is not gauge trivial and the algebra has no positive weight grading".into(),
            ));
        };
        let model = Arc::new(Model::new(a, selection));
        let gauge = model.lie_over(&alpha.value).scaled(&-Rational::one());
        let dx = {
            let mut d = model.over(&ring, &model.d0);
            d.add_scaled(&model.lie_over(&x.value), &Rational::one());
            d
        };
        let verified = residual(&gauge, &dx, &model.over(&ring, &model.d0)).is_zero();
        let steps = (0..ring.dim())
            .filter(|&s| ring.layer(s) == 1)
            .map(|s| {
                let seed = model.space.contraction_t(&x.value.parts[s], -1).scaled(&-Rational::one());
                let mut c = gauge.parts[s].clone();
                c.add_scaled(&seed, &-Rational::one());
                StepReport {
                    label: ring.labels()[s].clone(),
                    layer: 1,
                    seed_closes: c.is_zero(),
                    seed_agreement: polar_exact(&model, &c),
                    stats: SolveStats::default(),
                }
            })
            .collect();
        Ok(TrivializeOutcome::Trivialized(Box::new(Trivialization {
            method: Method::Gauge,
            window: config.window,
            model,
            gauge,
            steps,
            verified,
        })))
    }
}

fn seeded(
    a: &DgAlgebra,
    x: &MCElement,
    config: &TrivializeConfig,
    model: Arc<Model>,
) -> Result<TrivializeOutcome, PeriodError> {
    let _ = a;
    let ring = x.ring.clone();
    let window = config.window;
    let d0 = model.over(&ring, &model.d0);
    let mut dx = d0.clone();
    dx.add_scaled(&model.lie_over(&x.value), &Rational::one());
    let mut gauge = RTOp::zero(&ring);
    let mut steps = Vec::new();
    for k in 1..ring.nilpotency_order() {
        let res = residual(&gauge, &dx, &d0);
        for s in (0..ring.dim()).filter(|&s| ring.layer(s) == k) {
            let label = ring.labels()[s].clone();
            let seed = model.space.contraction_t(&x.value.parts[s], -1).scaled(&-Rational::one());
            let mut e = res.parts[s].clone();
            e.add_scaled(&model.d0.commutator(&seed), &-Rational::one());
            let (c, stats) = match model.solve_exact(&e, window) {
                Ok(v) => v,
                Err(Stuck { exponent }) => return Ok(TrivializeOutcome::Obstructed { label, exponent }),
            };
            if let Some(&r) = c.exponents().iter().find(|&&r| r < window.lo || r > window.hi) {
                return Err(PeriodError::NotStabilized { exponent: r, lo: window.lo, hi: window.hi });
            }
            steps.push(StepReport {
                label,
                layer: k,
                seed_closes: c.is_zero(),
                seed_agreement: polar_exact(&model, &c),
                stats,
            });
            gauge.parts[s].add_scaled(&seed, &Rational::one());
            gauge.parts[s].add_scaled(&c, &Rational::one());
        }
    }
    let verified = residual(&gauge, &dx, &d0).is_zero();
    Ok(TrivializeOutcome::Trivialized(Box::new(Trivialization {
        method: Method::Seeded,
        window,
        model,
        gauge,
        steps,
        verified,
    })))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PtdInvariants {
    pub negative_complex: DeformedComplexReport,
    /// The trivialization vanishes modulo `m_R`.
    pub reduces_trivially: bool,
    pub trivialization_verified: bool,
}

impl PtdInvariants {
    pub fn hold(&self) -> bool {
        self.negative_complex.holds() && self.reduces_trivially && self.trivialization_verified
    }
}

/// A deformed negative cyclic complex together with a trivialization of its
/// periodization.
#[derive(Clone, Debug)]
pub struct Ptd {
    pub algebra: DgAlgebra,
    pub x: MCElement,
    pub config: TrivializeConfig,
    pub negative: DeformedMixedComplex,
    pub trivialization: Trivialization,
    pub invariants: PtdInvariants,
}

impl Ptd {
    pub fn period_classes(&self, degrees: RangeInclusive<usize>) -> Result<Vec<PeriodClass>, PeriodError> {
        self.trivialization.period_classes(degrees)
    }

    pub fn is_trivial(&self) -> bool {
        self.trivialization.gauge.is_zero()
    }
}

pub fn period_map_artin(a: &DgAlgebra, x: &MCElement, config: &TrivializeConfig) -> Result<Ptd, PeriodError> {
    let trivialization = match trivialize_periodic(a, x, config)? {
        TrivializeOutcome::Trivialized(t) => *t,
        TrivializeOutcome::Obstructed { label, exponent } => {
            return Err(PeriodError::Obstructed { label, exponent });
        }
    };
    let negative = deformed_mixed_complex(a, x)?;
    let invariants = PtdInvariants {
        negative_complex: negative.check(config.chain_bound),
        reduces_trivially: trivialization.gauge.parts[0].is_zero(),
        trivialization_verified: trivialization.verified,
    };
    Ok(Ptd { algebra: a.clone(), x: x.clone(), config: *config, negative, trivialization, invariants })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PtdVerdict {
    Isomorphic,
    NotIsomorphic,
    /// Neither a witness nor a certificate was found in the window.
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PtdComparison {
    pub verdict: PtdVerdict,
    pub reason: String,
    /// `h = e^{L_α}` for the witness.
    pub gauge: Option<Vec<CochainTerm>>,
    /// Nonzero entries of `b` with `e^{a_q} h e^{−a_p} = e^{[∂+tB, b]}`.
    pub homotopy_nnz: Option<usize>,
    pub failed_exponent: Option<i64>,
}

impl PtdComparison {
    fn undecided(reason: impl Into<String>, failed_exponent: Option<i64>) -> Self {
        PtdComparison {
            verdict: PtdVerdict::Undecided,
            reason: reason.into(),
            gauge: None,
            homotopy_nnz: None,
            failed_exponent,
        }
    }
}

/// Degrees on which period blocks are compared.
const BLOCK_DEGREES: RangeInclusive<usize> = 0..=4;

/// Decide whether two PTDs over the same data are isomorphic.
///
/// Distinct first-order period blocks certify non-isomorphism. A witness is
/// searched among `h = e^{L_α}` with `α` a gauge from `x_p` to `x_q`, after
/// which `log(e^{a_q} h e^{−a_p})` must be `[∂ + tB, b]` for some `b`.
pub fn ptd_isomorphic(p: &Ptd, q: &Ptd) -> Result<PtdComparison, PeriodError> {
    if p.algebra != q.algebra {
        return Err(PeriodError::Mismatch("different algebras".into()));
    }
    if p.x.ring != q.x.ring {
        return Err(PeriodError::Mismatch("different base rings".into()));
    }
    if p.config != q.config {
        return Err(PeriodError::Mismatch("different windows".into()));
    }
    let (tp, tq) = (&p.trivialization, &q.trivialization);
    if tp.model.space.selection != tq.model.space.selection {
        return Ok(PtdComparison::undecided("trivializations live on different finite models", None));
    }
    let a = &p.algebra;
    let model = &tp.model;
    let ring = &p.x.ring;
    if p.period_classes(BLOCK_DEGREES)? != q.period_classes(BLOCK_DEGREES)? {
        return Ok(PtdComparison {
            verdict: PtdVerdict::NotIsomorphic,
            reason: "first-order period blocks differ".into(),
            gauge: None,
            homotopy_nnz: None,
            failed_exponent: None,
        });
    }
    let Some(alpha) = gauge_equivalent(a, &p.x, &q.x)? else {
        return Ok(PtdComparison::undecided("period blocks agree but no gauge witness was found", None));
    };
    if model.space.selection != Selection::Degree(model.space.top()) && !weighted(a, &gauge_parts(&alpha)) {
        return Ok(PtdComparison::undecided("gauge witness raises weight beyond the finite model", None));
    }
    let one = model.over(ring, &model.space.identity());
    let h = exp_op(&model.lie_over(&alpha.value), &one);
    let prod = rcompose(
        &rcompose(&exp_op(&tq.gauge, &one), &h),
        &exp_op(&tp.gauge.scaled(&-Rational::one()), &one),
    );
    let mut n = prod;
    n.add_scaled(&one, &-Rational::one());
    let m = log_unipotent(&n);
    let mut nnz = 0;
    for part in &m.parts {
        if part.is_zero() {
            continue;
        }
        if !model.d0.commutator(part).is_zero() {
            return Ok(PtdComparison::undecided("comparison operator is not closed in the finite model", None));
        }
        match model.solve_exact(part, p.config.window) {
            Ok((b, _)) => nnz += b.nnz(),
            Err(Stuck { exponent }) => {
                return Ok(PtdComparison::undecided("comparison operator is not exact", Some(exponent)));
            }
        }
    }
    Ok(PtdComparison {
        verdict: PtdVerdict::Isomorphic,
        reason: "conjugating gauge plus exact correction".into(),
        gauge: Some(alpha.to_terms(a)),
        homotopy_nnz: Some(nnz),
        failed_exponent: None,
    })
}

fn gauge_parts(alpha: &GaugeElement) -> Vec<&Cochain> {
    alpha.value.parts.iter().collect()
}
