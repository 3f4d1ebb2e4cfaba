//! Command-line front end. Every command is a thin adapter over a library
//! call followed by a deterministic renderer.

mod algebra_file;
mod render;

use std::ops::RangeInclusive;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub use algebra_file::{parse_algebra_file, AlgebraFileError};

use crate::algebra::{build_field, build_matrix_algebra, build_path_algebra, build_truncated_polynomial_algebra, DgAlgebra};
use crate::calculus::{calculus_defect, verify_lie_dagger, DefectBounds, VerifyBounds};
use crate::coeff::ArtinLocalRing;
use crate::cyclic::{
    cyclic_homology, hodge_spectral_sequence, negative_cyclic_homology, periodic_cyclic_homology, sbi_check,
    CyclicError, TWindow,
};
use crate::deform::{gauge_equivalent, lift_to, CochainTerm, DeformError, LiftOutcome, MCElement};
use crate::exactlin::Rational;
use crate::hochschild::{hochschild_cohomology, hochschild_homology, HochschildError, RCochain};
use crate::period::{
    first_order_period_matrix, griffiths_transversality_check, period_map_artin, ptd_isomorphic, torelli_rank,
    unit_class, vdb_duality_check, PeriodError, TrivializeConfig,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "ncperiod", version, about = "Hochschild, cyclic and period computations over Q")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hochschild homology.
    Hh {
        #[command(subcommand)]
        action: Compute,
    },
    /// Hochschild cohomology.
    Hhc {
        #[command(subcommand)]
        action: Compute,
    },
    /// Negative, periodic and ordinary cyclic homology with the SBI check.
    Cyclic(CyclicArgs),
    /// The Hodge-to-de Rham spectral sequence.
    Ss(WindowArgs),
    /// Chain-level calculus checks.
    Calc {
        #[command(subcommand)]
        action: CalcAction,
    },
    /// Maurer-Cartan problems over artin rings.
    Deform {
        #[command(subcommand)]
        action: DeformAction,
    },
    /// The period mapping and its diagnostics.
    Period {
        #[command(subcommand)]
        action: PeriodAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum Compute {
    Compute(RangeArgs),
}

#[derive(Debug, Args)]
pub struct AlgebraArg {
    /// `field`, `trunc_poly:N`, `matrix:N`, `path:aN`, or a path to an algebra file.
    #[arg(long)]
    pub algebra: String,
}

#[derive(Debug, Args)]
pub struct RangeArgs {
    #[command(flatten)]
    pub algebra: AlgebraArg,
    /// Inclusive degree range `lo..hi`.
    #[arg(long, default_value = "0..4")]
    pub degree_range: String,
}

#[derive(Debug, Args)]
pub struct WindowArgs {
    #[command(flatten)]
    pub algebra: AlgebraArg,
    /// Exponent window `lo..hi` of the Laurent variable.
    #[arg(long, default_value = "-6..6", allow_hyphen_values = true)]
    pub t_window: String,
}

#[derive(Debug, Args)]
pub struct CyclicArgs {
    #[command(flatten)]
    pub window: WindowArgs,
    #[arg(long, default_value = "0..4")]
    pub degree_range: String,
}

#[derive(Debug, Subcommand)]
pub enum CalcAction {
    /// The Lie action identities on basis cochains and chains.
    Verify {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long, default_value_t = 3)]
        arity: usize,
        #[arg(long, default_value_t = 4)]
        bar: usize,
    },
    /// The calculus axioms on (co)homology representatives.
    Defect {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long, default_value_t = 2)]
        cochain_degree: usize,
        #[arg(long, default_value_t = 4)]
        chain_degree: usize,
    },
}

#[derive(Debug, Args)]
pub struct ElementArgs {
    #[command(flatten)]
    pub algebra: AlgebraArg,
    /// `dual`, `eps^N` for Q[eps]/(eps^N), or `poly:K:N`.
    #[arg(long, default_value = "dual")]
    pub ring: String,
    /// Use the K-th HH² representative in the first ring direction.
    #[arg(long, conflicts_with = "term")]
    pub hh2: Option<usize>,
    /// A term `RING:IN1,IN2->OUT=VALUE`; repeatable.
    #[arg(long)]
    pub term: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum DeformAction {
    /// Lift a first-order element through the truncations of `--to`.
    Lift {
        #[command(flatten)]
        element: ElementArgs,
        /// Target ring, e.g. `eps^4`.
        #[arg(long)]
        to: String,
    },
    /// Search for a gauge between two elements.
    GaugeCheck {
        #[command(flatten)]
        element: ElementArgs,
        #[arg(long)]
        other_hh2: Option<usize>,
        #[arg(long)]
        other_term: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum PeriodAction {
    /// First-order period matrix.
    Matrix(RangeArgs),
    /// Rank of the first-order period map.
    Torelli(RangeArgs),
    /// Duality check against the unit class in HH_d.
    Vdb {
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long, default_value_t = 0)]
        d: usize,
    },
    /// Griffiths transversality of the first-order period matrix.
    Griffiths {
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long, default_value = "-2..2", allow_hyphen_values = true)]
        t_window: String,
    },
    /// Build a periodically trivialized deformation; optionally compare it
    /// with a second one.
    Ptd {
        #[command(flatten)]
        element: ElementArgs,
        #[arg(long, default_value = "-6..6", allow_hyphen_values = true)]
        t_window: String,
        /// Degrees of the reported period blocks.
        #[arg(long, default_value = "0..4")]
        degree_range: String,
        #[arg(long)]
        other_hh2: Option<usize>,
        #[arg(long)]
        other_term: Vec<String>,
    },
}

/// Failures, sorted by exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Exit code 2.
    Parse(String),
    /// Exit code 1.
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl From<HochschildError> for CliError {
    fn from(e: HochschildError) -> Self {
        CliError::Failure(e.to_string())
    }
}

impl From<CyclicError> for CliError {
    fn from(e: CyclicError) -> Self {
        CliError::Failure(e.to_string())
    }
}

impl From<DeformError> for CliError {
    fn from(e: DeformError) -> Self {
        match e {
            DeformError::UnknownLabel(_) | DeformError::WrongDegree { .. } | DeformError::NotNormalized => {
                CliError::Parse(e.to_string())
            }
            _ => CliError::Failure(e.to_string()),
        }
    }
}

impl From<PeriodError> for CliError {
    fn from(e: PeriodError) -> Self {
        match e {
            PeriodError::Deform(d) => d.into(),
            other => CliError::Failure(other.to_string()),
        }
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Run the command line given by `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok((report, text)) => {
            let stdout = match cli.format {
                Format::Table => text,
                Format::Structured => {
                    let mut s = serde_json::to_string_pretty(&report).expect("reports serialize");
                    s.push('\n');
                    s
                }
            };
            let code = if report.ok { 0 } else { 1 };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(e) => {
            let msg = match &e {
                CliError::Parse(m) | CliError::Failure(m) => m.clone(),
            };
            Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {msg}\n") }
        }
    }
}

/// Structured form of every report.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub algebra: String,
    /// False when a verified property failed (exit code 1).
    pub ok: bool,
    pub result: serde_json::Value,
}

fn report(command: &str, a: &DgAlgebra, ok: bool, result: impl Serialize) -> Report {
    Report {
        command: command.into(),
        algebra: a.name().into(),
        ok,
        result: serde_json::to_value(result).expect("reports serialize"),
    }
}

/// Resolve `--algebra`.
pub fn load_algebra(spec: &str) -> Result<DgAlgebra, CliError> {
    let bad = || CliError::Parse(format!("unknown algebra {spec:?}"));
    let int = |s: &str, min: usize| s.parse::<usize>().ok().filter(|&n| n >= min).ok_or_else(bad);
    if spec == "field" {
        return Ok(build_field());
    }
    if let Some(n) = spec.strip_prefix("trunc_poly:") {
        return Ok(build_truncated_polynomial_algebra(int(n, 2)?));
    }
    if let Some(n) = spec.strip_prefix("matrix:") {
        return Ok(build_matrix_algebra(int(n, 1)?));
    }
    if let Some(n) = spec.strip_prefix("path:a") {
        let n = int(n, 1)?;
        let arrows: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        return Ok(build_path_algebra(n, &arrows).map_err(|e| CliError::Parse(e.to_string()))?.with_name(spec));
    }
    let text = std::fs::read_to_string(spec).map_err(|e| CliError::Parse(format!("{spec}: {e}")))?;
    parse_algebra_file(&text).map_err(|e| match e {
        AlgebraFileError::Parse { .. } => CliError::Parse(format!("{spec}: {e}")),
        AlgebraFileError::Validation(_) => CliError::Failure(format!("{spec}: {e}")),
    })
}

/// Resolve `--ring`.
pub fn load_ring(spec: &str) -> Result<Arc<ArtinLocalRing>, CliError> {
    let bad = || CliError::Parse(format!("unknown ring {spec:?}"));
    let int = |s: &str, min: usize| s.parse::<usize>().ok().filter(|&n| n >= min).ok_or_else(bad);
    let ring = if spec == "dual" {
        ArtinLocalRing::dual_numbers()
    } else if let Some(n) = spec.strip_prefix("eps^") {
        ArtinLocalRing::truncated_poly(1, int(n, 2)?)
    } else if let Some(rest) = spec.strip_prefix("poly:") {
        let (k, n) = rest.split_once(':').ok_or_else(bad)?;
        ArtinLocalRing::truncated_poly(int(k, 1)?, int(n, 2)?)
    } else {
        return Err(bad());
    };
    Ok(Arc::new(ring))
}

/// `lo..hi` or `lo..=hi`, both inclusive.
pub fn parse_range(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Parse(format!("bad range {s:?}, expected lo..hi"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let (lo, hi): (i64, i64) = (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?);
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn degree_range(s: &str) -> Result<RangeInclusive<usize>, CliError> {
    let (lo, hi) = parse_range(s)?;
    if lo < 0 {
        return Err(CliError::Parse(format!("degree range {s:?} must be nonnegative")));
    }
    Ok(lo as usize..=hi as usize)
}

fn window(s: &str) -> Result<TWindow, CliError> {
    let (lo, hi) = parse_range(s)?;
    TWindow::new(lo, hi).map_err(|e| CliError::Parse(e.to_string()))
}

/// `RING:IN1,IN2->OUT=VALUE`.
pub fn parse_term(s: &str) -> Result<CochainTerm, CliError> {
    let bad = || CliError::Parse(format!("bad term {s:?}, expected RING:IN1,IN2->OUT=VALUE"));
    let (ring, rest) = s.split_once(':').ok_or_else(bad)?;
    let (ins, rest) = rest.split_once("->").ok_or_else(bad)?;
    let (out, value) = rest.split_once('=').ok_or_else(bad)?;
    let value: Rational = value.trim().parse().map_err(|_| bad())?;
    let inputs = if ins.trim().is_empty() { Vec::new() } else { ins.split(',').map(|x| x.trim().to_string()).collect() };
    Ok(CochainTerm { ring: ring.trim().into(), inputs, output: out.trim().into(), value })
}

fn element(
    a: &DgAlgebra,
    ring: &Arc<ArtinLocalRing>,
    hh2: Option<usize>,
    terms: &[String],
) -> Result<MCElement, CliError> {
    if let Some(k) = hh2 {
        let reps = hochschild_cohomology(a, 2..=2, 3)?.groups[&2].representatives();
        let p = reps
            .get(k)
            .cloned()
            .ok_or_else(|| CliError::Parse(format!("HH² has dimension {}, no representative {k}", reps.len())))?;
        let s = (0..ring.dim()).find(|&s| ring.layer(s) == 1).ok_or_else(|| CliError::Parse("ring is a field".into()))?;
        let mut v = RCochain::zero(ring);
        v.parts[s] = p;
        return Ok(MCElement::new(a, v)?);
    }
    let terms = terms.iter().map(|t| parse_term(t)).collect::<Result<Vec<_>, _>>()?;
    Ok(MCElement::from_terms(a, ring, &terms)?)
}

fn execute(cli: &Cli) -> Result<(Report, String), CliError> {
    match &cli.command {
        Command::Hh { action: Compute::Compute(args) } => {
            let a = load_algebra(&args.algebra.algebra)?;
            let dims = hochschild_homology(&a, degree_range(&args.degree_range)?)?.dims();
            let text = render::dims_line(&dims.as_vec());
            Ok((report("hh compute", &a, true, &dims), text))
        }
        Command::Hhc { action: Compute::Compute(args) } => {
            let a = load_algebra(&args.algebra.algebra)?;
            let r = degree_range(&args.degree_range)?;
            let hi = *r.end();
            let dims = hochschild_cohomology(&a, r, hi + 1)?.dims();
            let text = render::dims_line(&dims.as_vec());
            Ok((report("hhc compute", &a, true, &dims), text))
        }
        Command::Cyclic(args) => {
            let a = load_algebra(&args.window.algebra.algebra)?;
            let w = window(&args.window.t_window)?;
            let (lo, hi) = parse_range(&args.degree_range)?;
            let hn = negative_cyclic_homology(&a, lo..=hi, w)?;
            let hc = cyclic_homology(&a, lo..=hi, w)?;
            let hp = periodic_cyclic_homology(&a, w)?;
            let sbi = sbi_check(&a, lo..=hi, w)?;
            let text = render::cyclic(lo, hi, &hn, &hc, hp, &sbi);
            let ok = sbi.exact;
            let result = serde_json::json!({ "hn": hn, "hp": [hp.0, hp.1], "hc": hc, "sbi": sbi });
            Ok((report("cyclic", &a, ok, result), text))
        }
        Command::Ss(args) => {
            let a = load_algebra(&args.algebra.algebra)?;
            let r = hodge_spectral_sequence(&a, window(&args.t_window)?)?;
            Ok((report("ss", &a, true, &r), render::spectral(&r)))
        }
        Command::Calc { action: CalcAction::Verify { algebra, arity, bar } } => {
            let a = load_algebra(&algebra.algebra)?;
            let reports = verify_lie_dagger(&a, VerifyBounds { arity: *arity, weight: *bar });
            let ok = reports.iter().all(|r| r.holds());
            Ok((report("calc verify", &a, ok, &reports), render::axioms(&reports)))
        }
        Command::Calc { action: CalcAction::Defect { algebra, cochain_degree, chain_degree } } => {
            let a = load_algebra(&algebra.algebra)?;
            let bounds =
                DefectBounds { cochain_degree: *cochain_degree, chain_degree: *chain_degree, ..DefectBounds::default() };
            let reports = calculus_defect(&a, bounds)?;
            Ok((report("calc defect", &a, true, &reports), render::axioms(&reports)))
        }
        Command::Deform { action: DeformAction::Lift { element: e, to } } => {
            let a = load_algebra(&e.algebra.algebra)?;
            let ring = load_ring(&e.ring)?;
            let x = element(&a, &ring, e.hh2, &e.term)?;
            let target = load_ring(to)?;
            let outcome = lift_to(&a, &x, &target)?;
            let (text, result) = match &outcome {
                LiftOutcome::Lifted(y) => {
                    let terms = y.to_terms(&a);
                    (render::lifted(&terms), serde_json::json!({ "lifted": terms }))
                }
                LiftOutcome::Obstructed(o) => (render::obstructed(o), serde_json::json!({ "obstructed": o })),
            };
            Ok((report("deform lift", &a, true, result), text))
        }
        Command::Deform { action: DeformAction::GaugeCheck { element: e, other_hh2, other_term } } => {
            let a = load_algebra(&e.algebra.algebra)?;
            let ring = load_ring(&e.ring)?;
            let x = element(&a, &ring, e.hh2, &e.term)?;
            let y = element(&a, &ring, *other_hh2, other_term)?;
            let g = gauge_equivalent(&a, &x, &y)?;
            let terms = g.as_ref().map(|g| g.to_terms(&a));
            let text = match &terms {
                Some(t) => format!("gauge equivalent\n{}", render::lifted(t)),
                None => "no gauge found\n".to_string(),
            };
            Ok((report("deform gauge-check", &a, true, serde_json::json!({ "gauge": terms })), text))
        }
        Command::Period { action } => period(action),
    }
}

fn period(action: &PeriodAction) -> Result<(Report, String), CliError> {
    match action {
        PeriodAction::Matrix(args) => {
            let a = load_algebra(&args.algebra.algebra)?;
            let classes = first_order_period_matrix(&a, degree_range(&args.degree_range)?)?;
            Ok((report("period matrix", &a, true, &classes), render::period_classes(&classes)))
        }
        PeriodAction::Torelli(args) => {
            let a = load_algebra(&args.algebra.algebra)?;
            let r = torelli_rank(&a, degree_range(&args.degree_range)?)?;
            Ok((report("period torelli", &a, true, &r), render::torelli(&r)))
        }
        PeriodAction::Vdb { range, d } => {
            let a = load_algebra(&range.algebra.algebra)?;
            let r = vdb_duality_check(&a, *d, &unit_class(&a), degree_range(&range.degree_range)?)?;
            Ok((report("period vdb", &a, true, &r), render::duality(&r)))
        }
        PeriodAction::Griffiths { range, t_window } => {
            let a = load_algebra(&range.algebra.algebra)?;
            let r = griffiths_transversality_check(&a, degree_range(&range.degree_range)?, window(t_window)?)?;
            let ok = r.holds;
            Ok((report("period griffiths", &a, ok, &r), render::transversality(&r)))
        }
        PeriodAction::Ptd { element: e, t_window, degree_range: degrees, other_hh2, other_term } => {
            let a = load_algebra(&e.algebra.algebra)?;
            let ring = load_ring(&e.ring)?;
            let x = element(&a, &ring, e.hh2, &e.term)?;
            let config = TrivializeConfig::with_window(window(t_window)?);
            let p = period_map_artin(&a, &x, &config)?;
            let summary = render::PtdSummary::new(&p, degree_range(degrees)?)?;
            let mut text = render::ptd(&summary);
            let mut ok = summary.invariants.hold();
            let comparison = if other_hh2.is_some() || !other_term.is_empty() {
                let y = element(&a, &ring, *other_hh2, other_term)?;
                let q = period_map_artin(&a, &y, &config)?;
                let c = ptd_isomorphic(&p, &q)?;
                text.push_str(&render::comparison(&c));
                ok &= q.invariants.hold();
                Some(c)
            } else {
                None
            };
            let result = serde_json::json!({ "ptd": summary, "comparison": comparison });
            Ok((report("period ptd", &a, ok, result), text))
        }
    }
}

/// Entry point of the binary.
pub fn main_entry() -> i32 {
    if let Some(n) = std::env::var("NCPERIOD_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // Ignored if a pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let out = run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}

#[cfg(test)]
mod tests;
