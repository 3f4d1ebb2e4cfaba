//! Plain-text renderings. Everything here is deterministic: maps are ordered
//! and no floating point is involved.

use std::fmt::Write;

use itertools::Itertools;
use serde::Serialize;

use crate::calculus::AxiomReport;
use crate::cyclic::{SbiReport, SpectralReport};
use crate::deform::{CochainTerm, ObstructionClass};
use crate::exactlin::Rational;
use crate::hochschild::GradedDims;
use crate::period::{
    DualityReport, Method, PeriodClass, PeriodError, Ptd, PtdComparison, PtdInvariants, StepReport, TorelliReport,
    TransversalityReport,
};

pub fn dims_line(dims: &[usize]) -> String {
    format!("{}\n", dims.iter().join(" "))
}

fn matrix(m: &[Vec<Rational>]) -> String {
    format!("[{}]", m.iter().map(|r| format!("[{}]", r.iter().join(", "))).join(", "))
}

pub fn cyclic(lo: i64, hi: i64, hn: &GradedDims, hc: &GradedDims, hp: (usize, usize), sbi: &SbiReport) -> String {
    let mut s = String::new();
    for n in lo..=hi {
        let _ = writeln!(s, "n={n}  HN={}  HC={}  HP={}", hn.get(n), hc.get(n), if n % 2 == 0 { hp.0 } else { hp.1 });
    }
    let _ = writeln!(s, "SBI sequence: {}", if sbi.exact { "exact" } else { "not exact" });
    s
}

pub fn spectral(r: &SpectralReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "E1: {}", r.e1.iter().join(" "));
    let _ = writeln!(s, "d1 ranks: {}", r.d1_ranks.iter().join(" "));
    let _ = writeln!(s, "E2: {}", r.e2.iter().join(" "));
    let _ = writeln!(s, "HP: {} {}", r.abutment.0, r.abutment.1);
    let _ = writeln!(s, "degenerates at E1: {}", if r.degenerate_at_e1 { "yes" } else { "no" });
    s
}

pub fn axioms(reports: &[AxiomReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let _ = writeln!(s, "{}: {} ({} checked)", r.axiom, r.status, r.checked);
        if let Some(w) = &r.witness {
            let _ = writeln!(s, "  witness: {w}");
        }
    }
    s
}

pub fn lifted(terms: &[CochainTerm]) -> String {
    let mut s = String::new();
    for t in terms {
        let _ = writeln!(s, "{}: {} -> {} = {}", t.ring, t.inputs.join(","), t.output, t.value);
    }
    if terms.is_empty() {
        s.push_str("0\n");
    }
    s
}

pub fn obstructed(o: &ObstructionClass) -> String {
    let mut s = format!("obstructed at order {}\n", o.order);
    for (label, v) in &o.classes {
        let _ = writeln!(s, "  {label}: [{}]", v.iter().join(", "));
    }
    s
}

pub fn period_classes(classes: &[PeriodClass]) -> String {
    let mut s = String::new();
    if classes.is_empty() {
        s.push_str("HH² = 0, no period classes\n");
    }
    for c in classes {
        let _ = writeln!(s, "{}:", c.label);
        for b in &c.blocks {
            let _ = writeln!(s, "  HH_{} -> HH_{}  t^{}  {}", b.source, b.target, b.exponent, matrix(&b.matrix));
        }
    }
    s
}

pub fn torelli(r: &TorelliReport) -> String {
    if r.hh2_dim == 0 {
        "dim HH²=0, injective (vacuous)\n".into()
    } else {
        format!(
            "dim HH²={}, rank {}, {}\n",
            r.hh2_dim,
            r.rank,
            if r.injective { "injective" } else { "not injective" }
        )
    }
}

pub fn duality(r: &DualityReport) -> String {
    let mut s = String::new();
    for x in &r.degrees {
        let _ = writeln!(
            s,
            "HH^{} ({}) -> HH_{} ({}): rank {}, {}",
            x.s,
            x.source_dim,
            r.d as i64 - x.s as i64,
            x.target_dim,
            x.rank,
            if x.isomorphism { "isomorphism" } else { "not an isomorphism" }
        );
    }
    s
}

pub fn transversality(r: &TransversalityReport) -> String {
    let mut s = format!(
        "{} nonzero blocks, transversality {} (degeneration {:?})\n",
        r.blocks_checked,
        if r.holds { "holds" } else { "fails" },
        r.label
    );
    for (l, src, tgt, e) in &r.violations {
        let _ = writeln!(s, "  {l}: HH_{src} -> HH_{tgt} at t^{e}");
    }
    s
}

/// Serializable digest of a [`Ptd`].
#[derive(Debug, Serialize)]
pub struct PtdSummary {
    pub method: Method,
    pub trivial: bool,
    pub steps: Vec<StepReport>,
    pub invariants: PtdInvariants,
    pub period_classes: Vec<PeriodClass>,
}

impl PtdSummary {
    pub fn new(p: &Ptd, degrees: std::ops::RangeInclusive<usize>) -> Result<Self, PeriodError> {
        Ok(PtdSummary {
            method: p.trivialization.method,
            trivial: p.is_trivial(),
            steps: p.trivialization.steps.clone(),
            invariants: p.invariants.clone(),
            period_classes: p.period_classes(degrees)?,
        })
    }
}

pub fn ptd(p: &PtdSummary) -> String {
    let mut s = format!("method: {:?}\n", p.method);
    for st in &p.steps {
        let _ = writeln!(
            s,
            "step {} (layer {}): seed closes {}, lowest exponent {}, adjustments {}",
            st.label,
            st.layer,
            if st.seed_closes { "yes" } else { "no" },
            st.stats.lowest_exponent.map_or("-".to_string(), |e| e.to_string()),
            st.stats.adjustments
        );
    }
    let inv = &p.invariants;
    let _ = writeln!(
        s,
        "invariants: {}",
        if inv.hold() { "hold" } else { "FAIL" }
    );
    s.push_str(&period_classes(&p.period_classes));
    s
}

pub fn comparison(c: &PtdComparison) -> String {
    format!("comparison: {:?} ({})\n", c.verdict, c.reason)
}
