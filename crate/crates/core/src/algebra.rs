//! Finite-dimensional dg algebras given by structure constants.
//!
//! A [`DgAlgebra`] always has its unit as basis element 0; the remaining
//! basis elements span the complement used for the normalized complexes.

use std::fmt;

use serde::Serialize;

use crate::exactlin::{axpy, Echelon, Rational, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("quiver has an oriented cycle through vertex {0}")]
    CyclicQuiver(usize),
    #[error("algebra table is invalid: {0}")]
    Invalid(ValidationReport),
    #[error("table references basis index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("at most 65535 basis elements are supported")]
    TooLarge,
}

/// One violated axiom with the basis labels that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        let parts: Vec<String> =
            self.violations.iter().map(|v| format!("{} at ({})", v.axiom, v.witness.join(", "))).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Raw structure constants as supplied by a user or a builder.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraTable {
    pub name: String,
    pub labels: Vec<String>,
    pub degrees: Vec<i32>,
    /// `(i, j, k, c)`: the product `e_i e_j` has coefficient `c` on `e_k`.
    pub mult: Vec<(usize, usize, usize, Rational)>,
    /// `(i, k, c)`: `d e_i` has coefficient `c` on `e_k`.
    pub diff: Vec<(usize, usize, Rational)>,
    pub unit: Vec<Rational>,
}

/// Orthogonal idempotents plus a compatible basis of `e_s A e_t` pieces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexFrame {
    pub vertices: usize,
    pub elements: Vec<FrameElement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrameElement {
    pub label: String,
    /// Coordinates in the algebra basis.
    pub coords: SparseVec,
    pub source: usize,
    pub target: usize,
    pub is_vertex: bool,
}

/// A finite-dimensional dg algebra with unit `e_0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DgAlgebra {
    name: String,
    labels: Vec<String>,
    degrees: Vec<i32>,
    mult: Vec<Vec<SparseVec>>,
    diff: Vec<SparseVec>,
    frame: Option<VertexFrame>,
    weights: Option<Vec<i32>>,
}

fn dense_tables(t: &AlgebraTable) -> Result<(Vec<Vec<SparseVec>>, Vec<SparseVec>), AlgebraError> {
    let n = t.labels.len();
    let check = |i: usize| if i < n { Ok(()) } else { Err(AlgebraError::IndexOutOfRange(i)) };
    let mut mult = vec![vec![Vec::new(); n]; n];
    for (i, j, k, c) in &t.mult {
        check(*i)?;
        check(*j)?;
        check(*k)?;
        mult[*i][*j] = axpy(&mult[*i][*j], c, &[(*k, Rational::one())]);
    }
    let mut diff = vec![Vec::new(); n];
    for (i, k, c) in &t.diff {
        check(*i)?;
        check(*k)?;
        diff[*i] = axpy(&diff[*i], c, &[(*k, Rational::one())]);
    }
    if t.degrees.len() != n {
        return Err(AlgebraError::IndexOutOfRange(t.degrees.len()));
    }
    Ok((mult, diff))
}

fn mul_vecs(mult: &[Vec<SparseVec>], a: &[(usize, Rational)], b: &[(usize, Rational)]) -> SparseVec {
    let mut acc = Vec::new();
    for (i, x) in a {
        for (j, y) in b {
            acc = axpy(&acc, &(x * y), &mult[*i][*j]);
        }
    }
    acc
}

fn apply_lin(map: &[SparseVec], v: &[(usize, Rational)]) -> SparseVec {
    let mut acc = Vec::new();
    for (i, x) in v {
        acc = axpy(&acc, x, &map[*i]);
    }
    acc
}

fn e(i: usize) -> SparseVec {
    vec![(i, Rational::one())]
}

/// Check every dg-algebra axiom and collect witnesses.
fn validate_tables(
    labels: &[String],
    degrees: &[i32],
    mult: &[Vec<SparseVec>],
    diff: &[SparseVec],
    unit: &[(usize, Rational)],
) -> ValidationReport {
    let n = labels.len();
    let mut violations = Vec::new();
    let mut push = |axiom: &str, idx: &[usize]| {
        violations.push(Violation { axiom: axiom.into(), witness: idx.iter().map(|&i| labels[i].clone()).collect() })
    };
    if n == 0 {
        push("nonzero", &[]);
        return ValidationReport { violations };
    }
    if unit.is_empty() {
        push("unit present", &[]);
    }
    for &(i, _) in unit {
        if degrees[i] != 0 {
            push("unit has degree 0", &[i]);
        }
    }
    if !unit.is_empty() {
        for i in 0..n {
            if mul_vecs(mult, unit, &e(i)) != e(i) {
                push("left unit", &[i]);
            }
            if mul_vecs(mult, &e(i), unit) != e(i) {
                push("right unit", &[i]);
            }
        }
        if !apply_lin(diff, unit).is_empty() {
            push("unit is a cocycle", &[]);
        }
    }
    for i in 0..n {
        for j in 0..n {
            if mult[i][j].iter().any(|(k, _)| degrees[*k] != degrees[i] + degrees[j]) {
                push("degrees of products add", &[i, j]);
            }
        }
        if diff[i].iter().any(|(k, _)| degrees[*k] != degrees[i] + 1) {
            push("differential has degree +1", &[i]);
        }
        if !apply_lin(diff, &diff[i]).is_empty() {
            push("d∘d = 0", &[i]);
        }
    }
    for i in 0..n {
        for j in 0..n {
            let ij = &mult[i][j];
            for k in 0..n {
                let left = mul_vecs(mult, ij, &e(k));
                let right = mul_vecs(mult, &e(i), &mult[j][k]);
                if left != right {
                    push("associativity", &[i, j, k]);
                }
            }
            // d(ab) = d(a) b + (-1)^{|a|} a d(b)
            let lhs = apply_lin(diff, ij);
            let t1 = mul_vecs(mult, &diff[i], &e(j));
            let t2 = mul_vecs(mult, &e(i), &diff[j]);
            let rhs = axpy(&t1, &Rational::sign(degrees[i] as i64), &t2);
            if lhs != rhs {
                push("Leibniz rule", &[i, j]);
            }
        }
    }
    ValidationReport { violations }
}

/// Validate a raw table against the dg-algebra axioms.
pub fn validate_table(t: &AlgebraTable) -> ValidationReport {
    match dense_tables(t) {
        Ok((mult, diff)) => {
            let unit: SparseVec =
                t.unit.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect();
            if t.unit.len() != t.labels.len() {
                return ValidationReport {
                    violations: vec![Violation { axiom: "unit vector length".into(), witness: vec![] }],
                };
            }
            validate_tables(&t.labels, &t.degrees, &mult, &diff, &unit)
        }
        Err(err) => ValidationReport { violations: vec![Violation { axiom: err.to_string(), witness: vec![] }] },
    }
}

/// Revalidate a constructed algebra.
pub fn validate_dg_algebra(a: &DgAlgebra) -> ValidationReport {
    validate_tables(&a.labels, &a.degrees, &a.mult, &a.diff, &e(0))
}

impl DgAlgebra {
    /// Validate `t` and rebase so that the unit becomes basis element 0.
    ///
    /// The unit replaces the last basis element on which it has a nonzero
    /// coefficient; all other basis elements are kept in order.
    pub fn from_table(t: &AlgebraTable) -> Result<Self, AlgebraError> {
        let report = validate_table(t);
        if !report.is_valid() {
            return Err(AlgebraError::Invalid(report));
        }
        let n = t.labels.len();
        if n > u16::MAX as usize {
            return Err(AlgebraError::TooLarge);
        }
        let (mult, diff) = dense_tables(t)?;
        let unit: SparseVec =
            t.unit.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect();
        let pivot = unit.last().expect("validated unit is nonzero").0;
        // New basis in old coordinates.
        let mut new_basis: Vec<SparseVec> = vec![unit.clone()];
        let mut labels = vec![if unit.len() == 1 && unit[0].1.is_one() { t.labels[pivot].clone() } else { "1".into() }];
        let mut degrees = vec![0];
        for i in (0..n).filter(|&i| i != pivot) {
            new_basis.push(e(i));
            labels.push(t.labels[i].clone());
            degrees.push(t.degrees[i]);
        }
        // Old basis element -> new coordinates.
        let inv_p = unit.last().expect("nonzero").1.recip().expect("nonzero");
        let to_new = |v: &SparseVec| -> SparseVec {
            let mut out: SparseVec = Vec::new();
            let cp = v.iter().find(|(i, _)| *i == pivot).map(|(_, c)| c.clone()).unwrap_or_default();
            // e_p = (u - Σ_{i≠p} u_i e_i) / u_p
            let coeff_unit = &cp * &inv_p;
            if !coeff_unit.is_zero() {
                out.push((0, coeff_unit.clone()));
            }
            for (i, c) in v.iter().filter(|(i, _)| *i != pivot) {
                let pos = if *i < pivot { i + 1 } else { *i };
                out = axpy(&out, c, &[(pos, Rational::one())]);
            }
            for (i, c) in unit.iter().filter(|(i, _)| *i != pivot) {
                let pos = if *i < pivot { i + 1 } else { *i };
                out = axpy(&out, &-(&coeff_unit * c), &[(pos, Rational::one())]);
            }
            out
        };
        let new_mult = (0..n)
            .map(|i| (0..n).map(|j| to_new(&mul_vecs(&mult, &new_basis[i], &new_basis[j]))).collect())
            .collect();
        let new_diff = (0..n).map(|i| to_new(&apply_lin(&diff, &new_basis[i]))).collect();
        let alg = DgAlgebra { name: t.name.clone(), labels, degrees, mult: new_mult, diff: new_diff, frame: None, weights: None };
        debug_assert!(validate_dg_algebra(&alg).is_valid());
        Ok(alg)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn label_index(&self, s: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == s)
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn is_degree_zero(&self) -> bool {
        self.degrees.iter().all(|&d| d == 0)
    }

    pub fn max_degree(&self) -> i32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// `e_i e_j`.
    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i][j]
    }

    pub fn multiply(&self, a: &[(usize, Rational)], b: &[(usize, Rational)]) -> SparseVec {
        mul_vecs(&self.mult, a, b)
    }

    /// `d e_i`.
    pub fn differential(&self, i: usize) -> &SparseVec {
        &self.diff[i]
    }

    pub fn has_differential(&self) -> bool {
        self.diff.iter().any(|d| !d.is_empty())
    }

    pub fn frame(&self) -> Option<&VertexFrame> {
        self.frame.as_ref()
    }

    /// Optional additive grading preserved by the product and differential.
    pub fn weights(&self) -> Option<&[i32]> {
        self.weights.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Attach an auxiliary additive grading; rejected unless compatible.
    pub fn with_weights(mut self, w: Vec<i32>) -> Option<Self> {
        if w.len() != self.dim() || w[0] != 0 {
            return None;
        }
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if self.mult[i][j].iter().any(|(k, _)| w[*k] != w[i] + w[j]) {
                    return None;
                }
            }
            if self.diff[i].iter().any(|(k, _)| w[*k] != w[i]) {
                return None;
            }
        }
        self.weights = Some(w);
        Some(self)
    }

    /// Attach a vertex frame after checking it is a basis of orthogonal
    /// idempotents and bihomogeneous elements.
    pub fn with_frame(mut self, frame: VertexFrame) -> Option<Self> {
        if !self.is_degree_zero() || frame.elements.len() != self.dim() {
            return None;
        }
        let mut ech = Echelon::new();
        if frame.elements.iter().any(|f| ech.insert(&f.coords).is_none()) {
            return None;
        }
        let verts: Vec<&FrameElement> = frame.elements.iter().filter(|f| f.is_vertex).collect();
        if verts.len() != frame.vertices || verts.iter().enumerate().any(|(v, f)| f.source != v || f.target != v) {
            return None;
        }
        let mut sum = Vec::new();
        for v in &verts {
            sum = axpy(&sum, &Rational::one(), &v.coords);
        }
        if sum != e(0) {
            return None;
        }
        for f in &frame.elements {
            let left = self.multiply(&verts[f.source].coords, &f.coords);
            let right = self.multiply(&f.coords, &verts[f.target].coords);
            if left != f.coords || right != f.coords {
                return None;
            }
        }
        self.frame = Some(frame);
        Some(self)
    }

    /// Apply `d` to a vector.
    pub fn apply_d(&self, v: &[(usize, Rational)]) -> SparseVec {
        apply_lin(&self.diff, v)
    }

    pub fn format_vector(&self, v: &[(usize, Rational)]) -> String {
        if v.is_empty() {
            return "0".into();
        }
        v.iter()
            .map(|(i, c)| if c.is_one() { self.labels[*i].clone() } else { format!("{c}*{}", self.labels[*i]) })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Path algebra of an acyclic quiver over ℚ, composition written left to
/// right (`p·q` is `p` followed by `q`).
pub fn build_path_algebra(vertices: usize, arrows: &[(usize, usize)]) -> Result<DgAlgebra, AlgebraError> {
    build_named_path_algebra(&format!("path({vertices};{arrows:?})"), vertices, arrows, None)
}

pub fn build_named_path_algebra(
    name: &str,
    vertices: usize,
    arrows: &[(usize, usize)],
    arrow_labels: Option<&[String]>,
) -> Result<DgAlgebra, AlgebraError> {
    assert!(vertices >= 1, "quiver needs a vertex");
    for &(s, t) in arrows {
        if s >= vertices || t >= vertices {
            return Err(AlgebraError::IndexOutOfRange(s.max(t)));
        }
    }
    // Detect cycles by DFS.
    let mut state = vec![0u8; vertices];
    fn dfs(v: usize, arrows: &[(usize, usize)], state: &mut [u8]) -> Option<usize> {
        state[v] = 1;
        for &(s, t) in arrows {
            if s == v {
                if state[t] == 1 {
                    return Some(t);
                }
                if state[t] == 0 {
                    if let Some(c) = dfs(t, arrows, state) {
                        return Some(c);
                    }
                }
            }
        }
        state[v] = 2;
        None
    }
    for v in 0..vertices {
        if state[v] == 0 {
            if let Some(c) = dfs(v, arrows, &mut state) {
                return Err(AlgebraError::CyclicQuiver(c));
            }
        }
    }
    let alabel = |k: usize| -> String {
        match arrow_labels {
            Some(l) => l[k].clone(),
            None if arrows.len() <= 26 => ((b'a' + k as u8) as char).to_string(),
            None => format!("a{k}"),
        }
    };
    // Paths: (source, target, arrow sequence). Vertex paths first.
    let mut paths: Vec<(usize, usize, Vec<usize>)> = (0..vertices).map(|v| (v, v, vec![])).collect();
    let mut frontier: Vec<(usize, usize, Vec<usize>)> =
        arrows.iter().enumerate().map(|(k, &(s, t))| (s, t, vec![k])).collect();
    while !frontier.is_empty() {
        paths.extend(frontier.iter().cloned());
        let mut next = Vec::new();
        for (s, t, seq) in &frontier {
            for (k, &(a, b)) in arrows.iter().enumerate() {
                if a == *t {
                    let mut q = seq.clone();
                    q.push(k);
                    next.push((*s, b, q));
                }
            }
        }
        frontier = next;
    }
    let n = paths.len();
    let labels: Vec<String> = paths
        .iter()
        .map(|(s, _, seq)| {
            if seq.is_empty() {
                format!("e{}", s + 1)
            } else {
                seq.iter().map(|&k| alabel(k)).collect::<Vec<_>>().join("")
            }
        })
        .collect();
    let index = |s: usize, seq: &[usize]| paths.iter().position(|(a, _, q)| *a == s && q == seq);
    let mut mult = Vec::new();
    for (i, (si, ti, qi)) in paths.iter().enumerate() {
        for (j, (sj, _, qj)) in paths.iter().enumerate() {
            if ti != sj {
                continue;
            }
            let mut cat = qi.clone();
            cat.extend(qj.iter().copied());
            let k = index(*si, &cat).expect("concatenated path exists");
            mult.push((i, j, k, Rational::one()));
        }
    }
    let mut unit = vec![Rational::zero(); n];
    for u in unit.iter_mut().take(vertices) {
        *u = Rational::one();
    }
    let table = AlgebraTable {
        name: name.to_string(),
        labels: labels.clone(),
        degrees: vec![0; n],
        mult,
        diff: vec![],
        unit: unit.clone(),
    };
    let alg = DgAlgebra::from_table(&table)?;
    // Frame: every path, expressed in the rebased basis.
    let pivot = vertices - 1;
    let coords = |i: usize| -> SparseVec {
        if i == pivot {
            // e_last = 1 - Σ other vertices
            let mut v = vec![(0, Rational::one())];
            for w in 0..vertices - 1 {
                v.push((w + 1, -Rational::one()));
            }
            v
        } else if i < pivot {
            e(i + 1)
        } else {
            e(i)
        }
    };
    let elements = paths
        .iter()
        .enumerate()
        .map(|(i, (s, t, seq))| FrameElement {
            label: labels[i].clone(),
            coords: coords(i),
            source: *s,
            target: *t,
            is_vertex: seq.is_empty(),
        })
        .collect();
    let weights = {
        let mut w = vec![0; n];
        for (i, (_, _, seq)) in paths.iter().enumerate() {
            let pos = if i == pivot { 0 } else if i < pivot { i + 1 } else { i };
            w[pos] = seq.len() as i32;
        }
        w
    };
    let alg = alg.with_frame(VertexFrame { vertices, elements }).expect("path basis is a vertex frame");
    Ok(alg.with_weights(weights).expect("path length is multiplicative"))
}

/// ℚ[x]/(xⁿ).
pub fn build_truncated_polynomial_algebra(n: usize) -> DgAlgebra {
    assert!(n >= 2, "need n >= 2");
    let labels: Vec<String> = (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{k}"),
        })
        .collect();
    let mut mult = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i + j < n {
                mult.push((i, j, i + j, Rational::one()));
            }
        }
    }
    let mut unit = vec![Rational::zero(); n];
    unit[0] = Rational::one();
    let table =
        AlgebraTable { name: format!("trunc_poly:{n}"), labels, degrees: vec![0; n], mult, diff: vec![], unit };
    DgAlgebra::from_table(&table)
        .expect("truncated polynomial algebra is valid")
        .with_weights((0..n as i32).collect())
        .expect("x-degree is multiplicative")
}

/// The matrix algebra M_n(ℚ).
pub fn build_matrix_algebra(n: usize) -> DgAlgebra {
    assert!(n >= 1, "need n >= 1");
    let idx = |i: usize, j: usize| i * n + j;
    let labels: Vec<String> = (0..n * n).map(|k| format!("E{}{}", k / n + 1, k % n + 1)).collect();
    let mut mult = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                mult.push((idx(i, j), idx(j, k), idx(i, k), Rational::one()));
            }
        }
    }
    let mut unit = vec![Rational::zero(); n * n];
    for i in 0..n {
        unit[idx(i, i)] = Rational::one();
    }
    let table = AlgebraTable {
        name: format!("matrix:{n}"),
        labels: labels.clone(),
        degrees: vec![0; n * n],
        mult,
        diff: vec![],
        unit,
    };
    let alg = DgAlgebra::from_table(&table).expect("matrix algebra is valid");
    // Rebasing removed E_nn (the last unit component).
    let pivot = idx(n - 1, n - 1);
    let coords = |k: usize| -> SparseVec {
        if k == pivot {
            let mut v = vec![(0, Rational::one())];
            for i in 0..n - 1 {
                let p = idx(i, i);
                v.push((p + 1, -Rational::one()));
            }
            v.sort_by_key(|(i, _)| *i);
            v
        } else {
            e(k + 1)
        }
    };
    let elements = (0..n * n)
        .map(|k| FrameElement {
            label: labels[k].clone(),
            coords: coords(k),
            source: k / n,
            target: k % n,
            is_vertex: k / n == k % n,
        })
        .collect();
    // Vertex frame elements must come in vertex order; diagonal units are.
    let frame = VertexFrame { vertices: n, elements };
    let mut weights = vec![0; n * n];
    for k in 0..n * n {
        let pos = if k == pivot { 0 } else { k + 1 };
        weights[pos] = (k % n) as i32 - (k / n) as i32;
    }
    let alg = alg.with_frame(frame).expect("matrix units form a vertex frame");
    alg.with_weights(weights).expect("column minus row index is multiplicative")
}

/// The ground field ℚ.
pub fn build_field() -> DgAlgebra {
    build_named_path_algebra("field", 1, &[], None).expect("one vertex").with_name("field")
}

/// Basis indices of Ā (everything except the unit).
pub fn reduced_basis(a: &DgAlgebra) -> std::ops::Range<usize> {
    1..a.dim()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn builders_are_valid() {
        for a in [
            build_field(),
            build_truncated_polynomial_algebra(2),
            build_truncated_polynomial_algebra(3),
            build_path_algebra(2, &[(0, 1)]).unwrap(),
            build_path_algebra(2, &[(0, 1), (0, 1)]).unwrap(),
            build_matrix_algebra(1),
            build_matrix_algebra(2),
        ] {
            assert!(validate_dg_algebra(&a).is_valid(), "{}", a.name());
        }
    }

    #[test]
    fn path_algebra_dimensions() {
        assert_eq!(build_path_algebra(1, &[]).unwrap().dim(), 1);
        let a2 = build_path_algebra(2, &[(0, 1)]).unwrap();
        assert_eq!(a2.labels(), ["1", "e1", "a"]);
        assert_eq!(build_path_algebra(2, &[(0, 1), (0, 1)]).unwrap().dim(), 4);
        assert_eq!(build_path_algebra(3, &[(0, 1), (1, 2)]).unwrap().dim(), 6);
        assert!(matches!(build_path_algebra(2, &[(0, 1), (1, 0)]), Err(AlgebraError::CyclicQuiver(_))));
    }

    #[test]
    fn matrix_units_multiply() {
        let m = build_matrix_algebra(2);
        assert_eq!(m.labels(), ["1", "E11", "E12", "E21"]);
        let i = |s: &str| m.label_index(s).unwrap();
        assert_eq!(m.product(i("E11"), i("E12")), &vec![(i("E12"), q(1))]);
        assert!(m.product(i("E12"), i("E11")).is_empty());
        // E12 E21 = E11, E21 E12 = E22 = 1 - E11.
        assert_eq!(m.product(i("E12"), i("E21")), &vec![(i("E11"), q(1))]);
        assert_eq!(m.product(i("E21"), i("E12")), &vec![(0, q(1)), (i("E11"), q(-1))]);
    }

    #[test]
    fn single_vertex_path_algebra_is_m1() {
        let p = build_path_algebra(1, &[]).unwrap();
        let m = build_matrix_algebra(1);
        assert_eq!(p.dim(), m.dim());
        assert_eq!(p.product(0, 0), m.product(0, 0));
    }

    #[test]
    fn non_associative_table_is_reported() {
        // Basis {1, u, v} with u*u = v but u*v = v and v*u = 0.
        let table = AlgebraTable {
            name: "bad".into(),
            labels: vec!["1".into(), "u".into(), "v".into()],
            degrees: vec![0, 0, 0],
            mult: vec![
                (0, 0, 0, q(1)),
                (0, 1, 1, q(1)),
                (1, 0, 1, q(1)),
                (0, 2, 2, q(1)),
                (2, 0, 2, q(1)),
                (1, 1, 2, q(1)),
                (1, 2, 2, q(1)),
            ],
            diff: vec![],
            unit: vec![q(1), q(0), q(0)],
        };
        let r = validate_table(&table);
        assert!(r.violations.iter().any(|v| v.axiom == "associativity" && v.witness.len() == 3));
    }

    #[test]
    fn leibniz_violation_is_reported() {
        // {1, x (deg 0), y (deg 1)} with x*x = 0 and d x = y but d(x*x) = 0 ≠ 2xy.
        // Give x*y = y*x = y to make the rule fail.
        let table = AlgebraTable {
            name: "bad-d".into(),
            labels: vec!["1".into(), "x".into(), "y".into()],
            degrees: vec![0, 0, 1],
            mult: vec![(0, 0, 0, q(1)), (0, 1, 1, q(1)), (1, 0, 1, q(1)), (0, 2, 2, q(1)), (2, 0, 2, q(1)), (1, 2, 2, q(1)), (2, 1, 2, q(1))],
            diff: vec![(1, 2, q(1))],
            unit: vec![q(1), q(0), q(0)],
        };
        let r = validate_table(&table);
        assert!(r.violations.iter().any(|v| v.axiom == "Leibniz rule"));
    }

    #[test]
    fn missing_unit_is_reported() {
        let table = AlgebraTable {
            name: "nounit".into(),
            labels: vec!["x".into()],
            degrees: vec![0],
            mult: vec![],
            diff: vec![],
            unit: vec![q(0)],
        };
        assert!(!validate_table(&table).is_valid());
        assert!(DgAlgebra::from_table(&table).is_err());
    }

    #[test]
    fn rebasing_keeps_structure() {
        // Upper-triangular matrices with basis {E11, E12, E22}.
        let table = AlgebraTable {
            name: "t2".into(),
            labels: vec!["E11".into(), "E12".into(), "E22".into()],
            degrees: vec![0; 3],
            mult: vec![(0, 0, 0, q(1)), (0, 1, 1, q(1)), (1, 2, 1, q(1)), (2, 2, 2, q(1))],
            diff: vec![],
            unit: vec![q(1), q(0), q(1)],
        };
        let a = DgAlgebra::from_table(&table).unwrap();
        assert_eq!(a.labels(), ["1", "E11", "E12"]);
        assert!(validate_dg_algebra(&a).is_valid());
    }
}
