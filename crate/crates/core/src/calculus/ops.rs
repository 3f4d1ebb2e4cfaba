use std::collections::{BTreeMap, HashMap};

use crate::algebra::DgAlgebra;
use crate::hochschild::{shifted_degree, Chain, Cochain, Word};

use crate::exactlin::Rational;
use crate::hochschild::{mu_prefix, sign};

/// Split a cochain into homogeneous pieces by shifted degree.
pub fn split_by_degree(a: &DgAlgebra, p: &Cochain) -> BTreeMap<i64, Cochain> {
    let mut out: BTreeMap<i64, Cochain> = BTreeMap::new();
    for (w, o, v) in p.iter() {
        out.entry(shifted_degree(a, w, o)).or_default().add_term(w.clone(), o, v);
    }
    out
}

fn eps(a: &DgAlgebra, w: &[u16]) -> i64 {
    w.iter().map(|&x| a.degree(x as usize) as i64 - 1).sum()
}

/// Brace composition
/// `P∘Q[a₁|…|a_n] = Σ_i (−1)^{(|Q|−1)ε_i} P[a₁|…|a_i|Q[a_{i+1}|…]|…]`,
/// with `ε_i = Σ_{r≤i}(|a_r|−1)`.
pub fn brace(a: &DgAlgebra, p: &Cochain, q: &Cochain) -> Cochain {
    // Q's terms grouped by output, with their shifted degree.
    let mut by_out: HashMap<u16, Vec<(&Word, &Rational, i64)>> = HashMap::new();
    for (w, o, v) in q.iter() {
        by_out.entry(o).or_default().push((w, v, shifted_degree(a, w, o)));
    }
    let mut out = Cochain::new();
    for (wp, op, pv) in p.iter() {
        for i in 0..wp.len() {
            let Some(qs) = by_out.get(&wp[i]) else { continue };
            let e = eps(a, &wp[..i]);
            for (wq, qv, sdq) in qs {
                let mut inputs: Word = wp[..i].iter().copied().collect();
                inputs.extend(wq.iter().copied());
                inputs.extend(wp[i + 1..].iter().copied());
                let c = &(pv * *qv) * &sign(sdq * e);
                out.add_term(inputs, op, &c);
            }
        }
    }
    out
}

/// Gerstenhaber bracket `[P,Q] = P∘Q − (−1)^{(|P|−1)(|Q|−1)} Q∘P`,
/// extended bilinearly over homogeneous pieces.
pub fn gerstenhaber_bracket(a: &DgAlgebra, p: &Cochain, q: &Cochain) -> Cochain {
    let ps = split_by_degree(a, p);
    let qs = split_by_degree(a, q);
    let mut out = Cochain::new();
    for (dp, pp) in &ps {
        for (dq, qq) in &qs {
            let pq = brace(a, pp, qq);
            let qp = brace(a, qq, pp);
            for (w, o, v) in pq.iter() {
                out.add_term(w.clone(), o, v);
            }
            let s = -sign(dp * dq);
            for (w, o, v) in qp.iter() {
                out.add_term(w.clone(), o, &(v * &s));
            }
        }
    }
    out
}

/// Cup product `(P∪Q)[a₁|…|a_n] = (−1)^{|Q|ε_p} P(a₁…a_p)·Q(a_{p+1}…a_n)`,
/// where `p` is the arity of the `P` term and `|Q|` its unshifted degree.
pub fn cup_product(a: &DgAlgebra, p: &Cochain, q: &Cochain) -> Cochain {
    let mut out = Cochain::new();
    for (wp, op, pv) in p.iter() {
        let e = eps(a, wp);
        for (wq, oq, qv) in q.iter() {
            let deg_q = shifted_degree(a, wq, oq) + 1;
            let s = &(pv * qv) * &sign(deg_q * e);
            let prod = a.product(op as usize, oq as usize);
            if prod.is_empty() {
                continue;
            }
            let mut inputs: Word = wp.clone();
            inputs.extend(wq.iter().copied());
            for (k, c) in prod {
                out.add_term(inputs.clone(), *k as u16, &(&s * c));
            }
        }
    }
    out
}

/// The Lie action `L_P` on chains: interior insertions with sign
/// `(−1)^{(|P|−1)μ_j}` and wrap-around terms through `a₀` with sign
/// `(−1)^{μ_i(μ_n−μ_i)}`.
pub fn lie_action(a: &DgAlgebra, p: &Cochain, c: &Chain) -> Chain {
    let arities = p.arities();
    let mut out = Chain::new();
    for (w, coef) in c.iter() {
        lie_action_word(a, p, &arities, w, coef, &mut out);
    }
    out
}

pub(crate) fn lie_action_word(a: &DgAlgebra, p: &Cochain, arities: &[usize], w: &Word, coef: &Rational, out: &mut Chain) {
    let n = w.len() - 1;
    let mu = mu_prefix(a, w);
    for &l in arities {
        // Interior: P applied to a_{j+1} … a_{j+l}.
        if l <= n {
            for j in 0..=n - l {
                let Some(outs) = p.value(&w[j + 1..j + 1 + l]) else { continue };
                for (&o, v) in outs {
                    if o == 0 {
                        continue;
                    }
                    let sd = shifted_degree(a, &w[j + 1..j + 1 + l], o);
                    let mut nw: Word = w[..=j].iter().copied().collect();
                    nw.push(o);
                    nw.extend(w[j + 1 + l..].iter().copied());
                    out.add_term(nw, &(&(coef * v) * &sign(sd * mu[j])));
                }
            }
        }
        // Wrap: a_{i+1} … a_n, a₀, a₁ … a_k with n − i + 1 + k = l.
        if l == 0 {
            continue;
        }
        for i in 0..=n {
            let k = l as i64 - (n - i) as i64 - 1;
            if k < 0 || k as usize > i {
                continue;
            }
            let k = k as usize;
            let mut window: Word = w[i + 1..].iter().copied().collect();
            window.push(w[0]);
            window.extend(w[1..=k].iter().copied());
            let Some(outs) = p.value(&window) else { continue };
            let s = sign(mu[i] * (mu[n] - mu[i]));
            for (&o, v) in outs {
                let mut nw: Word = Word::new();
                nw.push(o);
                nw.extend(w[k + 1..=i].iter().copied());
                out.add_term(nw, &(&(coef * v) * &s));
            }
        }
    }
}

/// The contraction
/// `I_P(a₀⊗[a₁|…|a_n]) = (−1)^{|P||a₀|} a₀·P(a₁…a_p) ⊗ [a_{p+1}|…|a_n]`;
/// terms of weight below the arity map to zero.
pub fn contraction(a: &DgAlgebra, p: &Cochain, c: &Chain) -> Chain {
    let arities = p.arities();
    let mut out = Chain::new();
    for (w, coef) in c.iter() {
        let n = w.len() - 1;
        for &l in arities.iter().filter(|&&l| l <= n) {
            let Some(outs) = p.value(&w[1..=l]) else { continue };
            for (&o, v) in outs {
                let deg_p = shifted_degree(a, &w[1..=l], o) + 1;
                let s = &(coef * v) * &sign(deg_p * a.degree(w[0] as usize) as i64);
                for (k, x) in a.product(w[0] as usize, o as usize) {
                    let mut nw: Word = Word::new();
                    nw.push(*k as u16);
                    nw.extend(w[l + 1..].iter().copied());
                    out.add_term(nw, &(&s * x));
                }
            }
        }
    }
    out
}
