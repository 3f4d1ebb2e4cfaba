use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::algebra::{build_matrix_algebra, build_path_algebra, build_truncated_polynomial_algebra, DgAlgebra};
use crate::calculus::gerstenhaber_bracket;
use crate::coeff::{ArtinLocalRing, LinearSpace, RingTensor};
use crate::exactlin::{column_space, Rational};
use crate::hochschild::{
    cochain_basis, cochain_differential, cochain_differential_matrix, word, Cochain, CochainKey, RCochain,
};
use crate::testutil::q;

fn ring(order: usize) -> Arc<ArtinLocalRing> {
    Arc::new(ArtinLocalRing::truncated_poly(1, order))
}

fn cochain(terms: &[(&[usize], usize, i64)]) -> Cochain {
    Cochain::from_terms(terms.iter().map(|(i, o, v)| (word(i), *o as u16, q(*v))))
}

/// Q(x, x) = 1 on ℚ[x]/(x²): the generator of HH².
fn d_generator() -> Cochain {
    cochain(&[(&[1, 1], 0, 1)])
}

fn over(r: &Arc<ArtinLocalRing>, parts: &[(usize, Cochain)]) -> RCochain {
    let mut v = RCochain::zero(r);
    for (s, p) in parts {
        v.parts[*s].add_scaled(p, &q(1));
    }
    v
}

/// All arity-2 cocycles of a degree-0 algebra, as a basis.
fn cocycle_basis(a: &DgAlgebra) -> Vec<Cochain> {
    let basis = cochain_basis(a, 2);
    let d = cochain_differential_matrix(a, 2);
    crate::exactlin::rref(&d)
        .kernel
        .iter()
        .map(|v| from_keys(&basis, v))
        .collect()
}

fn from_keys(basis: &[CochainKey], v: &[(usize, Rational)]) -> Cochain {
    let mut p = Cochain::new();
    for (i, x) in v {
        p.add_term(basis[*i].inputs.clone(), basis[*i].output, x);
    }
    p
}

fn combo(basis: &[Cochain], coeffs: &[i64]) -> Cochain {
    let mut p = Cochain::new();
    for (b, c) in basis.iter().zip(coeffs) {
        p.add_scaled(b, &q(*c));
    }
    p
}

#[test]
fn zero_is_maurer_cartan_and_deforms_trivially() {
    let d = build_truncated_polynomial_algebra(2);
    let r = ring(3);
    let x = MCElement::zero(&r);
    assert!(mc_residual(&d, &x).is_zero());
    let t = deform_algebra(&d, &x).unwrap();
    assert!(t.validate().is_valid());
    assert_eq!(t.to_mc().unwrap(), x);
    let sc = t.structure_constants();
    assert_eq!(sc[&(1, 1)], RVector::zero(&r));
    assert_eq!(sc[&(0, 1)], t.basis_vector(1));
}

#[test]
fn rejects_non_ideal_and_wrong_degree() {
    let d = build_truncated_polynomial_algebra(2);
    let r = ring(2);
    let bad = over(&r, &[(0, d_generator())]);
    assert_eq!(MCElement::new(&d, bad), Err(DeformError::NotInMaximalIdeal));
    let arity1 = over(&r, &[(1, cochain(&[(&[1], 1, 1)]))]);
    assert!(matches!(MCElement::new(&d, arity1.clone()), Err(DeformError::WrongDegree { expected: 1, found: 0 })));
    assert!(GaugeElement::new(&d, arity1).is_ok());
    let unit_input = over(&r, &[(1, cochain(&[(&[0, 1], 1, 1)]))]);
    assert_eq!(MCElement::new(&d, unit_input), Err(DeformError::NotNormalized));
}

#[test]
fn gauge_over_dual_numbers_is_first_order_formula() {
    let d = build_truncated_polynomial_algebra(2);
    let r = ring(2);
    let alpha = GaugeElement::new(&d, over(&r, &[(1, cochain(&[(&[1], 0, 3), (&[1], 1, -2)]))])).unwrap();
    let x = MCElement::pure(&d, &r, d_generator(), 1).unwrap();
    let y = gauge_act(&d, &alpha, &x).unwrap();
    // Over ε² only the linear terms survive: x + [α, x] − ∂α.
    let mut expect = x.value.clone();
    expect.add_scaled(&alpha.value.map(|p| cochain_differential(&d, p)), &q(-1));
    assert_eq!(y.value, expect, "[α, x] ∈ m² vanishes");
    assert!(y.is_maurer_cartan(&d));
    let zero = GaugeElement::zero(&r);
    assert_eq!(gauge_act(&d, &zero, &x).unwrap(), x);
}

#[test]
fn dual_number_cocycles_are_maurer_cartan() {
    for a in crate::testutil::five_algebras() {
        let r = ring(2);
        for p in cocycle_basis(&a) {
            assert!(MCElement::pure(&a, &r, p, 1).unwrap().is_maurer_cartan(&a), "{}", a.name());
        }
    }
}

#[test]
fn bracket_vanishes_on_dual_numbers_algebra() {
    // Every normalized arity-2 cochain on ℚ[x]/(x²) has inputs (x, x) only, so
    // [Q, Q] has no room to be nonzero: first-order cocycles never obstruct.
    let d = build_truncated_polynomial_algebra(2);
    for k in cochain_basis(&d, 2) {
        for l in cochain_basis(&d, 2) {
            let (p, r) = (Cochain::basis(&k), Cochain::basis(&l));
            assert!(gerstenhaber_bracket(&d, &p, &r).is_zero());
        }
    }
}

/// On ℚ[x]/(x³) the cochain Q₁ with Q₁(x,x²) = Q₁(x²,x) = 1, Q₁(x²,x²) = x
/// describes x³ = ε. Shifting it by a boundary gives a first-order element
/// whose square-zero extension needs an ε² correction.
#[test]
fn second_order_correction_on_truncated_cubic() {
    let a = build_truncated_polynomial_algebra(3);
    let r = ring(3);
    let q1 = cochain(&[(&[1, 2], 0, 1), (&[2, 1], 0, 1), (&[2, 2], 1, 1)]);
    let phi = cochain(&[(&[1], 0, 1)]);
    let dphi = cochain_differential(&a, &phi);
    assert!(MCElement::pure(&a, &r, q1.clone(), 1).unwrap().is_maurer_cartan(&a));

    let mut first = q1.clone();
    first.add_scaled(&dphi, &q(-1));
    let x1 = MCElement::pure(&a, &r, first, 1).unwrap();
    assert!(!mc_residual(&a, &x1).is_zero(), "uncorrected element is not MC");

    // Hand oracle: e^{εφ} • εQ₁ = ε(Q₁ − ∂φ) + ε²([φ, Q₁] − ½[φ, ∂φ]).
    let mut corr = gerstenhaber_bracket(&a, &phi, &q1);
    corr.add_scaled(&gerstenhaber_bracket(&a, &phi, &dphi), &Rational::new(-1, 2));
    let mut fixed = x1.value.clone();
    fixed.parts[2].add_scaled(&corr, &q(1));
    let fixed = MCElement::new(&a, fixed).unwrap();
    assert!(mc_residual(&a, &fixed).is_zero());
    let alpha = GaugeElement::new(&a, over(&r, &[(1, phi.clone())])).unwrap();
    let q1r = MCElement::pure(&a, &r, q1, 1).unwrap();
    assert_eq!(gauge_act(&a, &alpha, &q1r).unwrap(), fixed);

    // The solver's correction differs from the oracle's by a cocycle.
    let (low, _) = r.truncate(2);
    let low = Arc::new(low);
    let x_low = MCElement::new(&a, RingTensor { ring: low.clone(), parts: x1.value.parts[..2].to_vec() }).unwrap();
    let LiftOutcome::Lifted(lifted) = lift_order_by_order(&a, &x_low, &r).unwrap() else {
        panic!("x³ = ε is unobstructed")
    };
    let mut diff = lifted.value.parts[2].clone();
    diff.add_scaled(&fixed.value.parts[2], &q(-1));
    assert!(cochain_differential(&a, &diff).is_zero());
    assert_eq!(lifted.value.parts[1], x1.value.parts[1]);
}

#[test]
fn dual_numbers_generator_lifts_with_zero_correction() {
    let d = build_truncated_polynomial_algebra(2);
    let x = MCElement::pure(&d, &ring(2), d_generator(), 1).unwrap();
    let LiftOutcome::Lifted(y) = lift_to(&d, &x, &ring(3)).unwrap() else { panic!("unobstructed") };
    // ½[Q, Q] = 0, so the hand-solved second-order correction is zero.
    assert!(y.value.parts[2].is_zero());
    assert_eq!(y.value.parts[1], d_generator());
    let t = deform_algebra(&d, &y).unwrap();
    let sc = t.structure_constants();
    let eps = RingTensor::pure(&y.ring, Coords(vec![(0, q(1))]), 1);
    assert_eq!(sc[&(1, 1)], eps, "x·x = ε");
}

#[test]
fn smooth_examples_lift_to_fourth_order() {
    for a in [build_path_algebra(2, &[(0, 1)]).unwrap(), build_matrix_algebra(2)] {
        let basis = cocycle_basis(&a);
        assert!(!basis.is_empty());
        let coeffs: Vec<i64> = (0..basis.len() as i64).map(|i| (i % 3) - 1).collect();
        for p in basis.iter().cloned().chain([combo(&basis, &coeffs)]) {
            let x = MCElement::pure(&a, &ring(2), p, 1).unwrap();
            match lift_to(&a, &x, &ring(4)).unwrap() {
                LiftOutcome::Lifted(y) => assert!(y.is_maurer_cartan(&a)),
                LiftOutcome::Obstructed(o) => panic!("{}: {o:?}", a.name()),
            }
        }
    }
}

#[test]
fn lift_rejects_mismatched_rings() {
    let d = build_truncated_polynomial_algebra(2);
    let x = MCElement::zero(&ring(2));
    assert_eq!(lift_order_by_order(&d, &x, &ring(4)), Err(DeformError::RingMismatch));
    assert_eq!(lift_order_by_order(&d, &x, &ring(3)).unwrap(), LiftOutcome::Lifted(MCElement::zero(&ring(3))));
}

#[test]
fn gauge_equivalence_decisions() {
    let d = build_truncated_polynomial_algebra(2);
    let r = ring(2);
    let x = MCElement::pure(&d, &r, d_generator(), 1).unwrap();
    let a0 = gauge_equivalent(&d, &x, &x).unwrap().expect("reflexive");
    assert_eq!(gauge_act(&d, &a0, &x).unwrap(), x);

    let alpha0 = GaugeElement::new(&d, over(&r, &[(1, cochain(&[(&[1], 0, 2)]))])).unwrap();
    let y = gauge_act(&d, &alpha0, &x).unwrap();
    let found = gauge_equivalent(&d, &x, &y).unwrap().expect("related by a boundary");
    assert_eq!(gauge_act(&d, &found, &x).unwrap(), y);

    // 0 and the HH² generator differ by a non-boundary.
    assert_eq!(gauge_equivalent(&d, &MCElement::zero(&r), &x).unwrap(), None);
}

#[test]
fn gauge_equivalence_at_second_order() {
    let a = build_truncated_polynomial_algebra(3);
    let r = ring(3);
    let q1 = cochain(&[(&[1, 2], 0, 1), (&[2, 1], 0, 1), (&[2, 2], 1, 1)]);
    let x = MCElement::pure(&a, &r, q1, 1).unwrap();
    let alpha = GaugeElement::new(
        &a,
        over(&r, &[(1, cochain(&[(&[1], 0, 1), (&[2], 1, -1)])), (2, cochain(&[(&[2], 2, 3)]))]),
    )
    .unwrap();
    let y = gauge_act(&a, &alpha, &x).unwrap();
    let found = gauge_equivalent(&a, &x, &y).unwrap().expect("equivalent by construction");
    assert_eq!(gauge_act(&a, &found, &x).unwrap(), y);
}

#[test]
fn structure_constants_of_x_squared_equals_epsilon() {
    let d = build_truncated_polynomial_algebra(2);
    let r = ring(2);
    let x = MCElement::pure(&d, &r, d_generator(), 1).unwrap();
    let t = deform_algebra(&d, &x).unwrap();
    let report = t.validate();
    assert!(report.is_valid(), "{report:?}");
    let sc = t.structure_constants();
    // ℚ[x, ε]/(x² − ε, ε²): 1 is a unit, x·x = ε·1.
    assert_eq!(sc[&(1, 1)], RingTensor::pure(&r, Coords(vec![(0, q(1))]), 1));
    assert_eq!(sc[&(0, 0)], t.basis_vector(0));
    assert_eq!(sc[&(1, 0)], t.basis_vector(1));
    let back = t.to_mc().unwrap();
    assert_eq!(back, x);
}

#[test]
fn file_style_constants_round_trip() {
    let d = build_truncated_polynomial_algebra(2);
    let r = ring(2);
    let c = |v: [i64; 2]| v.iter().map(|&i| q(i)).collect::<Vec<_>>();
    let consts = vec![(0, 0, 0, c([1, 0])), (0, 1, 1, c([1, 0])), (1, 0, 1, c([1, 0])), (1, 1, 0, c([0, 1]))];
    let t = AlgebraOverArtin::from_constants(&d, &r, &consts).unwrap();
    let x = t.to_mc().unwrap();
    assert_eq!(x, MCElement::pure(&d, &r, d_generator(), 1).unwrap());

    // x·x = x is not a deformation: it does not reduce to D.
    let bad = vec![(0, 0, 0, c([1, 0])), (0, 1, 1, c([1, 0])), (1, 0, 1, c([1, 0])), (1, 1, 1, c([1, 0]))];
    let t = AlgebraOverArtin::from_constants(&d, &r, &bad).unwrap();
    assert!(!t.validate().reduces_to_base);
    assert!(matches!(t.to_mc(), Err(DeformError::InvalidDeformation(_))));
}

#[test]
fn serialization_round_trip() {
    let a = build_truncated_polynomial_algebra(3);
    let r = ring(3);
    let x = MCElement::new(
        &a,
        over(&r, &[(1, cochain(&[(&[1, 2], 0, 1), (&[2, 1], 0, 1)])), (2, cochain(&[(&[2, 2], 1, -5)]))]),
    )
    .unwrap();
    let json = serde_json::to_string(&x.to_terms(&a)).unwrap();
    let terms: Vec<CochainTerm> = serde_json::from_str(&json).unwrap();
    assert_eq!(MCElement::from_terms(&a, &r, &terms).unwrap(), x);
    let mut broken = terms.clone();
    broken[0].output = "y".into();
    assert_eq!(MCElement::from_terms(&a, &r, &broken), Err(DeformError::UnknownLabel("y".into())));
}

#[test]
fn deformed_complex_is_mixed() {
    let d = build_truncated_polynomial_algebra(2);
    let x = MCElement::pure(&d, &ring(2), d_generator(), 1).unwrap();
    let c = deformed_mixed_complex(&d, &x).unwrap();
    let rep = c.check(5);
    assert!(rep.holds(), "{rep:?}");
    let zero = deformed_mixed_complex(&d, &MCElement::zero(&ring(2))).unwrap();
    assert!(zero.check(4).holds());

    // A first-order element that is not a cocycle is refused.
    let a = build_truncated_polynomial_algebra(3);
    let q1 = cochain(&[(&[1, 2], 0, 1), (&[2, 1], 0, 1), (&[2, 2], 1, 1)]);
    let mut first = q1;
    first.add_scaled(&cochain_differential(&a, &cochain(&[(&[1], 0, 1)])), &q(-1));
    let x1 = MCElement::pure(&a, &ring(3), first, 1).unwrap();
    assert!(matches!(deformed_mixed_complex(&a, &x1), Err(DeformError::NotMaurerCartan(_))));
}

#[test]
fn conjugation_by_lie_action_of_gauge() {
    let a = build_truncated_polynomial_algebra(3);
    let r = ring(3);
    let q1 = cochain(&[(&[1, 2], 0, 1), (&[2, 1], 0, 1), (&[2, 2], 1, 1)]);
    let x = MCElement::pure(&a, &r, q1, 1).unwrap();
    let alpha = GaugeElement::new(&a, over(&r, &[(1, cochain(&[(&[1], 0, 1), (&[2], 2, 2)]))])).unwrap();
    assert!(conjugation_holds(&a, &alpha, &x, 3).unwrap());
}

/// Random gauge elements and MC elements on ℚ[x]/(x²) over ε³.
fn d_gauge(r: &Arc<ArtinLocalRing>, c: &[i64]) -> GaugeElement {
    let d = build_truncated_polynomial_algebra(2);
    let p1 = cochain(&[(&[1], 0, c[0]), (&[1], 1, c[1])]);
    let p2 = cochain(&[(&[1], 0, c[2]), (&[1], 1, c[3])]);
    GaugeElement::new(&d, over(r, &[(1, p1), (2, p2)])).unwrap()
}

fn d_mc(r: &Arc<ArtinLocalRing>, c: &[i64]) -> MCElement {
    // Arity-2 cochains on D are (x,x) ↦ a + b x; all of them are MC since
    // [Q, Q] = 0 and ∂Q = 0 in arity 3 for these.
    let d = build_truncated_polynomial_algebra(2);
    let p1 = cochain(&[(&[1, 1], 0, c[0]), (&[1, 1], 1, c[1])]);
    let p2 = cochain(&[(&[1, 1], 0, c[2]), (&[1, 1], 1, c[3])]);
    MCElement::new(&d, over(r, &[(1, p1), (2, p2)])).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn gauge_preserves_maurer_cartan(g in proptest::collection::vec(-3i64..4, 4), m in proptest::collection::vec(-3i64..4, 4)) {
        let d = build_truncated_polynomial_algebra(2);
        let r = ring(3);
        let x = d_mc(&r, &m);
        prop_assert!(x.is_maurer_cartan(&d));
        let y = gauge_act(&d, &d_gauge(&r, &g), &x).unwrap();
        prop_assert!(mc_residual(&d, &y).is_zero());
    }

    #[test]
    fn deformations_validate_and_match_gauge_conjugates(g in proptest::collection::vec(-3i64..4, 4), m in proptest::collection::vec(-3i64..4, 4)) {
        let d = build_truncated_polynomial_algebra(2);
        let r = ring(3);
        let x = d_mc(&r, &m);
        let alpha = d_gauge(&r, &g);
        let t = deform_algebra(&d, &x).unwrap();
        prop_assert!(t.validate().is_valid());
        prop_assert_eq!(t.to_mc().unwrap(), x.clone());
        let y = gauge_act(&d, &alpha, &x).unwrap();
        let ty = deform_algebra(&d, &y).unwrap();
        prop_assert_eq!(ty.structure_constants(), t.conjugate_constants(&alpha));
    }

    #[test]
    fn gauge_is_a_group_action(g in proptest::collection::vec(-2i64..3, 4), m in proptest::collection::vec(-2i64..3, 4)) {
        // e^{−α} • (e^{α} • x) = x.
        let d = build_truncated_polynomial_algebra(2);
        let r = ring(3);
        let x = d_mc(&r, &m);
        let alpha = d_gauge(&r, &g);
        let neg = GaugeElement::new(&d, alpha.value.scaled(&q(-1))).unwrap();
        let back = gauge_act(&d, &neg, &gauge_act(&d, &alpha, &x).unwrap()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn ring_maps_commute_with_gauge(g in proptest::collection::vec(-2i64..3, 4), m in proptest::collection::vec(-2i64..3, 4)) {
        let d = build_truncated_polynomial_algebra(2);
        let r = ring(3);
        let (low, map) = r.truncate(2);
        let low = Arc::new(low);
        let x = d_mc(&r, &m);
        let alpha = d_gauge(&r, &g);
        let down = |v: &RCochain| v.reindex(&low, &map);
        let lhs = down(&gauge_act(&d, &alpha, &x).unwrap().value);
        let ax = GaugeElement::new(&d, down(&alpha.value)).unwrap();
        let xx = MCElement::new(&d, down(&x.value)).unwrap();
        prop_assert_eq!(lhs, gauge_act(&d, &ax, &xx).unwrap().value);
    }
}

#[test]
fn cocycle_space_contains_boundaries() {
    // Sanity check of the fixture: boundaries of arity-1 cochains are cocycles.
    let a = build_matrix_algebra(2);
    let d1 = cochain_differential_matrix(&a, 1);
    let cyc = cocycle_basis(&a);
    assert_eq!(column_space(&d1).len(), cyc.len(), "HH² of M₂ vanishes");
}
