use super::*;
use crate::algebra::{build_field, build_matrix_algebra, build_path_algebra, build_truncated_polynomial_algebra};
use crate::hochschild::hochschild_homology;

fn w(lo: i64, hi: i64) -> TWindow {
    TWindow::new(lo, hi).unwrap()
}

/// Hand computation for ℚ[x]/(x²), sector by sector. Weight 0 is ℚ. A sector
/// of weight w ≥ 1 is spanned by x⊗[x^{w−1}] (degree w−1) and 1⊗[x^w]
/// (degree w). For w even ∂ is multiplication by 2 and B vanishes; for w odd
/// ∂ vanishes and B is multiplication by w. So the reduced part contributes
/// HC_n = 1 for n even ≥ 0 and HN_n = 1 for n odd ≥ 1, and nothing to HP.
fn dual_numbers_hn(n: i64) -> usize {
    let unit = usize::from(n <= 0 && n % 2 == 0);
    let reduced = usize::from(n >= 1 && n % 2 == 1);
    unit + reduced
}

fn dual_numbers_hc(n: i64) -> usize {
    if n >= 0 && n % 2 == 0 {
        2
    } else {
        0
    }
}

#[test]
fn field_negative_cyclic_is_nonzero_in_even_nonpositive_degrees() {
    let hn = negative_cyclic_homology(&build_field(), -8..=4, w(-4, 6)).unwrap();
    for n in -8..=4 {
        assert_eq!(hn.get(n), usize::from(n <= 0 && n % 2 == 0), "n={n}");
    }
}

#[test]
fn too_negative_degree_is_not_stabilized() {
    let r = negative_cyclic_homology(&build_field(), -10..=0, w(-4, 4));
    assert!(matches!(r, Err(CyclicError::NotStabilized { .. })));
}

#[test]
fn periodic_of_small_algebras() {
    assert_eq!(periodic_cyclic_homology(&build_field(), TWindow::default()).unwrap(), (1, 0));
    assert_eq!(periodic_cyclic_homology(&build_matrix_algebra(2), TWindow::default()).unwrap(), (1, 0));
    assert_eq!(periodic_cyclic_homology(&build_truncated_polynomial_algebra(2), TWindow::default()).unwrap(), (1, 0));
    let path = build_path_algebra(2, &[(0, 1)]).unwrap();
    assert_eq!(periodic_cyclic_homology(&path, TWindow::default()).unwrap(), (2, 0));
    assert_eq!(periodic_cyclic_homology(&build_truncated_polynomial_algebra(3), w(-3, 3)).unwrap(), (1, 0));
}

#[test]
fn cyclic_of_field_and_dual_numbers() {
    let hc = cyclic_homology(&build_field(), 0..=6, TWindow::default()).unwrap();
    assert_eq!(hc.as_vec(), vec![1, 0, 1, 0, 1, 0, 1]);
    let d = build_truncated_polynomial_algebra(2);
    let hc = cyclic_homology(&d, 0..=6, TWindow::default()).unwrap();
    for n in 0..=6 {
        assert_eq!(hc.get(n), dual_numbers_hc(n), "n={n}");
    }
    assert!(matches!(cyclic_homology(&d, 0..=6, w(-2, 2)), Err(CyclicError::NotStabilized { .. })));
}

#[test]
fn negative_cyclic_of_dual_numbers_matches_hand_computation() {
    let d = build_truncated_polynomial_algebra(2);
    let hn = negative_cyclic_homology(&d, -6..=5, TWindow::default()).unwrap();
    for n in -6..=5 {
        assert_eq!(hn.get(n), dual_numbers_hn(n), "n={n}");
    }
}

#[test]
fn total_differential_squares_to_zero() {
    for a in crate::testutil::five_algebras() {
        let c = laurent_complex(&a, w(-2, 2), 2).unwrap();
        for v in [LaurentVariant::Negative, LaurentVariant::Periodic, LaurentVariant::Cyclic] {
            for n in -2..=3 {
                assert!(c.squares_to_zero(v, n), "{} {v:?} n={n}", a.name());
            }
        }
    }
}

#[test]
fn relative_model_reproduces_hochschild_homology() {
    for a in [build_path_algebra(2, &[(0, 1)]).unwrap(), build_matrix_algebra(2), build_path_algebra(3, &[(0, 1), (1, 2)]).unwrap()] {
        let rel = TruncatedLaurentComplex::new(MixedComplex::relative(&a, 5), w(-2, 2));
        let norm = TruncatedLaurentComplex::new(MixedComplex::normalized(&a, 5), w(-2, 2));
        let hh = hochschild_homology(&a, 0..=3).unwrap().dims();
        for m in 0..=3 {
            assert_eq!(rel.hochschild_dim(m), hh.get(m as i64), "{} m={m}", a.name());
            assert_eq!(norm.hochschild_dim(m), hh.get(m as i64), "{} m={m}", a.name());
        }
        assert_eq!(rel.mixed.model, ChainModel::VertexRelative);
    }
}

#[test]
fn relative_and_normalized_periodic_agree() {
    let a = build_path_algebra(2, &[(0, 1)]).unwrap();
    let top = TruncatedLaurentComplex::required_top(w(-2, 3), 1);
    for mixed in [MixedComplex::relative(&a, top), MixedComplex::normalized(&a, top)] {
        let c = TruncatedLaurentComplex::new(mixed, w(-2, 3));
        assert_eq!(c.stable_homology(LaurentVariant::Periodic, 0).unwrap(), 2);
        assert_eq!(c.stable_homology(LaurentVariant::Periodic, 1).unwrap(), 0);
    }
}

#[test]
fn sbi_sequence_is_exact() {
    for a in [build_field(), build_truncated_polynomial_algebra(2), build_path_algebra(2, &[(0, 1)]).unwrap()] {
        let r = sbi_check(&a, 0..=4, TWindow::default()).unwrap();
        assert!(r.exact, "{}: {:?}", a.name(), r.rows);
    }
    let r = sbi_check(&build_truncated_polynomial_algebra(3), 0..=2, w(-3, 3)).unwrap();
    assert!(r.exact, "{:?}", r.rows);
}

#[test]
fn sbi_ranks_for_dual_numbers_at_degree_one() {
    // HN_1 = 1 maps to HP_1 = 0; HC_{−1} = 0; HN_0 = 1 → HP_0 = 1 injective.
    let d = build_truncated_polynomial_algebra(2);
    let r = sbi_check(&d, 1..=2, TWindow::default()).unwrap();
    assert_eq!(r.rows[0].ranks, SbiRanks { iota: 0, pi: 0, delta: 0 });
    // Degree 2: HP_2 = 1 ≅ HC_0 part, HC_0 = 2 → HN_1 = 1 surjective.
    assert_eq!(r.rows[1].ranks, SbiRanks { iota: 0, pi: 1, delta: 1 });
}

#[test]
fn hodge_to_de_rham() {
    let path = build_path_algebra(2, &[(0, 1)]).unwrap();
    let r = hodge_spectral_sequence(&path, TWindow::default()).unwrap();
    assert!(r.degenerate_at_e1);
    assert_eq!(r.abutment, (2, 0));
    let r = hodge_spectral_sequence(&build_matrix_algebra(2), TWindow::default()).unwrap();
    assert!(r.degenerate_at_e1);
    let d = build_truncated_polynomial_algebra(2);
    let r = hodge_spectral_sequence(&d, w(-4, 4)).unwrap();
    assert!(!r.degenerate_at_e1);
    assert!(r.d1_ranks[0] > 0);
    assert_eq!(r.abutment, (1, 0));
    // Filtration is decreasing and exhausts the abutment.
    let (_, f0, f1) = r.filtration_dims[0];
    assert_eq!((f0, f1), r.abutment);
    for pair in r.filtration_dims.windows(2) {
        assert!(pair[1].1 <= pair[0].1 && pair[1].2 <= pair[0].2);
    }
}

#[test]
fn window_validation() {
    assert!(matches!(TWindow::new(1, 4), Err(CyclicError::BadWindow { .. })));
    assert!(matches!(TWindow::new(-1, 1), Err(CyclicError::BadWindow { .. })));
}
