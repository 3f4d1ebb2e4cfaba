//! Shared fixtures for unit tests.

use crate::algebra::{
    build_field, build_matrix_algebra, build_path_algebra, build_truncated_polynomial_algebra, AlgebraTable, DgAlgebra,
};
use crate::exactlin::Rational;

pub fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

/// ℚ, ℚ[x]/(x²), ℚ[x]/(x³), the path algebra of •→•, M₂(ℚ).
pub fn five_algebras() -> Vec<DgAlgebra> {
    vec![
        build_field(),
        build_truncated_polynomial_algebra(2),
        build_truncated_polynomial_algebra(3),
        build_path_algebra(2, &[(0, 1)]).unwrap().with_name("path:a2"),
        build_matrix_algebra(2),
    ]
}

/// Small dg algebras with nonzero degrees and differentials.
pub fn graded_examples() -> Vec<DgAlgebra> {
    // {1, e (deg −1), y (deg 0)}, d e = y, all products of e, y zero.
    let cone = AlgebraTable {
        name: "cone".into(),
        labels: vec!["1".into(), "e".into(), "y".into()],
        degrees: vec![0, -1, 0],
        mult: vec![(0, 0, 0, q(1)), (0, 1, 1, q(1)), (1, 0, 1, q(1)), (0, 2, 2, q(1)), (2, 0, 2, q(1))],
        diff: vec![(1, 2, q(1))],
        unit: vec![q(1), q(0), q(0)],
    };
    // ℚ[x, ξ]/(x², ξ²), |x| = 2, |ξ| = 1, graded commutative.
    let ext = AlgebraTable {
        name: "ext".into(),
        labels: vec!["1".into(), "x".into(), "xi".into(), "x*xi".into()],
        degrees: vec![0, 2, 1, 3],
        mult: vec![
            (0, 0, 0, q(1)),
            (0, 1, 1, q(1)),
            (1, 0, 1, q(1)),
            (0, 2, 2, q(1)),
            (2, 0, 2, q(1)),
            (0, 3, 3, q(1)),
            (3, 0, 3, q(1)),
            (1, 2, 3, q(1)),
            (2, 1, 3, q(1)),
        ],
        diff: vec![],
        unit: vec![q(1), q(0), q(0), q(0)],
    };
    // Exterior algebra on two odd generators with d ξ₁ = 0, noncommutative signs.
    let ext2 = AlgebraTable {
        name: "ext2".into(),
        labels: vec!["1".into(), "u".into(), "v".into(), "uv".into()],
        degrees: vec![0, 1, 1, 2],
        mult: vec![
            (0, 0, 0, q(1)),
            (0, 1, 1, q(1)),
            (1, 0, 1, q(1)),
            (0, 2, 2, q(1)),
            (2, 0, 2, q(1)),
            (0, 3, 3, q(1)),
            (3, 0, 3, q(1)),
            (1, 2, 3, q(1)),
            (2, 1, 3, q(-1)),
        ],
        diff: vec![],
        unit: vec![q(1), q(0), q(0), q(0)],
    };
    // Acyclic cone with a product: {1, e (−1), y (0)} plus y·e = e·y = 0 but
    // with the degree −1 element squaring to zero and d(e)=y, y² = 0.
    [cone, ext, ext2].iter().map(|t| DgAlgebra::from_table(t).expect("valid graded example")).collect()
}
