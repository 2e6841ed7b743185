use proptest::prelude::*;
use tapkit_core::laurent::{
    det, det_block, det_cofactor, det_interpolate, flatten, solve, LaurentMatrix, LaurentPoly, Mat2,
};
use tapkit_core::scalar::{ComplexFloat, Field, GaussianRational};

type Q = GaussianRational;

fn poly() -> impl Strategy<Value = LaurentPoly<Q>> {
    (-2i64..3, prop::collection::vec(-4i64..5, 0..4))
        .prop_map(|(low, cs)| LaurentPoly::from_i64s(low, &cs))
}

fn matrix(n: usize) -> impl Strategy<Value = LaurentMatrix<Q>> {
    prop::collection::vec(prop::collection::vec(poly(), n), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn determinant_backends_agree(m in (1usize..5).prop_flat_map(matrix)) {
        let oracle = det_cofactor(&m).unwrap();
        prop_assert_eq!(det(&m).unwrap(), oracle.clone());
        prop_assert_eq!(det_interpolate(&m).unwrap(), oracle);
    }

    #[test]
    fn determinant_is_multiplicative(a in matrix(2), b in matrix(2)) {
        let prod: LaurentMatrix<Q> = (0..2)
            .map(|i| (0..2).map(|j| a[i][0].clone() * b[0][j].clone() + a[i][1].clone() * b[1][j].clone()).collect())
            .collect();
        prop_assert_eq!(det(&prod).unwrap(), det(&a).unwrap() * det(&b).unwrap());
    }

    #[test]
    fn division_recovers_factor(p in poly(), q in poly()) {
        prop_assume!(!q.is_zero());
        let (quot, rem, rel) = (p.clone() * q.clone()).divide(&q).unwrap();
        prop_assert!(rem.is_zero());
        prop_assert_eq!(rel, 0.0);
        prop_assert_eq!(quot, p);
    }

    #[test]
    fn normalization_forgets_units(p in poly(), s in -5i64..5, neg in any::<bool>()) {
        prop_assume!(!p.is_zero());
        let u = if neg { -p.shift(s) } else { p.shift(s) };
        prop_assert_eq!(u.normalized(), p.normalized());
        prop_assert!(u.unit_equivalent(&p, 0.0));
        prop_assert_eq!(p.normalized().min_exp(), Some(0));
    }
}

#[test]
fn block_determinant_matches_flattened() {
    let m = |a, b, c, d| Mat2::<Q>::from_i64(a, b, c, d);
    let t = |c: Mat2<Q>, e| LaurentPoly::monomial(c, e);
    let blocks = vec![
        vec![
            t(m(1, 1, 0, 1), 1) + t(Mat2::identity(), 0),
            t(m(0, 1, -1, 0), -1),
        ],
        vec![
            t(m(2, 1, 1, 1), 0),
            t(m(1, 0, 1, 1), 2) - t(Mat2::identity(), 0),
        ],
    ];
    let flat = flatten(&blocks);
    assert_eq!(flat.len(), 4);
    assert_eq!(det_block(&blocks).unwrap(), det_cofactor(&flat).unwrap());
}

#[test]
fn inexact_division_reports_remainder() {
    let p = LaurentPoly::<Q>::from_i64s(0, &[1, 0, 1]);
    let q = LaurentPoly::<Q>::from_i64s(0, &[1, 1]);
    let (_, rem, rel) = p.divide(&q).unwrap();
    assert!(!rem.is_zero());
    assert!(rel > 0.0);
    assert!(p.divide_exact(&q, 0.0).is_err());
}

#[test]
fn float_determinant_matches_exact() {
    let m: LaurentMatrix<Q> = vec![
        vec![
            LaurentPoly::from_i64s(-1, &[1, 2, 3]),
            LaurentPoly::from_i64s(0, &[0, 1]),
        ],
        vec![
            LaurentPoly::from_i64s(1, &[-1]),
            LaurentPoly::from_i64s(0, &[4, 0, 1]),
        ],
    ];
    let f: LaurentMatrix<ComplexFloat> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|p| p.map(|c| ComplexFloat(c.to_complex())))
                .collect()
        })
        .collect();
    let exact = det(&m).unwrap().map(|c| ComplexFloat(c.to_complex()));
    assert!(det(&f).unwrap().approx_eq(&exact, 1e-10));
}

#[test]
fn linear_solve() {
    let a = vec![
        vec![Q::from_i64(2), Q::from_i64(1)],
        vec![Q::from_i64(1), Q::from_i64(3)],
    ];
    let x = solve(a, vec![Q::from_i64(3), Q::from_i64(5)]).unwrap();
    assert_eq!(x, vec![Q::from_ratio(4, 5), Q::from_ratio(7, 5)]);
}

#[test]
fn matrix_power_and_inverse() {
    let p = Mat2::<Q>::from_i64(1, 1, 0, 1);
    assert_eq!(p.pow(3).unwrap(), Mat2::from_i64(1, 3, 0, 1));
    assert_eq!(p.pow(-2).unwrap(), Mat2::from_i64(1, -2, 0, 1));
    assert_eq!(p.clone() * p.inverse().unwrap(), Mat2::identity());
    assert_eq!(p.adjugate(), Mat2::from_i64(1, -1, 0, 1));
}
