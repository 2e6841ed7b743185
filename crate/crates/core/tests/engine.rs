use tapkit_core::builders::{
    build_case2, build_case3, build_two_bridge, Case2Spec, Case3Spec, TwoBridgeSpec,
};
use tapkit_core::engine::{alexander, twisted_alexander, welldefinedness_report, TapOptions};
use tapkit_core::group::{Gen, Presentation, Word};
use tapkit_core::laurent::{LaurentPoly, Mat2};
use tapkit_core::repn::{
    riley_parabolic_reps, search_nonabelian, validate_rep, Representation, SearchOptions,
};
use tapkit_core::scalar::{ComplexFloat, GaussianRational};

type Q = GaussianRational;

fn trefoil() -> Presentation {
    let (x, y) = (Gen(0), Gen(1));
    let r = Word::from_powers(&[(x, 1), (y, 1), (x, 1), (y, -1), (x, -1), (y, -1)]);
    Presentation::new(vec!["x".into(), "y".into()], vec![r], x).unwrap()
}

fn trefoil_rep() -> Representation<Q> {
    let p = trefoil();
    validate_rep(
        &p,
        vec![Mat2::from_i64(1, 1, 0, 1), Mat2::from_i64(1, 0, -1, 1)],
        0.0,
    )
    .unwrap()
}

#[test]
fn trefoil_parabolic() {
    let rep = trefoil_rep();
    assert!(rep.is_nonabelian());
    let r = twisted_alexander(&trefoil(), &rep, &TapOptions::default()).unwrap();
    assert_eq!(r.degree, 2);
    assert!(r.denominator.is_none());
    assert_eq!(r.polynomial, LaurentPoly::from_i64s(0, &[1, 0, 1]));
    assert!(r.is_monic(0.0));
}

#[test]
fn trivial_rep_gives_alexander_fraction() {
    let p = trefoil();
    let r = twisted_alexander(
        &p,
        &Representation::<Q>::trivial(&p),
        &TapOptions::default(),
    )
    .unwrap();
    let den = r
        .denominator
        .clone()
        .expect("abelian quotient is a fraction");
    let a = alexander(&p).unwrap();
    let expected = a.clone() * a;
    let got = r.polynomial.clone()
        * LaurentPoly::from_i64s(0, &[1, -1])
        * LaurentPoly::from_i64s(0, &[1, -1]);
    assert!((got).unit_equivalent(&(expected * den), 0.0));
}

#[test]
fn conjugation_invariance() {
    let p = trefoil();
    let rep = trefoil_rep();
    let base = twisted_alexander(&p, &rep, &TapOptions::default()).unwrap();
    for g in [
        Mat2::<Q>::from_i64(2, 1, 1, 1),
        Mat2::from_i64(1, 3, 0, 1),
        Mat2::from_i64(0, 1, -1, 0),
    ] {
        let c = rep.conjugate(&p, &g, 0.0).unwrap();
        let r = twisted_alexander(&p, &c, &TapOptions::default()).unwrap();
        assert!(r.equivalent(&base, 0.0));
    }
}

#[test]
fn columns_agree_on_exact_riley_reps() {
    for m in [vec![1, -1], vec![2, -1], vec![1, 2]] {
        let spec = TwoBridgeSpec::new(m).unwrap();
        let k = build_two_bridge(&spec).unwrap();
        for rep in riley_parabolic_reps(&spec, 1e-9).unwrap().exact {
            let w = welldefinedness_report(&k.presentation, &rep, &TapOptions::default()).unwrap();
            assert!(w.all_agree());
            assert_eq!(w.computed(), k.presentation.num_generators());
        }
    }
}

#[test]
fn columns_agree_on_searched_reps() {
    let c2 = build_case2(&Case2Spec::new(1, vec![0, -2, 1], vec![-2, 1]).unwrap()).unwrap();
    let c3 = build_case3(Case3Spec { n: 3 }).unwrap();
    for p in [&c2.presentation, &c3.presentation] {
        let (rep, _) = search_nonabelian(p, 0..300, &SearchOptions::default()).unwrap();
        let w = welldefinedness_report(p, &rep, &TapOptions::with_tol(1e-9)).unwrap();
        assert!(w.all_agree());
        assert!(w.computed() >= 2);
    }
}

#[test]
fn float_and_exact_engines_agree() {
    let p = trefoil();
    let exact = twisted_alexander(&p, &trefoil_rep(), &TapOptions::default()).unwrap();
    let f = trefoil_rep().to_float(&p, 1e-12).unwrap();
    let float = twisted_alexander(&p, &f, &TapOptions::default()).unwrap();
    let lifted = exact
        .polynomial
        .map(|c| ComplexFloat(tapkit_core::scalar::Field::to_complex(c)));
    assert!(float.polynomial.approx_eq(&lifted, 1e-10));
}

#[test]
fn non_representation_is_rejected() {
    let p = trefoil();
    let bad = validate_rep(
        &p,
        vec![Mat2::<Q>::from_i64(1, 1, 0, 1), Mat2::from_i64(1, 0, 1, 1)],
        0.0,
    );
    assert!(bad.is_err());
    let not_sl2 = validate_rep(
        &p,
        vec![Mat2::<Q>::from_i64(2, 0, 0, 1), Mat2::identity()],
        0.0,
    );
    assert!(not_sl2.is_err());
}
