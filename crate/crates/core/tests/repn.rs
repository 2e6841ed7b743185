use tapkit_core::builders::{build_case2, build_two_bridge, Case2Spec, TwoBridgeSpec};
use tapkit_core::repn::{
    riley_parabolic_reps, riley_polynomial, riley_rep_newton, search_nonabelian, validate_rep,
    SearchOptions,
};
use tapkit_core::scalar::{Field, GaussianRational, UPoly};

#[test]
fn trefoil_riley_polynomial() {
    let k = build_two_bridge(&TwoBridgeSpec::new(vec![1, -1]).unwrap()).unwrap();
    let r = riley_polynomial(&k).unwrap().monic().unwrap();
    let w = UPoly::<GaussianRational>::x();
    let (_, rem) = r
        .divrem(&(w - UPoly::constant(GaussianRational::from_i64(1))))
        .unwrap();
    assert!(rem.is_zero());
}

#[test]
fn riley_reps_are_representations() {
    for m in [vec![1, -1], vec![1, 1], vec![2, -3], vec![3, 2]] {
        let spec = TwoBridgeSpec::new(m).unwrap();
        let k = build_two_bridge(&spec).unwrap();
        let reps = riley_parabolic_reps(&spec, 1e-9).unwrap();
        assert!(!reps.is_empty());
        for rep in &reps.exact {
            assert!(rep.is_nonabelian());
            validate_rep(&k.presentation, rep.images().to_vec(), 0.0).unwrap();
        }
        for rep in &reps.float {
            validate_rep(&k.presentation, rep.images().to_vec(), 1e-8).unwrap();
        }
    }
}

#[test]
fn newton_riley_finds_parabolic_rep() {
    let k = build_two_bridge(&TwoBridgeSpec::new(vec![3, -2, 3, 1]).unwrap()).unwrap();
    let rep = riley_rep_newton(&k, 0..64, 1e-9).unwrap();
    assert!(rep.is_nonabelian());
    let a = rep.image(k.a());
    assert!((a.trace().to_complex() - 2.0).norm() < 1e-8);
}

#[test]
fn search_is_deterministic() {
    let k = build_case2(&Case2Spec::new(-1, vec![1, 2, -1], vec![1, 2]).unwrap()).unwrap();
    let (a, na) = search_nonabelian(&k.presentation, 0..300, &SearchOptions::default()).unwrap();
    let (b, nb) = search_nonabelian(&k.presentation, 0..300, &SearchOptions::default()).unwrap();
    assert_eq!(na, nb);
    assert_eq!(a.images(), b.images());
    assert!(a.report().max_relator_deviation <= 1e-9);
}
