use proptest::prelude::*;
use tapkit_core::builders::{build_two_bridge, TwoBridgeSpec};
use tapkit_core::engine::{twisted_alexander, TapOptions};
use tapkit_core::json::{
    parse_text, polynomial_from_json, polynomial_to_json, representation_field,
    representation_from_json, representation_to_json, result_to_json, to_text, JsonScalar,
    ScalarContext,
};
use tapkit_core::laurent::LaurentPoly;
use tapkit_core::repn::{riley_parabolic_reps, Representation};
use tapkit_core::scalar::{AlgebraicExt, ComplexFloat, Field, GaussianRational};
use tapkit_core::Error;

fn gauss() -> impl Strategy<Value = GaussianRational> {
    (-50i64..50, 1i64..9, -50i64..50, 1i64..9).prop_map(|(a, b, c, d)| {
        GaussianRational::from_ratio(a, b)
            + GaussianRational::from_ratio(c, d) * GaussianRational::i()
    })
}

proptest! {
    #[test]
    fn gaussian_polynomial_round_trip(low in -4i64..4, cs in prop::collection::vec(gauss(), 0..6)) {
        let p = LaurentPoly::new(low, cs);
        let text = to_text(&polynomial_to_json(&p));
        let q: LaurentPoly<GaussianRational> = polynomial_from_json(&parse_text(&text).unwrap()).unwrap();
        prop_assert_eq!(&q, &p);
        prop_assert_eq!(to_text(&polynomial_to_json(&q)), text);
    }

    #[test]
    fn float_scalar_round_trip(re in -1e6f64..1e6, im in -1e6f64..1e6) {
        let c = ComplexFloat::new(re, im);
        let back = ComplexFloat::from_json(&c.to_json(), &mut ScalarContext::default()).unwrap();
        prop_assert_eq!(back.0, c.0);
    }
}

#[test]
fn algebraic_representation_round_trip() {
    let quadratic = |r: &Representation<AlgebraicExt>| {
        r.images()
            .iter()
            .any(|m| m.get(1, 0).modulus().is_some_and(|q| q.degree() == 2))
    };
    let (k, rep) = [
        vec![1, 1],
        vec![2, -1],
        vec![1, 2],
        vec![2, 2],
        vec![3, -1],
        vec![2, -2],
    ]
    .into_iter()
    .find_map(|m| {
        let spec = TwoBridgeSpec::new(m).unwrap();
        let rep = riley_parabolic_reps(&spec, 1e-9)
            .unwrap()
            .exact
            .into_iter()
            .find(quadratic)?;
        Some((build_two_bridge(&spec).unwrap(), rep))
    })
    .expect("a knot with a quadratic Riley field");
    let rep = &rep;
    let v = representation_to_json(rep);
    assert_eq!(
        representation_field(&v).as_deref(),
        Some(AlgebraicExt::NAME)
    );
    let text = to_text(&v);
    let back =
        representation_from_json::<AlgebraicExt>(&k.presentation, &parse_text(&text).unwrap(), 0.0)
            .unwrap();
    assert_eq!(back.images(), rep.images());
    assert_eq!(to_text(&representation_to_json(&back)), text);
}

#[test]
fn float_representation_round_trip() {
    let spec = TwoBridgeSpec::new(vec![3, -2]).unwrap();
    let k = build_two_bridge(&spec).unwrap();
    let rep = riley_parabolic_reps(&spec, 1e-9).unwrap().float.remove(0);
    let text = to_text(&representation_to_json(&rep));
    let back = representation_from_json::<ComplexFloat>(
        &k.presentation,
        &parse_text(&text).unwrap(),
        1e-8,
    )
    .unwrap();
    assert_eq!(to_text(&representation_to_json(&back)), text);
}

#[test]
fn result_document_fields() {
    let spec = TwoBridgeSpec::new(vec![1, -1]).unwrap();
    let k = build_two_bridge(&spec).unwrap();
    let rep = riley_parabolic_reps(&spec, 1e-9).unwrap().exact.remove(0);
    let r = twisted_alexander(&k.presentation, &rep, &TapOptions::default()).unwrap();
    let v = result_to_json(&r, 1e-9);
    assert_eq!(v["$schema"], "tapkit.result/1");
    assert_eq!(v["method"], "engine");
    assert_eq!(v["degree"], 2);
    assert_eq!(v["monic"], true);
    assert!(v["denominator"].is_null());
}

#[test]
fn malformed_documents_are_rejected() {
    let spec = TwoBridgeSpec::new(vec![1, -1]).unwrap();
    let k = build_two_bridge(&spec).unwrap();
    assert!(matches!(parse_text("{\"a\": "), Err(Error::Parse(_))));
    let wrong_schema = parse_text(r#"{"$schema": "tapkit.polynomial/9", "coeffs": {}}"#).unwrap();
    assert!(polynomial_from_json::<GaussianRational>(&wrong_schema).is_err());
    let rep = riley_parabolic_reps(&spec, 1e-9).unwrap().exact.remove(0);
    let mut v = representation_to_json(&rep);
    v["$field"] = "complex-float".into();
    assert!(representation_from_json::<AlgebraicExt>(&k.presentation, &v, 0.0).is_err());
    let mut v = representation_to_json(&rep);
    v.as_object_mut()
        .unwrap()
        .remove(&k.presentation.generators()[0]);
    assert!(representation_from_json::<AlgebraicExt>(&k.presentation, &v, 0.0).is_err());
}
