use tapkit_core::builders::{
    build_case2, build_case3, build_two_bridge, Case2Knot, Case2Spec, Case3Knot, Case3Spec,
    FamilySpec, TwoBridgeKnot, TwoBridgeSpec,
};
use tapkit_core::closed::{
    alex_closed_form, case2_block, case3_blocks, case3_polynomial, recursion_case2,
    recursion_two_bridge, trace_formula_mismatches, two_bridge_block, AConvention, Case2Row,
    MatPoly,
};
use tapkit_core::engine::{alexander, twisted_alexander, TapOptions};
use tapkit_core::group::Gen;
use tapkit_core::laurent::Mat2;
use tapkit_core::repn::{riley_parabolic_reps, search_nonabelian, Representation, SearchOptions};
use tapkit_core::scalar::{ComplexFloat, Field, GaussianRational};

fn gap(a: &MatPoly<ComplexFloat>, b: &MatPoly<ComplexFloat>, sign: i64) -> f64 {
    let b = b.lmul(&Mat2::scalar(ComplexFloat::from_i64(sign)));
    (a.clone() - b)
        .terms()
        .map(|(_, c)| c.max_norm())
        .fold(0.0, f64::max)
}

fn two_bridge_rep(k: &TwoBridgeKnot) -> Representation<ComplexFloat> {
    let reps = riley_parabolic_reps(&k.spec, 1e-9).unwrap();
    match reps.exact.first() {
        Some(r) => r.to_float(&k.presentation, 1e-9).unwrap(),
        None => reps.float[0].clone(),
    }
}

#[test]
fn two_bridge_blocks_match_fox() {
    for m in [
        vec![1, -1],
        vec![2, 3],
        vec![-2, 3],
        vec![1, -1, 2, 3],
        vec![-2, 1, -1, -2],
    ] {
        let k = build_two_bridge(&TwoBridgeSpec::new(m.clone()).unwrap()).unwrap();
        let p = &k.presentation;
        let rep = two_bridge_rep(&k);
        let phi = rep.phi(p).unwrap();
        for j in -1..=2 * k.spec.k() as i64 {
            let i = (j + 1).div_euclid(2);
            let (c, cp): (Gen, Option<Gen>) = match i {
                0 => (k.a(), None),
                1 => (k.a(), Some(k.x(-1))),
                _ => (k.x(2 * i - 4), Some(k.x(2 * i - 3))),
            };
            let row = phi.fox_row(&p.relators()[k.relator_index(j)]);
            let blk = two_bridge_block(&k, &rep, j).unwrap();
            let sign = if j <= 2 { 1 } else { -1 };
            assert!(gap(&blk.coeff, &row[c.0], sign) < 1e-9, "{m:?} row {j}");
            if let Some(cp) = cp {
                assert!(
                    gap(blk.coeff_prime.as_ref().unwrap(), &row[cp.0], -1) < 1e-9,
                    "{m:?} row {j}'"
                );
            }
        }
        let rec = recursion_two_bridge(&k, &rep, 1e-10).unwrap();
        assert!(rec.windows_hold(), "{m:?}");
    }
}

fn case2_rows(k: &Case2Knot) -> Vec<(Case2Row, usize, Gen, Option<Gen>)> {
    let mut rows = vec![(Case2Row::R(-4), k.r_index(-4), k.a(), None)];
    for j in -1..=2 * k.spec.k() as i64 {
        let i = (j + 1).div_euclid(2);
        rows.push((
            Case2Row::R(j),
            k.r_index(j),
            k.x(2 * i - 4),
            Some(k.x(2 * i - 3)),
        ));
    }
    rows.push((Case2Row::S(0), k.s_index(0), k.a(), None));
    for j in 1..=2 * k.spec.l() as i64 {
        let i = (j + 1) / 2;
        rows.push((
            Case2Row::S(j),
            k.s_index(j),
            k.y(2 * i - 4),
            Some(k.y(2 * i - 3)),
        ));
    }
    rows
}

#[test]
fn case2_blocks_match_fox() {
    for (s, m, n) in [
        (1, vec![1, 2, -1], vec![-2, 1]),
        (-1, vec![-1, -2, 1], vec![2, -1]),
        (1, vec![0, -2, 1], vec![-2, -1]),
        (-1, vec![0, 1, 2], vec![1, 2]),
        (1, vec![2, 1, -1, 2, 1], vec![1, -1]),
    ] {
        let spec = Case2Spec::new(s, m, n).unwrap();
        let k = build_case2(&spec).unwrap();
        let p = &k.presentation;
        let (rep, _) = search_nonabelian(p, 0..400, &SearchOptions::default()).unwrap();
        let phi = rep.phi(p).unwrap();
        for (row, idx, c, cp) in case2_rows(&k) {
            let fox = phi.fox_row(&p.relators()[idx]);
            let blk = case2_block(&k, &rep, row).unwrap();
            let sign = if cp.is_none() { 1 } else { -1 };
            assert!(gap(&blk.coeff, &fox[c.0], sign) < 1e-8, "{spec:?} {row:?}");
            if let Some(cp) = cp {
                assert!(
                    gap(blk.coeff_prime.as_ref().unwrap(), &fox[cp.0], sign) < 1e-8,
                    "{spec:?} {row:?}'"
                );
            }
        }
        let rec = recursion_case2(&k, &rep, 1e-10).unwrap();
        let eng = twisted_alexander(p, &rep, &TapOptions::with_tol(1e-10)).unwrap();
        assert!(rec.result.equivalent(&eng, 1e-7), "{spec:?}");
    }
}

#[test]
fn alexander_closed_forms() {
    let specs = [
        FamilySpec::TwoBridge(TwoBridgeSpec::new(vec![2, -3, 1, 2]).unwrap()),
        FamilySpec::Case2(Case2Spec::new(1, vec![1, 2, -1], vec![-2, 1]).unwrap()),
        FamilySpec::Case2(Case2Spec::new(1, vec![0, -2, 1], vec![-3, 1]).unwrap()),
        FamilySpec::Case2(Case2Spec::new(-1, vec![0, 2, 1], vec![-2, -1]).unwrap()),
    ];
    for spec in &specs {
        let p = match spec {
            FamilySpec::TwoBridge(s) => build_two_bridge(s).unwrap().presentation,
            FamilySpec::Case2(s) => build_case2(s).unwrap().presentation,
            FamilySpec::Case3(_) => unreachable!(),
        };
        let (lead, degree) = alex_closed_form(spec).unwrap();
        let a = alexander(&p).unwrap().normalized();
        assert_eq!(a.max_exp(), Some(degree as i64), "{spec:?}");
        assert_eq!(a.leading().unwrap().norm(), lead as f64, "{spec:?}");
    }
}

fn case3_fox_gap(k: &Case3Knot, rep: &Representation<ComplexFloat>, conv: AConvention) -> f64 {
    let p = &k.presentation;
    let fox = rep.phi(p).unwrap().fox_row(&p.relators()[0])[k.x().0].clone();
    gap(&case3_blocks(k, rep, conv).unwrap().as_poly(), &fox, 1)
}

#[test]
fn case3_a_convention() {
    for n in -4..=4 {
        let k = build_case3(Case3Spec { n }).unwrap();
        let (rep, _) =
            search_nonabelian(&k.presentation, 0..200, &SearchOptions::default()).unwrap();
        assert!(
            case3_fox_gap(&k, &rep, AConvention::PositiveIdentity) < 1e-9,
            "n={n}"
        );
        if n % 2 == 0 && n != 0 {
            assert!(
                case3_fox_gap(&k, &rep, AConvention::PositiveMinusY) > 1e-3,
                "n={n}"
            );
        }
    }
}

#[test]
fn case3_trace_formulas() {
    for n in -4..=4 {
        let k = build_case3(Case3Spec { n }).unwrap();
        let (rep, _) =
            search_nonabelian(&k.presentation, 0..200, &SearchOptions::default()).unwrap();
        let bad = trace_formula_mismatches(&k, &rep, 1e-7).unwrap();
        assert!(bad.iter().all(|&i| i == 7), "n={n}: {bad:?}");
    }
}

#[test]
fn case3_trivial_rep_matches_engine() {
    for n in -4..=4 {
        let k = build_case3(Case3Spec { n }).unwrap();
        let rep = Representation::<GaussianRational>::trivial(&k.presentation);
        let closed = case3_polynomial(&k, &rep, 0.0).unwrap();
        let eng =
            twisted_alexander(&k.presentation, &rep, &TapOptions::default().column(k.z())).unwrap();
        assert!(closed.denominator.is_some());
        assert!(closed.equivalent(&eng, 0.0), "n={n}");
    }
}
