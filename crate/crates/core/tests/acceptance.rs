use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;
use tapkit_core::builders::{
    build_case2, build_case3, build_two_bridge, cf_to_rational, even_continued_fraction, Case2Knot,
    Case2Spec, Case3Spec, TwoBridgeKnot, TwoBridgeSpec,
};
use tapkit_core::closed::{
    case3_blocks, case3_coefficients, case3_leading, case3_polynomial, coeffs_case2,
    leading_coeff_two_bridge, recursion_case2, recursion_two_bridge, AConvention,
};
use tapkit_core::engine::{
    alexander, twisted_alexander, welldefinedness_report, TapOptions, TapResult,
};
use tapkit_core::group::{fox_derivative, Gen, GroupRingElement, Letter, Presentation, Word};
use tapkit_core::laurent::{LaurentPoly, Mat2};
use tapkit_core::repn::{
    riley_parabolic_reps, riley_rep_newton, search_nonabelian, Representation, SearchOptions,
};
use tapkit_core::scalar::{ComplexFloat, Field, GaussianRational};

const FLOAT_TOL: f64 = 1e-8;
const CASE2_TOL: f64 = 1e-7;
const CASE3_TOL: f64 = 1e-7;
const EXAMPLE_TOL: f64 = 1e-9;

fn verdict(n: u32, title: &str, failures: &[String], summary: String) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {n} [{title}]: {status}; {summary}");
    for f in failures.iter().take(20) {
        println!("  {f}");
    }
    assert!(
        failures.is_empty(),
        "criterion {n} failed with {} failures",
        failures.len()
    );
}

fn unit_matrix() -> [i64; 6] {
    [-3, -2, -1, 1, 2, 3]
}

fn two_bridge_grid_k1() -> Vec<Vec<i64>> {
    let vals = unit_matrix();
    vals.iter()
        .flat_map(|&a| vals.iter().map(move |&b| vec![a, b]))
        .collect()
}

fn two_bridge_samples_k3() -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let vals = unit_matrix();
    (0..200)
        .map(|_| (0..4).map(|_| *vals.choose(&mut rng).unwrap()).collect())
        .collect()
}

fn knot(m: &[i64]) -> TwoBridgeKnot {
    build_two_bridge(&TwoBridgeSpec::new(m.to_vec()).unwrap()).unwrap()
}

/// Representations attached to a two-bridge knot: the trivial one, exact
/// Riley representations and floating point ones.
struct TwoBridgeReps {
    trivial: Representation<GaussianRational>,
    exact: Vec<Representation<tapkit_core::scalar::AlgebraicExt>>,
    float: Vec<Representation<ComplexFloat>>,
}

fn reps_for(k: &TwoBridgeKnot) -> TwoBridgeReps {
    let trivial = Representation::trivial(&k.presentation);
    if k.spec.k() == 1 {
        let r = riley_parabolic_reps(&k.spec, 1e-9).unwrap();
        TwoBridgeReps {
            trivial,
            exact: r.exact,
            float: r.float,
        }
    } else {
        let float = riley_rep_newton(k, 0..64, 1e-9).into_iter().collect();
        TwoBridgeReps {
            trivial,
            exact: Vec::new(),
            float,
        }
    }
}

fn compare_two_bridge<F: Field>(
    k: &TwoBridgeKnot,
    rep: &Representation<F>,
    tol: f64,
    label: &str,
    failures: &mut Vec<String>,
) -> Option<TapResult<F>> {
    let m = &k.spec.m;
    let engine = twisted_alexander(&k.presentation, rep, &TapOptions::with_tol(1e-10));
    let rec = recursion_two_bridge(k, rep, 1e-10);
    match (engine, rec) {
        (Ok(e), Ok(r)) => {
            if !r.result.equivalent(&e, tol) {
                failures.push(format!(
                    "{m:?} {label}: recursion {} vs engine {}",
                    r.result.polynomial, e.polynomial
                ));
            }
            Some(r.result)
        }
        (e, r) => {
            failures.push(format!(
                "{m:?} {label}: engine {:?} recursion {:?}",
                e.err(),
                r.err()
            ));
            None
        }
    }
}

#[test]
fn criterion_1_two_bridge_recursion_matches_engine() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let (mut knots, mut exact, mut float) = (0, 0, 0);
    for m in two_bridge_grid_k1()
        .into_iter()
        .chain(two_bridge_samples_k3())
    {
        let k = knot(&m);
        let reps = reps_for(&k);
        knots += 1;
        compare_two_bridge(&k, &reps.trivial, 0.0, "trivial", &mut failures);
        if reps.exact.is_empty() && reps.float.is_empty() {
            failures.push(format!("{m:?}: no Riley representation found"));
        }
        for rep in &reps.exact {
            exact += 1;
            compare_two_bridge(&k, rep, 0.0, "exact Riley", &mut failures);
        }
        for rep in &reps.float {
            float += 1;
            compare_two_bridge(&k, rep, FLOAT_TOL, "float Riley", &mut failures);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs > 120.0 {
        failures.push(format!("runtime {secs:.1}s exceeds 120s"));
    }
    verdict(
        1,
        "two-bridge recursion = engine",
        &failures,
        format!("{knots} knots, {exact} exact and {float} float Riley reps plus trivial, tol exact/{FLOAT_TOL:e}, {secs:.1}s"),
    );
}

fn check_extremes<F: Field>(
    k: &TwoBridgeKnot,
    rep: &Representation<F>,
    tol: f64,
    label: &str,
    failures: &mut Vec<String>,
) -> bool {
    let lead = leading_coeff_two_bridge(k, rep).unwrap();
    if lead.norm() <= tol.max(1e-12) {
        return false;
    }
    let m = &k.spec.m;
    let r = match recursion_two_bridge(k, rep, 1e-10) {
        Ok(r) => r.result,
        Err(e) => {
            failures.push(format!("{m:?} {label}: {e}"));
            return true;
        }
    };
    let two_k = 2 * k.spec.k() as i64;
    let c0 = r.polynomial.coeff(0);
    let top = r.polynomial.coeff(two_k);
    let tol = tol * lead.norm().max(1.0);
    let ok_sign = c0.approx_eq(&lead, tol) || c0.approx_eq(&(-lead.clone()), tol);
    if r.denominator.is_some() || r.degree != two_k || !ok_sign || !top.approx_eq(&c0, tol) {
        failures.push(format!(
            "{m:?} {label}: degree {} t^0 {c0} t^2k {top} predicted {lead}",
            r.degree
        ));
    }
    true
}

#[test]
fn criterion_2_two_bridge_extreme_coefficients() {
    let mut failures = Vec::new();
    let mut checked = 0;
    for m in two_bridge_grid_k1()
        .into_iter()
        .chain(two_bridge_samples_k3())
    {
        let k = knot(&m);
        let reps = reps_for(&k);
        for rep in &reps.exact {
            checked += check_extremes(&k, rep, 0.0, "exact Riley", &mut failures) as usize;
        }
        for rep in &reps.float {
            checked += check_extremes(&k, rep, FLOAT_TOL, "float Riley", &mut failures) as usize;
        }
    }
    verdict(
        2,
        "two-bridge t^0 and t^2k coefficients = product of twist determinants, degree 2k",
        &failures,
        format!("{checked} (knot, rep) pairs with nonzero prediction, tol exact/{FLOAT_TOL:e}"),
    );
}

#[test]
fn criterion_3_two_bridge_alexander_degree_and_leading() {
    let mut failures = Vec::new();
    let grid: Vec<Vec<i64>> = two_bridge_grid_k1()
        .into_iter()
        .chain(two_bridge_samples_k3())
        .collect();
    for m in &grid {
        let k = knot(m);
        let a = alexander(&k.presentation).unwrap().normalized();
        let want = GaussianRational::from_i64(m.iter().map(|x| x.abs()).product());
        let lead = a.leading().cloned().unwrap();
        let deg = a.max_exp().unwrap();
        if deg != k.spec.k() as i64 + 1 || (lead != want && lead != -want.clone()) {
            failures.push(format!(
                "{m:?}: {a} (degree {deg}, leading {lead}, want {want})"
            ));
        }
    }
    verdict(
        3,
        "two-bridge Alexander degree k+1, leading |m_k...m_0|",
        &failures,
        format!("{} knots, exact", grid.len()),
    );
}

fn case2_samples() -> Vec<Case2Spec> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let small = [-2, -1, 1, 2];
    (0..100)
        .map(|_| {
            let beta = if rng.gen_bool(0.5) { 1 } else { -1 };
            let m0 = *[-1, 0, 1].choose(&mut rng).unwrap();
            let mut m = vec![m0];
            m.extend((0..2).map(|_| *small.choose(&mut rng).unwrap()));
            let n = (0..2).map(|_| *small.choose(&mut rng).unwrap()).collect();
            Case2Spec::new(beta, m, n).unwrap()
        })
        .collect()
}

fn compare_case2<F: Field>(
    k: &Case2Knot,
    rep: &Representation<F>,
    tol: f64,
    label: &str,
    failures: &mut Vec<String>,
) -> Option<TapResult<F>> {
    let s = &k.spec;
    let engine = twisted_alexander(&k.presentation, rep, &TapOptions::with_tol(1e-10));
    let rec = recursion_case2(k, rep, 1e-10);
    match (engine, rec) {
        (Ok(e), Ok(r)) => {
            if !r.result.equivalent(&e, tol) {
                failures.push(format!(
                    "{s:?} {label}: recursion {} vs engine {}",
                    r.result.polynomial, e.polynomial
                ));
            }
            Some(e)
        }
        (e, r) => {
            failures.push(format!(
                "{s:?} {label}: engine {:?} recursion {:?}",
                e.err(),
                r.err()
            ));
            None
        }
    }
}

#[test]
fn criterion_4_case2_recursion_matches_engine() {
    let mut failures = Vec::new();
    let (mut searched, mut degree_checks) = (0, 0);
    let samples = case2_samples();
    for spec in &samples {
        let k = build_case2(spec).unwrap();
        let trivial = Representation::<GaussianRational>::trivial(&k.presentation);
        compare_case2(&k, &trivial, 0.0, "trivial", &mut failures);
        let Some((rep, _)) = search_nonabelian(&k.presentation, 0..400, &SearchOptions::default())
        else {
            failures.push(format!(
                "{spec:?}: no nonabelian representation in 400 seeds"
            ));
            continue;
        };
        searched += 1;
        let Some(e) = compare_case2(&k, &rep, CASE2_TOL, "searched", &mut failures) else {
            continue;
        };
        let c = coeffs_case2(&k, &rep).unwrap();
        if c.value.norm() > 1e-6 {
            degree_checks += 1;
            if e.degree != c.degree as i64 {
                failures.push(format!(
                    "{spec:?}: degree {} but predicted {} ({:?})",
                    e.degree, c.degree, c.branch
                ));
            }
        }
    }
    verdict(
        4,
        "case (2) recursion = engine, degree branch",
        &failures,
        format!("{} knots, {searched} searched reps plus trivial, {degree_checks} degree checks, tol {CASE2_TOL:e}", samples.len()),
    );
}

fn tr(ms: &[&Mat2<ComplexFloat>]) -> ComplexFloat {
    ms.iter()
        .fold(Mat2::identity(), |acc: Mat2<ComplexFloat>, m| {
            acc * (*m).clone()
        })
        .trace()
}

#[test]
fn criterion_5_worked_examples_case2() {
    let mut failures = Vec::new();
    let mut summary = Vec::new();
    for (example, n1) in [(1, -2), (2, -3)] {
        let spec = Case2Spec::new(1, vec![0, -2, 1], vec![n1, 1]).unwrap();
        let k = build_case2(&spec).unwrap();
        let g = 2 * tapkit_core::builders::genus(&tapkit_core::builders::FamilySpec::Case2(
            spec.clone(),
        ))
        .unwrap() as i64;
        let (mut reps, mut witnessed) = (0, false);
        for start in (0..2000).step_by(50) {
            let Some((rep, _)) = search_nonabelian(
                &k.presentation,
                start..start + 50,
                &SearchOptions::default(),
            ) else {
                continue;
            };
            reps += 1;
            let (a, b, c) = (rep.image(k.a()), rep.image(k.b()), rep.image(k.c()));
            let e = Mat2::identity();
            let babc = b.clone() * a.clone() * b.clone() * c.clone();
            let formula = if example == 1 {
                ComplexFloat::from_i64(2) - babc.trace()
            } else {
                ComplexFloat::from_i64(1)
                    - tr(&[&(babc.clone() - e.clone()), &(b.clone() * c.clone() + e)])
            };
            let lambda = coeffs_case2(&k, &rep).unwrap().value;
            if !lambda.approx_eq(&formula, EXAMPLE_TOL) {
                failures.push(format!("{spec:?}: lambda {lambda} vs formula {formula}"));
            }
            if formula.norm() > 1e-6 && !witnessed {
                let r =
                    twisted_alexander(&k.presentation, &rep, &TapOptions::with_tol(1e-10)).unwrap();
                witnessed = if example == 1 {
                    r.degree == 2 * g - 2
                } else {
                    !r.is_monic(1e-6)
                };
                if witnessed {
                    summary.push(format!(
                        "example {example}: degree {} (4g-2 = {}), leading {}",
                        r.degree,
                        2 * g - 2,
                        r.leading
                    ));
                }
            }
            if reps >= 8 && witnessed {
                break;
            }
        }
        if reps == 0 || !witnessed {
            failures.push(format!(
                "example {example}: {reps} reps, no witness for the degree/monicity claim"
            ));
        }
    }
    verdict(
        5,
        "worked examples: lambda_0 formulas, degree 4g-2 and non-monic",
        &failures,
        format!("{}; tol {EXAMPLE_TOL:e}", summary.join("; ")),
    );
}

fn case3_fox_gap(
    k: &tapkit_core::builders::Case3Knot,
    rep: &Representation<ComplexFloat>,
    conv: AConvention,
) -> f64 {
    let p = &k.presentation;
    let fox = rep.phi(p).unwrap().fox_row(&p.relators()[0])[k.x().0].clone();
    let d = case3_blocks(k, rep, conv).unwrap().as_poly() - fox;
    d.terms().map(|(_, c)| c.max_norm()).fold(0.0, f64::max)
}

fn is_symmetric(p: &LaurentPoly<ComplexFloat>, centre: i64, tol: f64) -> bool {
    let scale = tol * p.max_norm().max(1.0);
    let (lo, hi) = (p.min_exp().unwrap_or(0), p.max_exp().unwrap_or(0));
    lo + hi == centre && (lo..=hi).all(|i| p.coeff(i).approx_eq(&p.coeff(centre - i), scale))
}

#[test]
fn criterion_6_case3_cofactor_matches_engine() {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for n in -4..=4 {
        let k = build_case3(Case3Spec { n }).unwrap();
        let p = &k.presentation;
        let opts = TapOptions::with_tol(1e-10).column(k.z());
        let trivial = Representation::<GaussianRational>::trivial(p);
        match (
            twisted_alexander(p, &trivial, &opts),
            case3_polynomial(&k, &trivial, 0.0),
        ) {
            (Ok(e), Ok(c)) if e.equivalent(&c, 0.0) => {}
            (e, c) => failures.push(format!(
                "n={n} trivial: engine {:?} closed {:?}",
                e.map(|r| r.polynomial),
                c.map(|r| r.polynomial)
            )),
        }
        let mut found = 0;
        for start in [0u64, 100, 200] {
            let Some((rep, _)) =
                search_nonabelian(p, start..start + 100, &SearchOptions::default())
            else {
                continue;
            };
            found += 1;
            let e = twisted_alexander(p, &rep, &opts).unwrap();
            let c = match case3_polynomial(&k, &rep, 1e-10) {
                Ok(c) => c,
                Err(err) => {
                    failures.push(format!("n={n}: {err}"));
                    continue;
                }
            };
            if !c.equivalent(&e, CASE3_TOL) {
                failures.push(format!(
                    "n={n}: closed {} vs engine {}",
                    c.polynomial, e.polynomial
                ));
            }
            let blocks = case3_blocks(&k, &rep, AConvention::PositiveIdentity).unwrap();
            let co = case3_coefficients(&blocks);
            if co.mismatch > CASE3_TOL {
                failures.push(format!(
                    "n={n}: the two readings of the coefficients differ by {:.1e}",
                    co.mismatch
                ));
            }
            let lead = case3_leading(&k, &rep).unwrap();
            if !co.from_low[0].approx_eq(&lead, CASE3_TOL * lead.norm().max(1.0)) {
                failures.push(format!(
                    "n={n}: extreme coefficient {} vs |sum W^i| {lead}",
                    co.from_low[0]
                ));
            }
            let sym = tapkit_core::closed::symmetric_polynomial(&co.from_low);
            let width = if k.spec.is_even() { 14 } else { 6 };
            let sym = sym.prune(1e-9);
            let full = lead.norm() > 1e-9;
            if !is_symmetric(&sym, width, CASE3_TOL) || (full && sym.min_exp() != Some(0)) {
                failures.push(format!(
                    "n={n}: output not symmetric of width {width}: {sym}"
                ));
            }
            let gap = case3_fox_gap(&k, &rep, AConvention::PositiveIdentity);
            if gap > 1e-8 {
                failures.push(format!("n={n}: blocks differ from Fox by {gap:.1e}"));
            }
            if found == 1 && k.spec.is_even() && n != 0 {
                let other = case3_fox_gap(&k, &rep, AConvention::PositiveMinusY);
                notes.push(format!(
                    "n={n}: A=E for n>0 gives Fox gap {gap:.0e}, A=-Y for n>0 gives {other:.0e}"
                ));
            }
        }
        if found == 0 {
            failures.push(format!("n={n}: no nonabelian representation found"));
        }
    }
    for note in &notes {
        println!("  {note}");
    }
    verdict(
        6,
        "case (3) cofactor expansion = engine, symmetric, A = E for n>0",
        &failures,
        format!("n in -4..4, tol {CASE3_TOL:e}"),
    );
}

fn random_word(rng: &mut ChaCha8Rng, gens: usize) -> Word {
    let len = rng.gen_range(0..12);
    Word::from_letters(
        (0..len).map(|_| Letter::new(Gen(rng.gen_range(0..gens)), rng.gen_bool(0.5))),
    )
}

#[test]
fn criterion_7_fox_calculus_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    let gens = 3;
    let one = GroupRingElement::one();
    for i in 0..1000 {
        let u = random_word(&mut rng, gens);
        let v = random_word(&mut rng, gens);
        let uv = u.mul(&v);
        let ue = GroupRingElement::from_word(u.clone());
        let uinv = GroupRingElement::from_word(u.inverse());
        let mut fundamental = GroupRingElement::zero();
        for g in (0..gens).map(Gen) {
            let product = fox_derivative(&u, g).add(&ue.mul(&fox_derivative(&v, g)));
            if fox_derivative(&uv, g) != product {
                failures.push(format!("sample {i}: product rule fails for {g:?}"));
            }
            let inverse = uinv.mul(&fox_derivative(&u, g)).neg();
            if fox_derivative(&u.inverse(), g) != inverse {
                failures.push(format!("sample {i}: inverse rule fails for {g:?}"));
            }
            let xg = GroupRingElement::gen(g).sub(&one);
            fundamental = fundamental.add(&fox_derivative(&uv, g).mul(&xg));
        }
        if fundamental != GroupRingElement::from_word(uv).sub(&one) {
            failures.push(format!("sample {i}: fundamental identity fails"));
        }
    }
    verdict(
        7,
        "Fox product rule, inverse rule, fundamental identity",
        &failures,
        "1000 random word pairs over 3 generators, exact".into(),
    );
}

enum AnyRep {
    Exact(Representation<GaussianRational>),
    Float(Representation<ComplexFloat>),
}

fn random_pair(rng: &mut ChaCha8Rng) -> Option<(String, Presentation, AnyRep)> {
    let small = [-2, -1, 1, 2];
    let search = |p: &Presentation, rng: &mut ChaCha8Rng| {
        let s = rng.gen_range(0..10_000u64);
        search_nonabelian(p, s..s + 300, &SearchOptions::default()).map(|(r, _)| AnyRep::Float(r))
    };
    match rng.gen_range(0..4) {
        0 => {
            let m: Vec<i64> = (0..2).map(|_| *small.choose(rng).unwrap()).collect();
            let k = knot(&m);
            let rep = AnyRep::Exact(Representation::trivial(&k.presentation));
            Some((format!("two-bridge {m:?} trivial"), k.presentation, rep))
        }
        1 => {
            let m: Vec<i64> = (0..2).map(|_| *small.choose(rng).unwrap()).collect();
            let k = knot(&m);
            let rep = riley_rep_newton(&k, 0..64, 1e-9).ok()?;
            Some((
                format!("two-bridge {m:?} Riley"),
                k.presentation,
                AnyRep::Float(rep),
            ))
        }
        2 => {
            let spec = Case2Spec::new(
                if rng.gen_bool(0.5) { 1 } else { -1 },
                vec![
                    *[-1, 0, 1].choose(rng).unwrap(),
                    *small.choose(rng).unwrap(),
                    *small.choose(rng).unwrap(),
                ],
                vec![*small.choose(rng).unwrap(), *small.choose(rng).unwrap()],
            )
            .unwrap();
            let k = build_case2(&spec).unwrap();
            let rep = search(&k.presentation, rng)?;
            Some((format!("{spec:?}"), k.presentation, rep))
        }
        _ => {
            let n = rng.gen_range(-4..=4);
            let k = build_case3(Case3Spec { n }).unwrap();
            let rep = search(&k.presentation, rng)?;
            Some((format!("case 3 n={n}"), k.presentation, rep))
        }
    }
}

#[test]
fn criterion_8_column_independence() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = Vec::new();
    let (mut pairs, mut columns) = (0, 0);
    let opts = TapOptions::with_tol(1e-9);
    while pairs < 50 {
        let Some((label, p, rep)) = random_pair(&mut rng) else {
            continue;
        };
        pairs += 1;
        let (agree, computed) = match &rep {
            AnyRep::Exact(r) => {
                let w = welldefinedness_report(&p, r, &opts).unwrap();
                (w.all_agree(), w.computed())
            }
            AnyRep::Float(r) => {
                let w = welldefinedness_report(&p, r, &opts).unwrap();
                (w.all_agree(), w.computed())
            }
        };
        columns += computed;
        if !agree || computed < 2 {
            failures.push(format!(
                "{label}: {computed} admissible columns, agree {agree}"
            ));
        }
    }
    verdict(
        8,
        "all admissible removed columns agree up to units",
        &failures,
        format!("{pairs} pairs, {columns} column evaluations"),
    );
}

#[test]
fn criterion_9_even_continued_fractions() {
    let mut failures = Vec::new();
    let mut count = 0;
    for alpha in 1..=200i64 {
        for beta in -alpha + 1..alpha {
            if num_integer::gcd(alpha, beta) != 1 {
                continue;
            }
            count += 1;
            let cf = even_continued_fraction(beta, alpha).unwrap();
            let e = &cf.entries;
            let shape = e.iter().enumerate().all(|(i, c)| {
                let last = i + 1 == e.len();
                (i == 0 || *c != 0) && (c % 2 == 0 || (last && beta % 2 != 0 && alpha % 2 != 0))
            });
            if cf.to_rational().ok() != Some((beta, alpha)) || !shape {
                failures.push(format!("{beta}/{alpha}: {e:?}"));
            }
        }
    }
    if cf_to_rational(&[0, 1, 1, 2]).ok() != Some((3, 5)) {
        failures.push("[0, 1, 1, 2] does not evaluate to 3/5".into());
    }
    verdict(
        9,
        "even continued fractions round-trip",
        &failures,
        format!("{count} coprime pairs with |beta| < alpha <= 200, plus [0,1,1,2] = 3/5"),
    );
}
