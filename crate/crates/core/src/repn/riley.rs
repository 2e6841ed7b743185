use super::{polynomial_roots, validate_rep, Propagation, Representation};
use crate::builders::{build_two_bridge, TwoBridgeKnot, TwoBridgeSpec};
use crate::error::{Error, Result};
use crate::laurent::Mat2;
use crate::scalar::{AlgebraicExt, ComplexFloat, Field, GaussianRational, Modulus, Ring, UPoly};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type QPoly = UPoly<GaussianRational>;

/// Parabolic representations `a -> [[1,1],[0,1]]`, `b -> [[1,0],[w,1]]`
/// of a two-bridge knot group, one per distinct nonzero root `w` of the
/// Riley polynomial.
#[derive(Clone, Debug)]
pub struct RileyReps {
    /// Square-free monic Riley polynomial with the factor `w` removed.
    pub polynomial: QPoly,
    /// Roots handled exactly: rational or Gaussian rational roots, and roots
    /// of a remaining irreducible quadratic.
    pub exact: Vec<Representation<AlgebraicExt>>,
    /// Roots of higher degree factors, as floating point representations.
    pub float: Vec<Representation<ComplexFloat>>,
}

impl RileyReps {
    pub fn len(&self) -> usize {
        self.exact.len() + self.float.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Ring for QPoly {
    fn zero() -> Self {
        UPoly::zero()
    }
    fn one() -> Self {
        UPoly::constant(GaussianRational::one())
    }
    fn is_zero(&self) -> bool {
        UPoly::is_zero(self)
    }
}

fn parabolic_pair<R: Ring>(one: R, w: R) -> (Mat2<R>, Mat2<R>) {
    let a = Mat2::new(one.clone(), one.clone(), R::zero(), one.clone());
    let b = Mat2::new(one.clone(), R::zero(), w, one);
    (a, b)
}

fn complete<R: Ring>(
    knot: &TwoBridgeKnot,
    prop: &Propagation,
    a: Mat2<R>,
    b: Mat2<R>,
) -> Vec<Mat2<R>> {
    let free: Vec<Mat2<R>> = prop
        .free()
        .iter()
        .map(|&g| if g == knot.a() { a.clone() } else { b.clone() })
        .collect();
    prop.complete(&free)
}

/// Gcd of the entries of `rho(r) - E` over the residual relators, with every
/// factor `w` divided out; `rho` is the symbolic parabolic representation.
pub fn riley_polynomial(knot: &TwoBridgeKnot) -> Result<QPoly> {
    let prop = Propagation::new(&knot.presentation);
    debug_assert_eq!(prop.free(), &[knot.b(), knot.a()]);
    let (a, b) = parabolic_pair(QPoly::one(), QPoly::x());
    let images = complete(knot, &prop, a, b);
    let opt: Vec<Option<Mat2<QPoly>>> = images.into_iter().map(Some).collect();
    let mut g = QPoly::zero();
    for &i in prop.residual() {
        let m =
            super::propagate::eval_word(&knot.presentation.relators()[i], &opt) - Mat2::identity();
        for e in m.e {
            g = g.gcd(&e)?;
        }
    }
    if g.is_zero() {
        return Err(Error::NoNonabelianRoot);
    }
    while g.coeff(0).is_zero() && g.degree() > Some(0) {
        g = g.divrem(&QPoly::x())?.0;
    }
    Ok(g)
}

pub fn riley_parabolic_reps(spec: &TwoBridgeSpec, tol: f64) -> Result<RileyReps> {
    let knot = build_two_bridge(spec)?;
    let raw = riley_polynomial(&knot)?;
    if raw.degree() == Some(0) {
        return Err(Error::NoNonabelianRoot);
    }
    let poly = raw.squarefree()?;
    let (rational, rest) = split_rational_roots(&poly)?;
    let prop = Propagation::new(&knot.presentation);
    let mut exact_roots: Vec<(QPoly, Option<Complex64>)> = rational
        .into_iter()
        .map(|r| (linear(&r), Some(r.to_complex())))
        .collect();
    let mut float_roots = Vec::new();
    match rest.degree() {
        Some(2) => {
            let numeric = polynomial_roots(&to_complex_coeffs(&rest));
            match gaussian_roots_of_quadratic(&rest) {
                Some(rs) => {
                    exact_roots.extend(rs.into_iter().map(|r| (linear(&r), Some(r.to_complex()))))
                }
                None => exact_roots.extend(numeric.into_iter().map(|z| (rest.clone(), Some(z)))),
            }
        }
        Some(d) if d > 0 => {
            float_roots = polish(&poly, polynomial_roots(&to_complex_coeffs(&rest)))
        }
        _ => {}
    }
    let mut exact = Vec::new();
    for (modpoly, root) in exact_roots {
        let modulus = Modulus::new(modpoly, root)?;
        let (a, b) = parabolic_pair(AlgebraicExt::one(), AlgebraicExt::generator(&modulus));
        exact.push(validate_rep(
            &knot.presentation,
            complete(&knot, &prop, a, b),
            0.0,
        )?);
    }
    let mut float = Vec::new();
    for z in float_roots {
        let z = refine_on_relators(&knot, &prop, z);
        let (a, b) = parabolic_pair(ComplexFloat::one(), ComplexFloat(z));
        float.push(validate_rep(
            &knot.presentation,
            complete(&knot, &prop, a, b),
            tol,
        )?);
    }
    Ok(RileyReps {
        polynomial: poly,
        exact,
        float,
    })
}

/// One parabolic representation found by damped Newton iteration on `w`
/// against the relators, started from a seeded random point. Avoids the Riley
/// polynomial entirely, so it scales to knots of large determinant.
pub fn riley_rep_newton(
    knot: &TwoBridgeKnot,
    seeds: impl IntoIterator<Item = u64>,
    tol: f64,
) -> Result<Representation<ComplexFloat>> {
    let prop = Propagation::new(&knot.presentation);
    let size = |r: &[Complex64]| r.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let mut best = f64::INFINITY;
    for seed in seeds {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut w = Complex64::from_polar(
            rng.gen_range(0.2..3.0),
            rng.gen_range(0.0..std::f64::consts::TAU),
        );
        let mut r = relator_residual(knot, &prop, w);
        for _ in 0..200 {
            if size(&r) < 1e-14 {
                break;
            }
            let h = 1e-7 * w.norm().max(1.0);
            let rp = relator_residual(knot, &prop, w + h);
            let rm = relator_residual(knot, &prop, w - h);
            let j: Vec<Complex64> = rp
                .iter()
                .zip(&rm)
                .map(|(p, m)| (p - m) / (2.0 * h))
                .collect();
            let jj: f64 = j.iter().map(|c| c.norm_sqr()).sum();
            if jj == 0.0 || !jj.is_finite() {
                break;
            }
            let step: Complex64 = j
                .iter()
                .zip(&r)
                .map(|(a, b)| a.conj() * b)
                .sum::<Complex64>()
                / jj;
            let mut lambda = 1.0;
            let mut moved = false;
            while lambda > 1e-6 {
                let next = w - step * lambda;
                let rn = relator_residual(knot, &prop, next);
                if size(&rn) < size(&r) {
                    w = next;
                    r = rn;
                    moved = true;
                    break;
                }
                lambda *= 0.5;
            }
            if !moved {
                break;
            }
        }
        best = best.min(size(&r));
        if w.norm() > 1e-6 && size(&r) <= tol {
            let (a, b) = parabolic_pair(ComplexFloat::one(), ComplexFloat(w));
            if let Ok(rep) = validate_rep(&knot.presentation, complete(knot, &prop, a, b), tol) {
                return Ok(rep);
            }
        }
    }
    Err(Error::DidNotConverge {
        best_residual: best,
    })
}

fn relator_residual(knot: &TwoBridgeKnot, prop: &Propagation, w: Complex64) -> Vec<Complex64> {
    let (a, b) = parabolic_pair(ComplexFloat::one(), ComplexFloat(w));
    let images: Vec<Option<Mat2<ComplexFloat>>> =
        complete(knot, prop, a, b).into_iter().map(Some).collect();
    let mut out = Vec::new();
    for &i in prop.residual() {
        let m = super::propagate::eval_word(&knot.presentation.relators()[i], &images)
            - Mat2::identity();
        out.extend(m.e.iter().map(|c| c.0));
    }
    out
}

/// Gauss-Newton on `w` against the relator entries themselves, which are far
/// better conditioned than the expanded Riley polynomial.
fn refine_on_relators(knot: &TwoBridgeKnot, prop: &Propagation, mut w: Complex64) -> Complex64 {
    let size = |r: &[Complex64]| r.iter().map(|c| c.norm_sqr()).sum::<f64>();
    let mut r = relator_residual(knot, prop, w);
    for _ in 0..30 {
        let h = 1e-7 * w.norm().max(1.0);
        let rp = relator_residual(knot, prop, w + h);
        let rm = relator_residual(knot, prop, w - h);
        let j: Vec<Complex64> = rp
            .iter()
            .zip(&rm)
            .map(|(p, m)| (p - m) / (2.0 * h))
            .collect();
        let jj: f64 = j.iter().map(|c| c.norm_sqr()).sum();
        if jj == 0.0 {
            break;
        }
        let jr: Complex64 = j.iter().zip(&r).map(|(a, b)| a.conj() * b).sum();
        let next = w - jr / jj;
        let rn = relator_residual(knot, prop, next);
        if size(&rn).partial_cmp(&size(&r)) != Some(std::cmp::Ordering::Less) {
            break;
        }
        w = next;
        r = rn;
    }
    w
}

fn linear(r: &GaussianRational) -> QPoly {
    QPoly::new(vec![-r.clone(), GaussianRational::one()])
}

fn to_complex_coeffs(p: &QPoly) -> Vec<Complex64> {
    p.coeffs().iter().map(|c| c.to_complex()).collect()
}

fn polish(p: &QPoly, roots: Vec<Complex64>) -> Vec<Complex64> {
    let c = to_complex_coeffs(p);
    roots
        .into_iter()
        .map(|mut z| {
            for _ in 0..8 {
                let (mut v, mut dv) = (Complex64::zero(), Complex64::zero());
                for a in c.iter().rev() {
                    dv = dv * z + v;
                    v = v * z + a;
                }
                let step = v / dv;
                if !step.is_finite() {
                    break;
                }
                z -= step;
            }
            z
        })
        .collect()
}

/// Rational roots of a square-free polynomial with rational coefficients,
/// and the cofactor left after dividing them out.
fn split_rational_roots(p: &QPoly) -> Result<(Vec<GaussianRational>, QPoly)> {
    if p.coeffs().iter().any(|c| !c.is_real()) {
        return Ok((Vec::new(), p.clone()));
    }
    let den_lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.re.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (&c.re * BigRational::from_integer(den_lcm.clone())).to_integer())
        .collect();
    let lead = ints.last().unwrap().abs();
    let divisors: Vec<i64> = match lead.to_i64() {
        Some(l) if l <= 1_000_000 => (1..=l).filter(|d| l % d == 0).collect(),
        _ => vec![1],
    };
    let mut found = Vec::new();
    let mut rest = p.clone();
    for z in polynomial_roots(&to_complex_coeffs(p)) {
        if z.im.abs() > 1e-6 * z.norm().max(1.0) {
            continue;
        }
        for &q in &divisors {
            let num = (z.re * q as f64).round();
            if !num.is_finite() || num.abs() > 1e15 {
                continue;
            }
            let r = GaussianRational::from_ratio(num as i64, q);
            if p.eval(&r).is_zero() && !found.contains(&r) {
                rest = rest.divrem(&linear(&r))?.0;
                found.push(r);
                break;
            }
        }
    }
    Ok((found, rest))
}

/// Roots of a monic quadratic when they lie in Q(i).
fn gaussian_roots_of_quadratic(p: &QPoly) -> Option<Vec<GaussianRational>> {
    if p.coeffs().iter().any(|c| !c.is_real()) {
        return None;
    }
    let (c, b) = (p.coeff(0).re, p.coeff(1).re);
    let disc = &b * &b - BigRational::from_integer(4.into()) * &c;
    let half = BigRational::new(1.into(), 2.into());
    let (s, imaginary) = rational_sqrt(&disc)
        .map(|s| (s, false))
        .or_else(|| rational_sqrt(&-disc).map(|s| (s, true)))?;
    let re = -&b * &half;
    let off = s * &half;
    Some(if imaginary {
        vec![
            GaussianRational::new(re.clone(), off.clone()),
            GaussianRational::new(re, -off),
        ]
    } else {
        vec![
            GaussianRational::from_rational(&re + &off),
            GaussianRational::from_rational(re - off),
        ]
    })
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
}
