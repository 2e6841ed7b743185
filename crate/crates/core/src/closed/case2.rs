use super::{
    divide_or_fraction, geometric_sum, poly, sign, twist_sum, Division, MatPoly, RecursionBlock,
};
use crate::builders::{Case2Knot, Case2Spec, FamilySpec, TwoBridgeSpec};
use crate::engine::{Method, TapResult};
use crate::error::{Error, Result};
use crate::laurent::{det_block, LaurentPoly, Mat2};
use crate::repn::Representation;
use crate::scalar::Field;

/// A relator row of the case (2) presentation that feeds the recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case2Row {
    /// `r_j`, `-4 <= j <= 2k`; `r_-4` yields `R_-4` alone.
    R(i64),
    /// `s_j`, `0 <= j <= 2l`; `s_0` yields `S_0` alone.
    S(i64),
}

/// Blocks of a twist row pair `2i-1, 2i` as `(-R, -R')` with `R` the column of
/// `x_{2i-4}` and `R'` the column of `x_{2i-3}`. `e` is the twist exponent in
/// the defining relation (`m_i` for `x`, `-n_i` for `y`).
fn twist_rows<F: Field>(
    img: &dyn Fn(i64) -> Mat2<F>,
    i: i64,
    e: i64,
) -> Result<[RecursionBlock<F>; 2]> {
    let s = F::from_i64(sign(e));
    let sc = |x: Mat2<F>| x.scale(&s);
    let (x1, x2) = (img(2 * i - 1), img(2 * i));
    let (x3, x4) = (img(2 * i - 3), img(2 * i - 4));
    let block = |coeff, prime| RecursionBlock {
        coeff,
        coeff_prime: Some(prime),
    };
    if i % 2 == 0 {
        let p = x3.clone() * x4;
        let sum = if e >= 0 {
            geometric_sum(&p, 0, e - 1)?
        } else {
            geometric_sum(&p, e, -1)?
        };
        let pe = p.pow(e)?;
        let sx = sum.clone() * x3;
        Ok([
            block(
                poly(vec![(1, sc(sx.clone())), (2, -sc(x1.clone() * sx.clone()))]),
                poly(vec![
                    (0, sc(sum.clone()) + pe.clone()),
                    (1, -sc(x1 * sum.clone())),
                ]),
            ),
            block(
                poly(vec![(0, -sc(x2.clone() * sx.clone()) + pe), (1, sc(sx))]),
                poly(vec![(-1, -sc(x2 * sum.clone())), (0, sc(sum))]),
            ),
        ])
    } else {
        let p = x3.inverse()? * x4.inverse()?;
        let sum = if e > 0 {
            geometric_sum(&p, 1, e)?
        } else {
            geometric_sum(&p, e + 1, 0)?
        };
        let sx = sum.clone() * x4.clone();
        Ok([
            block(
                poly(vec![
                    (0, -sc(sum.clone())),
                    (1, sc(x1.clone() * sum.clone())),
                ]),
                poly(vec![
                    (-1, -sc(sx.clone())),
                    (0, sc(x1.clone() * sx.clone()) + x1 * p.pow(e + 1)? * x4),
                ]),
            ),
            block(
                poly(vec![
                    (-1, sc(x2.clone() * sum.clone())),
                    (0, -sc(sum) + p.pow(e)?),
                ]),
                poly(vec![(-2, sc(x2 * sx.clone())), (-1, -sc(sx))]),
            ),
        ])
    }
}

fn x_img<'a, F: Field>(
    knot: &'a Case2Knot,
    rep: &'a Representation<F>,
) -> impl Fn(i64) -> Mat2<F> + 'a {
    move |j| rep.image(knot.x(j)).clone()
}

fn y_img<'a, F: Field>(
    knot: &'a Case2Knot,
    rep: &'a Representation<F>,
) -> impl Fn(i64) -> Mat2<F> + 'a {
    move |j| rep.image(knot.y(j)).clone()
}

/// `R_-4 = Phi(d r_-4 / d a)`.
pub fn r_m4_block<F: Field>(knot: &Case2Knot, rep: &Representation<F>) -> Result<MatPoly<F>> {
    let (a, c, x) = (
        rep.image(knot.a()),
        rep.image(knot.c()),
        rep.image(knot.x(-4)),
    );
    if knot.spec.beta1_sign > 0 {
        Ok(poly(vec![(-2, x.clone() * c.inverse()?)]))
    } else {
        let ai = a.inverse()?;
        Ok(poly(vec![
            (-2, -(x.clone() * ai.clone())),
            (-1, ai.clone() * (Mat2::identity() + c.clone() * ai)),
        ]))
    }
}

/// `S_0 = Phi(d s_0 / d a)`.
pub fn s0_block<F: Field>(knot: &Case2Knot, rep: &Representation<F>) -> Result<MatPoly<F>> {
    let (a, c, y) = (
        rep.image(knot.a()),
        rep.image(knot.c()),
        rep.image(knot.y(0)),
    );
    let inv = if knot.spec.beta1_sign > 0 {
        c.inverse()?
    } else {
        a.inverse()?
    };
    let s = F::from_i64(knot.spec.beta1_sign);
    Ok(poly(vec![
        (-2, (y.clone() * inv.clone()).scale(&s)),
        (-1, -inv.scale(&s)),
    ]))
}

/// The recursion blocks for a relator row: `R_-4` or `S_0` alone, otherwise
/// `(-R_j, -R'_j)` or `(-S_j, -S'_j)`.
pub fn case2_block<F: Field>(
    knot: &Case2Knot,
    rep: &Representation<F>,
    row: Case2Row,
) -> Result<RecursionBlock<F>> {
    let (k, l) = (knot.spec.k() as i64, knot.spec.l() as i64);
    match row {
        Case2Row::R(-4) => Ok(RecursionBlock {
            coeff: r_m4_block(knot, rep)?,
            coeff_prime: None,
        }),
        Case2Row::S(0) => Ok(RecursionBlock {
            coeff: s0_block(knot, rep)?,
            coeff_prime: None,
        }),
        Case2Row::R(j) if (-1..=2 * k).contains(&j) => {
            let i = (j + 1).div_euclid(2);
            let rows = twist_rows(&x_img(knot, rep), i, knot.spec.m[i as usize])?;
            Ok(rows[(j - (2 * i - 1)) as usize].clone())
        }
        Case2Row::S(j) if (1..=2 * l).contains(&j) => {
            let i = (j + 1) / 2;
            let rows = twist_rows(&y_img(knot, rep), i, -knot.spec.n[(i - 1) as usize])?;
            Ok(rows[(j - (2 * i - 1)) as usize].clone())
        }
        Case2Row::R(j) | Case2Row::S(j) => Err(Error::IndexOutOfRange(j)),
    }
}

type Pair<F> = (MatPoly<F>, MatPoly<F>);

fn step<F: Field>(b: &RecursionBlock<F>, u: &Pair<F>, v: &Pair<F>) -> Pair<F> {
    let p = b.coeff_prime.clone().expect("twist rows carry two blocks");
    (
        b.coeff.clone() * u.0.clone() + p.clone() * v.0.clone(),
        b.coeff.clone() * u.1.clone() + p * v.1.clone(),
    )
}

/// Runs the twist recursion from seeds stored at indices `-4, ..., 2 first - 2`
/// and closes it with the row `z_{2h-1} = z_{2h-2}^-1`.
fn chain<F: Field>(
    seeds: Vec<Pair<F>>,
    first: i64,
    rows: &[[RecursionBlock<F>; 2]],
    last_odd: &Mat2<F>,
) -> Pair<F> {
    let mut seq = seeds;
    let at = |seq: &Vec<Pair<F>>, j: i64| seq[(j + 4) as usize].clone();
    for (off, pair) in rows.iter().enumerate() {
        let i = first + off as i64;
        let (u, v) = (at(&seq, 2 * i - 4), at(&seq, 2 * i - 3));
        let a = step(&pair[0], &u, &v);
        let b = step(&pair[1], &u, &v);
        debug_assert_eq!(seq.len() as i64, 2 * i + 3);
        seq.push(a);
        seq.push(b);
    }
    let h = first + rows.len() as i64 - 1;
    let (u, v) = (at(&seq, 2 * h - 2), at(&seq, 2 * h - 1));
    let tx = poly(vec![(1, -last_odd.clone())]);
    (tx.clone() * u.0 - v.0, tx * u.1 - v.1)
}

/// Outcome of the case (2) recursion.
#[derive(Clone, Debug)]
pub struct Case2Recursion<F: Field> {
    pub result: TapResult<F>,
    /// `(M_{2k+1}, M'_{2k+1})`.
    pub m_last: (MatPoly<F>, MatPoly<F>),
    /// `(N_{2l+1}, N'_{2l+1})`.
    pub n_last: (MatPoly<F>, MatPoly<F>),
}

/// `det [[M, M'], [N, N']] / (t^2 - tr(C) t + 1)`.
pub fn recursion_case2<F: Field>(
    knot: &Case2Knot,
    rep: &Representation<F>,
    tol: f64,
) -> Result<Case2Recursion<F>> {
    let (k, l) = (knot.spec.k() as i64, knot.spec.l() as i64);
    let e = || poly(vec![(0, Mat2::<F>::identity())]);
    let z = MatPoly::<F>::zero;
    let x = x_img(knot, rep);
    let y = y_img(knot, rep);
    let x_rows = (0..=k)
        .map(|i| twist_rows(&x, i, knot.spec.m[i as usize]))
        .collect::<Result<Vec<_>>>()?;
    let y_rows = (1..=l)
        .map(|i| twist_rows(&y, i, -knot.spec.n[(i - 1) as usize]))
        .collect::<Result<Vec<_>>>()?;
    let m_seeds = vec![(r_m4_block(knot, rep)?, z()), (-e(), z()), (z(), -e())];
    let m_last = chain(m_seeds, 0, &x_rows, &x(2 * k - 1));
    // y indices start at -2; pad so that index -2 sits at offset 2
    let n_seeds = vec![
        (z(), z()),
        (z(), z()),
        (z(), -e()),
        (z(), z()),
        (s0_block(knot, rep)?, z()),
    ];
    let n_last = chain(n_seeds, 1, &y_rows, &y(2 * l - 1));
    let numerator = det_block(&[
        vec![m_last.0.clone(), m_last.1.clone()],
        vec![n_last.0.clone(), n_last.1.clone()],
    ])?;
    let c = rep.image(knot.c());
    let den = LaurentPoly::new(0, vec![F::one(), -c.trace(), F::one()]);
    let result = match divide_or_fraction(
        &numerator.prune(tol),
        &den,
        rep,
        "c",
        Method::Recursion,
        tol,
    )? {
        Division::Exact(q, rel) => {
            TapResult::from_quotient(&q, "c".into(), Method::Recursion, rel, tol)?
        }
        Division::Fraction(out) => out,
    };
    Ok(Case2Recursion {
        result,
        m_last,
        n_last,
    })
}

/// Range of the sums `sum_j (BA)^j` and `sum_j (BC)^j` in the `lambda`
/// determinant, as a function of the twist count `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumRange {
    /// `j = 0, ..., m-1` for `m > 0`; `j = m, ..., -1` for `m < 0`.
    Forward,
    /// `j = -m, ..., -1` for `m > 0`; `j = 0, ..., -m-1` for `m < 0`.
    Backward,
}

impl SumRange {
    pub fn bounds(self, m: i64) -> (i64, i64) {
        match (self, m > 0) {
            (SumRange::Forward, true) => (0, m - 1),
            (SumRange::Forward, false) => (m, -1),
            (SumRange::Backward, true) => (-m, -1),
            (SumRange::Backward, false) => (0, -m - 1),
        }
    }
}

/// Sum ranges of the `(BA)` and `(BC)` sums for the given sign of `beta1`.
pub fn lambda_ranges(beta1_sign: i64) -> (SumRange, SumRange) {
    if beta1_sign > 0 {
        (SumRange::Forward, SumRange::Forward)
    } else {
        (SumRange::Backward, SumRange::Forward)
    }
}

/// The `lambda` determinant of the `m0 = 0` branch:
/// `|s(m1) S1 + s(n1) A^-1 C S2 + s(m1 n1) S1 S2 BC|` for `beta1 > 0` and
/// `|s(m1) S1 + s(n1) A^-1 C S2 - s(m1 n1) S1 S2|` for `beta1 < 0`, where
/// `S1`, `S2` are the sums of powers of `BA`, `BC` over [`lambda_ranges`].
pub fn lambda_factor<F: Field>(knot: &Case2Knot, rep: &Representation<F>) -> Result<F> {
    let (a, b, c) = (
        rep.image(knot.a()).clone(),
        rep.image(knot.b()).clone(),
        rep.image(knot.c()).clone(),
    );
    let (m1, n1) = (knot.spec.m[1], knot.spec.n[0]);
    let (ba, bc) = lambda_ranges(knot.spec.beta1_sign);
    let (lo, hi) = ba.bounds(m1);
    let s1 = geometric_sum(&(b.clone() * a.clone()), lo, hi)?;
    let (lo, hi) = bc.bounds(n1);
    let s2 = geometric_sum(&(b.clone() * c.clone()), lo, hi)?;
    let (sm, sn) = (F::from_i64(sign(m1)), F::from_i64(sign(n1)));
    let smn = F::from_i64(sign(m1) * sign(n1));
    let mid = (a.inverse()? * c.clone() * s2.clone()).scale(&sn);
    let m = if knot.spec.beta1_sign > 0 {
        s1.scale(&sm) + mid + (s1 * s2 * b * c).scale(&smn)
    } else {
        s1.scale(&sm) + mid - (s1 * s2).scale(&smn)
    };
    Ok(m.det())
}

/// Which closed form governs the extreme coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case2Branch {
    /// `m0 != 0`.
    Kappa,
    /// `m0 = 0`.
    Lambda,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Case2Coeffs<F: Field> {
    pub branch: Case2Branch,
    /// `kappa_0` or `lambda_0`.
    pub value: F,
    /// Degree predicted when `value` is nonzero.
    pub degree: usize,
}

/// `kappa_0` or `lambda_0` with the predicted degree.
pub fn coeffs_case2<F: Field>(knot: &Case2Knot, rep: &Representation<F>) -> Result<Case2Coeffs<F>> {
    let (k, l) = (knot.spec.k(), knot.spec.l());
    let x_factor = |i: usize| -> Result<F> {
        let p = rep.phi(&knot.presentation)?.word(&knot.x_twist(i as i64)).0;
        Ok(twist_sum(&p, knot.spec.m[i])?.det())
    };
    let y_factor = |i: usize| -> Result<F> {
        let q = rep.phi(&knot.presentation)?.word(&knot.y_twist(i as i64)).0;
        Ok(twist_sum(&q, knot.spec.n[i - 1])?.det())
    };
    let (branch, first, degree) = if knot.spec.m[0] != 0 {
        (Case2Branch::Kappa, 0, 2 * (k + l + 1))
    } else {
        (Case2Branch::Lambda, 2, 2 * (k + l) - 2)
    };
    let mut value = F::one();
    for i in first..=k {
        value = value * x_factor(i)?;
    }
    for i in first.max(1)..=l {
        value = value * y_factor(i)?;
    }
    if branch == Case2Branch::Lambda {
        value = value * lambda_factor(knot, rep)?;
    }
    Ok(Case2Coeffs {
        branch,
        value,
        degree,
    })
}

/// Leading coefficient and degree of the Alexander polynomial from the
/// continued fraction data alone.
pub fn alex_closed_form(spec: &FamilySpec) -> Result<(u64, usize)> {
    match spec {
        FamilySpec::TwoBridge(s) => Ok(alex_two_bridge(s)),
        FamilySpec::Case2(s) => Ok(alex_case2(s)),
        FamilySpec::Case3(_) => Err(Error::Unsupported(
            "closed form Alexander polynomial for the case (3) family".into(),
        )),
    }
}

fn abs_prod(v: &[i64]) -> u64 {
    v.iter().map(|m| m.unsigned_abs()).product()
}

fn alex_two_bridge(s: &TwoBridgeSpec) -> (u64, usize) {
    (abs_prod(&s.m), s.k() + 1)
}

fn alex_case2(s: &Case2Spec) -> (u64, usize) {
    let (k, l) = (s.k(), s.l());
    if s.m[0] != 0 {
        return (abs_prod(&s.m) * abs_prod(&s.n), k + l + 2);
    }
    let (m1, n1) = (s.m[1], s.n[0]);
    let cross = if s.beta1_sign > 0 {
        m1 + n1 + m1 * n1
    } else {
        m1 + n1 - m1 * n1
    };
    (
        abs_prod(&s.m[2..]) * abs_prod(&s.n[1..]) * cross.unsigned_abs(),
        k + l,
    )
}
