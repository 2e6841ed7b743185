use super::{
    divide_or_fraction, geometric_sum, mat_support, poly, sign, twist_sum, Division, MatPoly,
};
use crate::builders::TwoBridgeKnot;
use crate::engine::{Method, TapResult};
use crate::error::{Error, Result};
use crate::laurent::{det2, LaurentPoly, Mat2};
use crate::repn::Representation;
use crate::scalar::Field;

/// Matrices feeding the recursion for relator `r_j`: the row value is
/// `coeff * N_{2i-4} + coeff_prime * N_{2i-3}`. For `j = -1, 0` only `coeff`
/// is present (it is `R_j`); for `j = 1, 2` they are `R_j` and `-R'_j`; for
/// `j >= 3` they are `-R_j` and `-R'_j`.
#[derive(Clone, Debug)]
pub struct RecursionBlock<F: Field> {
    pub coeff: MatPoly<F>,
    pub coeff_prime: Option<MatPoly<F>>,
}

struct Ctx<'a, F: Field> {
    knot: &'a TwoBridgeKnot,
    rep: &'a Representation<F>,
}

impl<F: Field> Ctx<'_, F> {
    fn x(&self, j: i64) -> Result<Mat2<F>> {
        let phi = self.rep.phi(&self.knot.presentation)?;
        Ok(phi.word(&self.knot.x_word(j)).0)
    }

    fn twist(&self, i: i64) -> Result<Mat2<F>> {
        let phi = self.rep.phi(&self.knot.presentation)?;
        Ok(phi.word(&self.knot.twist_word(i)).0)
    }
}

/// The tabulated blocks for relator `r_j`, `-1 <= j <= 2k`.
pub fn two_bridge_block<F: Field>(
    knot: &TwoBridgeKnot,
    rep: &Representation<F>,
    j: i64,
) -> Result<RecursionBlock<F>> {
    let k = knot.spec.k() as i64;
    if j < -1 || j > 2 * k {
        return Err(Error::IndexOutOfRange(j));
    }
    let ctx = Ctx { knot, rep };
    let i = (j + 1).div_euclid(2);
    let m = knot.spec.m[i as usize];
    let s = F::from_i64(sign(m));
    let sc = |x: Mat2<F>| x.scale(&s);
    let p = ctx.twist(i)?;
    let pm = p.pow(m)?;
    let pm1 = p.pow(m + 1)?;
    let block = |coeff, coeff_prime| RecursionBlock { coeff, coeff_prime };
    match i {
        0 => {
            let sum = if m > 0 {
                geometric_sum(&p, 0, m - 1)?
            } else {
                geometric_sum(&p, m, -1)?
            };
            if j == -1 {
                let x = ctx.x(-1)?;
                Ok(block(
                    poly(vec![(-1, sc(x * sum.clone())), (0, -sc(sum) - pm)]),
                    None,
                ))
            } else {
                let x = ctx.x(0)?;
                Ok(block(
                    poly(vec![(0, -sc(sum.clone())), (1, sc(x * sum))]),
                    None,
                ))
            }
        }
        1 => {
            let sum = if m > 0 {
                geometric_sum(&p, 1, m)?
            } else {
                geometric_sum(&p, m + 1, 0)?
            };
            let ai = ctx.x(-3)?.inverse()?;
            let sa = sum * ai.clone();
            if j == 1 {
                let x = ctx.x(1)?;
                let r = poly(vec![(0, sc(x.clone() * sa.clone())), (1, -sc(sa.clone()))]);
                let rp = poly(vec![
                    (0, sc(x.clone() * sa.clone()) + x * pm1 * ai),
                    (1, -sc(sa)),
                ]);
                Ok(block(r, Some(rp)))
            } else {
                let x = ctx.x(2)?;
                let r = poly(vec![
                    (1, -sc(sa.clone()) + pm * ai),
                    (2, sc(x.clone() * sa.clone())),
                ]);
                let rp = poly(vec![(1, -sc(sa.clone())), (2, sc(x * sa))]);
                Ok(block(r, Some(rp)))
            }
        }
        _ if i % 2 == 0 => {
            let sum = if m > 0 {
                geometric_sum(&p, 1, m)?
            } else {
                geometric_sum(&p, m + 1, 0)?
            };
            let x3i = ctx.x(2 * i - 3)?.inverse()?;
            let x4i = ctx.x(2 * i - 4)?.inverse()?;
            let sy = sum * x4i.clone();
            let syx = sy.clone() * x3i.clone();
            if j == 2 * i - 1 {
                let x = ctx.x(2 * i - 1)?;
                let r = poly(vec![(-2, -sc(x.clone() * sy.clone())), (-1, sc(sy))]);
                let rp = poly(vec![
                    (-1, -sc(x * syx.clone())),
                    (0, sc(syx) + pm1 * x4i * x3i),
                ]);
                Ok(block(r, Some(rp)))
            } else {
                let x = ctx.x(2 * i)?;
                let r = poly(vec![
                    (-1, sc(sy.clone())),
                    (0, -sc(x.clone() * sy) + x.clone() * pm * x4i),
                ]);
                let rp = poly(vec![(0, sc(syx.clone())), (1, -sc(x * syx))]);
                Ok(block(r, Some(rp)))
            }
        }
        _ => {
            let sum = if m > 0 {
                geometric_sum(&p, 1, m)?
            } else {
                geometric_sum(&p, m + 1, 0)?
            };
            let x4 = ctx.x(2 * i - 4)?;
            let sx = sum.clone() * x4.clone();
            if j == 2 * i - 1 {
                let x = ctx.x(2 * i - 1)?;
                let r = poly(vec![(-1, sc(x.clone() * sum.clone())), (0, -sc(sum))]);
                let rp = poly(vec![
                    (0, sc(x.clone() * sx.clone()) + x * pm1 * x4),
                    (1, -sc(sx)),
                ]);
                Ok(block(r, Some(rp)))
            } else {
                let x = ctx.x(2 * i)?;
                let r = poly(vec![(0, -sc(sum.clone()) + pm), (1, sc(x.clone() * sum))]);
                let rp = poly(vec![(1, -sc(sx.clone())), (2, sc(x * sx))]);
                Ok(block(r, Some(rp)))
            }
        }
    }
}

/// Expected exponent window of `N_j` and the support actually found.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeWindow {
    pub index: i64,
    pub expected: (i64, i64),
    pub actual: Option<(i64, i64)>,
}

impl DegreeWindow {
    pub fn holds(&self) -> bool {
        match self.actual {
            None => true,
            Some((lo, hi)) => lo >= self.expected.0 && hi <= self.expected.1,
        }
    }
}

fn expected_window(j: i64) -> (i64, i64) {
    let i = (j + 1).div_euclid(2);
    let odd_row = j % 2 != 0;
    match (i, odd_row) {
        (0, true) => (-1, 0),
        (0, false) => (0, 1),
        (_, true) if i % 2 == 0 => (-i / 2 - 1, i / 2),
        (_, false) if i % 2 == 0 => (-i / 2, i / 2 + 1),
        (_, true) => (-(i + 1) / 2, (i + 1) / 2),
        (_, false) => (-(i + 1) / 2 + 1, (i + 1) / 2 + 1),
    }
}

#[derive(Clone, Debug)]
pub struct TwoBridgeRecursion<F: Field> {
    pub result: TapResult<F>,
    /// `N_{-1}, ..., N_{2k}`.
    pub n: Vec<MatPoly<F>>,
    pub windows: Vec<DegreeWindow>,
}

impl<F: Field> TwoBridgeRecursion<F> {
    pub fn windows_hold(&self) -> bool {
        self.windows.iter().all(DegreeWindow::holds)
    }
}

/// `|N_2k| / (t^2 - tr(B) t + 1)` with the `N_j` built from the tabulated
/// blocks.
pub fn recursion_two_bridge<F: Field>(
    knot: &TwoBridgeKnot,
    rep: &Representation<F>,
    tol: f64,
) -> Result<TwoBridgeRecursion<F>> {
    let k = knot.spec.k() as i64;
    let blocks = (-1..=2 * k)
        .map(|j| two_bridge_block(knot, rep, j))
        .collect::<Result<Vec<_>>>()?;
    let at = |j: i64| &blocks[(j + 1) as usize];
    let mut n: Vec<MatPoly<F>> = Vec::with_capacity(blocks.len());
    n.push(at(-1).coeff.clone());
    n.push(at(0).coeff.clone());
    for j in 1..=2 * k {
        let b = at(j);
        let bp = b
            .coeff_prime
            .clone()
            .expect("rows past r_0 carry two blocks");
        let v = if j <= 2 {
            b.coeff.clone() + bp * n[0].clone()
        } else {
            let i = (j + 1) / 2;
            b.coeff.clone() * n[(2 * i - 4 + 1) as usize].clone()
                + bp * n[(2 * i - 3 + 1) as usize].clone()
        };
        n.push(v);
    }
    let windows = (-1..=2 * k)
        .map(|j| DegreeWindow {
            index: j,
            expected: expected_window(j),
            actual: mat_support(&n[(j + 1) as usize], tol),
        })
        .collect();
    let numerator = det2(n.last().unwrap());
    let b = rep.image(knot.b());
    let den = LaurentPoly::new(0, vec![F::one(), -b.trace(), F::one()]);
    let result = match divide_or_fraction(
        &numerator.prune(tol),
        &den,
        rep,
        "b",
        Method::Recursion,
        tol,
    )? {
        Division::Exact(q, rel) => {
            TapResult::from_quotient(&q, "b".into(), Method::Recursion, rel, tol)?
        }
        Division::Fraction(out) => out,
    };
    Ok(TwoBridgeRecursion { result, n, windows })
}

/// `|sum_{j=1}^{|m_i|} P_i^j|` for every twist box, `P_i` the image of the
/// twist word.
pub fn twist_determinants<F: Field>(
    knot: &TwoBridgeKnot,
    rep: &Representation<F>,
) -> Result<Vec<F>> {
    let ctx = Ctx { knot, rep };
    knot.spec
        .m
        .iter()
        .enumerate()
        .map(|(i, &m)| Ok(twist_sum(&ctx.twist(i as i64)?, m)?.det()))
        .collect()
}

/// Product of the twist determinants: the extreme coefficients of the
/// invariant when nonzero.
pub fn leading_coeff_two_bridge<F: Field>(
    knot: &TwoBridgeKnot,
    rep: &Representation<F>,
) -> Result<F> {
    Ok(twist_determinants(knot, rep)?
        .into_iter()
        .fold(F::one(), |a, b| a * b))
}
