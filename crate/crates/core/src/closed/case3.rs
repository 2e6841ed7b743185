use super::{divide_or_fraction, poly, twist_sum, Division, MatPoly};
use crate::builders::Case3Knot;
use crate::engine::{Method, TapResult};
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Mat2};
use crate::repn::Representation;
use crate::scalar::Field;

/// Choice of the factor `A` in `Phi(dy/dx) = A B (...)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AConvention {
    /// `A = E` for `y = W^p` with `p > 0`, `A = -Y` for `p < 0`. Agrees with
    /// the Fox derivative for both parities.
    PositiveIdentity,
    /// `A = -Y` for `p > 0`, `A = E` for `p < 0` (even `n` only; odd `n` uses
    /// the same split as [`AConvention::PositiveIdentity`]).
    PositiveMinusY,
}

/// Matrices of the closed form for `K_n`: the coefficient blocks of
/// `Phi(dr/dx) = sum_i t^(low + i) blocks[i]` and the quantities they are built
/// from.
#[derive(Clone, Debug)]
pub struct Case3Blocks<F: Field> {
    pub even: bool,
    /// `M, ..., V` (even, `low = -4`) or `P, ..., U` (odd, `low = -1`).
    pub blocks: Vec<Mat2<F>>,
    pub low: i64,
    pub x: Mat2<F>,
    pub z: Mat2<F>,
    pub y: Mat2<F>,
    pub w: Mat2<F>,
    pub a: Mat2<F>,
    /// `sum_{i=1}^{|p|} W^i` with `p` the exponent of `W` in `y`.
    pub b: Mat2<F>,
}

impl<F: Field> Case3Blocks<F> {
    pub fn names(&self) -> &'static [&'static str] {
        if self.even {
            &["M", "N", "O", "P", "Q", "R", "S", "T", "U", "V"]
        } else {
            &["P", "Q", "R", "S", "T", "U"]
        }
    }

    pub fn get(&self, name: &str) -> Option<&Mat2<F>> {
        self.names()
            .iter()
            .position(|n| *n == name)
            .map(|i| &self.blocks[i])
    }

    pub fn as_poly(&self) -> MatPoly<F> {
        poly(
            self.blocks
                .iter()
                .enumerate()
                .map(|(i, b)| (self.low + i as i64, b.clone()))
                .collect(),
        )
    }
}

fn prod<F: Field>(ms: &[&Mat2<F>]) -> Mat2<F> {
    ms.iter()
        .fold(Mat2::identity(), |acc, m| acc * (*m).clone())
}

fn a_factor<F: Field>(even: bool, p: i64, y: &Mat2<F>, conv: AConvention) -> Mat2<F> {
    let flip = even && conv == AConvention::PositiveMinusY;
    if (p > 0) != flip {
        Mat2::identity()
    } else {
        -y.clone()
    }
}

pub fn case3_blocks<F: Field>(
    knot: &Case3Knot,
    rep: &Representation<F>,
    conv: AConvention,
) -> Result<Case3Blocks<F>> {
    let phi = rep.phi(&knot.presentation)?;
    let x = rep.image(knot.x()).clone();
    let z = rep.image(knot.z()).clone();
    let w = phi.word(&knot.w_word()).0;
    let y = phi.word(&knot.y_word()).0;
    let p = knot.spec.power();
    let even = knot.spec.is_even();
    let a = a_factor(even, p, &y, conv);
    let b = twist_sum(&w, p)?;
    let ab = a.clone() * b.clone();
    let (xi, zi, yi) = (x.inverse()?, z.inverse()?, y.inverse()?);
    let zxz = prod(&[&z, &x, &zi]);
    let zxzi = zxz.inverse()?;
    let e = Mat2::identity();
    let blocks = if even {
        let ci = prod(&[&xi, &zi, &x, &z]);
        let cz = prod(&[&zi, &xi, &z, &x]);
        let k = prod(&[&ci, &x, &y, &x, &zxz, &yi]);
        let l = prod(&[&y, &z, &x, &zxz, &yi]);
        let d = prod(&[&ab, &xi, &zi, &xi]);
        let dz = d.clone() * z.clone();
        let abx = ab.clone() * xi.clone();
        let abxc = prod(&[&abx, &cz, &z]);
        vec![
            -d.clone(),
            prod(&[&xi, &zi]) + prod(&[&ci, &x, &d]),
            dz.clone(),
            -xi.clone() - abx.clone() - prod(&[&ci, &x, &dz]) - prod(&[&k, &d]),
            ci.clone() + prod(&[&ci, &x, &abx]) + prod(&[&l, &d]),
            prod(&[&ci, &x, &y]) + prod(&[&dz, &x, &z]) + prod(&[&k, &dz]),
            -prod(&[&y, &z]) - prod(&[&l, &dz]) - prod(&[&ci, &x, &abxc]) - prod(&[&k, &abx]),
            prod(&[&l, &abx]),
            prod(&[&ci, &x, &y, &x, &z]) + prod(&[&k, &abxc]),
            -prod(&[&y, &z, &x, &z]) + prod(&[&l, &z, &xi]) - prod(&[&l, &dz, &x, &z]),
        ]
    } else {
        let xzx = prod(&[&x, &z, &xi]);
        let xzxi = xzx.inverse()?;
        let wi = w.inverse()?;
        let g = prod(&[&xzx, &wi, &y, &zxzi, &yi]);
        let h = prod(&[&x, &zxz]);
        let j = prod(&[&h, &y, &zxz, &yi]);
        let comm = prod(&[&zxz, &y, &zxzi, &yi]);
        let zx = prod(&[&z, &xi]);
        vec![
            prod(&[&g, &ab, &xzxi]),
            e + prod(&[&g, &ab, &wi, &zxzi]) + prod(&[&h, &ab, &xzxi])
                - prod(&[&xzx, &wi, &ab, &xzxi]),
            zx.clone() - prod(&[&zx, &comm]) - prod(&[&g, &ab]) + prod(&[&h, &ab, &wi, &zxzi])
                - prod(&[&xzx, &wi, &ab, &wi, &zxzi])
                - prod(&[&j, &ab, &xzxi]),
            -prod(&[&g, &ab, &wi, &zx]) - prod(&[&h, &ab]) + prod(&[&xzx, &wi, &ab])
                - prod(&[&j, &ab, &wi, &zxzi]),
            prod(&[&x, &z]) - prod(&[&zx, &z]) + prod(&[&xzx, &wi, &y, &zx])
                - prod(&[&h, &ab, &wi, &zx])
                + prod(&[&xzx, &wi, &ab, &wi, &zx])
                + prod(&[&j, &ab]),
            prod(&[&h, &y, &z]) - prod(&[&j, &zx]) + prod(&[&j, &ab, &wi, &zx]),
        ]
    };
    Ok(Case3Blocks {
        even,
        blocks,
        low: if even { -4 } else { -1 },
        x,
        z,
        y,
        w,
        a,
        b,
    })
}

/// `|sum_i t^(low+i) B_i| = sum_e t^e c_e` with
/// `c_e = sum_{i+j=e, i<j} tr(B_i B_j^*) + |B_{e/2}|`, returned as
/// `(2 low, [c_{2 low}, ..., c_{2 high}])`.
pub fn cofactor_coefficients<F: Field>(blocks: &[Mat2<F>], low: i64) -> (i64, Vec<F>) {
    let n = blocks.len();
    let mut c = vec![F::zero(); 2 * n - 1];
    for i in 0..n {
        c[2 * i] = c[2 * i].clone() + blocks[i].det();
        for j in i + 1..n {
            c[i + j] = c[i + j].clone() + (blocks[i].clone() * blocks[j].adjugate()).trace();
        }
    }
    (2 * low, c)
}

/// Coefficients `kappa_0..kappa_7` (even) or `lambda_0..lambda_3` (odd) read
/// off both ends of the cofactor expansion.
#[derive(Clone, Debug)]
pub struct Case3Coeffs<F: Field> {
    pub from_low: Vec<F>,
    pub from_high: Vec<F>,
    /// Largest disagreement between the two readings.
    pub mismatch: f64,
}

/// Peels `1 - tr(Z) t^2 + t^4` off the expansion from both ends.
pub fn case3_coefficients<F: Field>(blocks: &Case3Blocks<F>) -> Case3Coeffs<F> {
    let (_, k) = cofactor_coefficients(&blocks.blocks, blocks.low);
    let tr = blocks.z.trace();
    let count = if blocks.even { 8 } else { 4 };
    let read = |at: &dyn Fn(usize) -> F| {
        let mut out: Vec<F> = Vec::with_capacity(count);
        for j in 0..count {
            let mut v = at(j);
            if j >= 2 {
                v = v + tr.clone() * out[j - 2].clone();
            }
            if j >= 4 {
                v = v - out[j - 4].clone();
            }
            out.push(v);
        }
        out
    };
    let last = k.len() - 1;
    let from_low = read(&|j| k[j].clone());
    let from_high = read(&|j| k[last - j].clone());
    let scale = from_low.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let mismatch = from_low
        .iter()
        .zip(&from_high)
        .map(|(a, b)| (a.clone() - b.clone()).norm())
        .fold(0.0, f64::max)
        / scale;
    Case3Coeffs {
        from_low,
        from_high,
        mismatch,
    }
}

/// `sum_i kappa_i (t^i + t^(14-i)) + kappa_7 t^7` or
/// `sum_i lambda_i (t^i + t^(6-i)) + lambda_3 t^3`.
pub fn symmetric_polynomial<F: Field>(coeffs: &[F]) -> LaurentPoly<F> {
    let mid = coeffs.len() - 1;
    let top = 2 * mid;
    let mut c = vec![F::zero(); top + 1];
    for (i, v) in coeffs.iter().enumerate() {
        c[i] = v.clone();
        c[top - i] = v.clone();
    }
    LaurentPoly::new(0, c)
}

/// The cofactor-trace evaluation of the invariant with the `z` column removed.
///
/// Nonabelian representations must divide exactly and both readings of every
/// coefficient must agree; the symmetric polynomial is returned. Abelian
/// representations whose division leaves a remainder return the fraction.
pub fn case3_polynomial<F: Field>(
    knot: &Case3Knot,
    rep: &Representation<F>,
    tol: f64,
) -> Result<TapResult<F>> {
    let blocks = case3_blocks(knot, rep, AConvention::PositiveIdentity)?;
    let (low, k) = cofactor_coefficients(&blocks.blocks, blocks.low);
    let numerator = LaurentPoly::new(low, k).prune(tol);
    if numerator.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let den = LaurentPoly::new(
        0,
        vec![F::one(), F::zero(), -blocks.z.trace(), F::zero(), F::one()],
    );
    let (q, rel) = match divide_or_fraction(&numerator, &den, rep, "z", Method::CofactorTrace, tol)?
    {
        Division::Exact(q, rel) => (q, rel),
        Division::Fraction(out) => return Ok(out),
    };
    let coeffs = case3_coefficients(&blocks);
    let agree = if F::EXACT {
        coeffs.mismatch == 0.0
    } else {
        coeffs.mismatch <= tol.max(1e-9) * 100.0
    };
    if !agree {
        return Err(Error::InexactDivision {
            remainder_norm: coeffs.mismatch,
        });
    }
    let sym = symmetric_polynomial(&coeffs.from_low);
    if !sym.approx_eq(&q.shift(-low), tol.max(1e-9) * 100.0) {
        return Err(Error::Inconsistent(
            "symmetric form differs from the quotient".into(),
        ));
    }
    TapResult::from_quotient(&sym, "z".into(), Method::CofactorTrace, rel, tol)
}

/// `|sum_{i=1}^{|p|} W^i|`, the extreme coefficient `kappa_0` or `lambda_0`.
pub fn case3_leading<F: Field>(knot: &Case3Knot, rep: &Representation<F>) -> Result<F> {
    let phi = rep.phi(&knot.presentation)?;
    Ok(twist_sum(&phi.word(&knot.w_word()).0, knot.spec.power())?.det())
}

/// The long trace formulas for `kappa_0..kappa_7` (even) or
/// `lambda_0..lambda_3` (odd), evaluated literally with the resolved `A`.
pub fn trace_formula_coefficients<F: Field>(
    knot: &Case3Knot,
    rep: &Representation<F>,
) -> Result<Vec<F>> {
    let bl = case3_blocks(knot, rep, AConvention::PositiveIdentity)?;
    let (x, z, w, a) = (&bl.x, &bl.z, &bl.w, &bl.a);
    let p = knot.spec.power();
    let (xi, zi) = (x.inverse()?, z.inverse()?);
    let wp = |e: i64| w.pow(e);
    let tr = |ms: &[&Mat2<F>]| prod(ms).trace();
    let f = F::from_i64;
    let db = bl.b.det();
    let sum = |g: &dyn Fn(i64) -> Result<F>| -> Result<F> {
        (1..=p.abs()).try_fold(F::zero(), |acc, i| Ok(acc + g(i)?))
    };
    let zxz = prod(&[z, x, &zi]);
    let (trx, trxz) = (x.trace(), tr(&[x, z]));
    if bl.even {
        let (wm, wpp) = (wp(-p)?, wp(p)?);
        let xzxz = prod(&[x, z, x, &zi]);
        let x2z = tr(&[x, x, z]);
        let czx = prod(&[&zi, &xi, z, x]);
        let xzi2 = prod(&[&xi, &zi, &xi, &zi]);
        let xzx = prod(&[&xi, &zi, &xi]);
        let tw = tr(&[w, &xzxz, &wm, &zxz, &wpp]);
        let k0 = db.clone();
        let k1 = -sum(&|i| Ok(tr(&[a, &wp(i)?, &xi, &czx])))? - db.clone() * trx.clone();
        let k2 = f(1) + sum(&|i| Ok(tr(&[a, &wp(i)?])))? + db.clone();
        let k3 = db.clone() * (trxz.clone() + tw.clone());
        let k4 = -sum(&|i| {
            Ok(trxz.clone() * tr(&[a, &wp(i - 1)?, z, &xi, &zi]) + tr(&[a, &wp(i)?, &xzxz]))
        })? - db.clone() * (z.trace() + f(2) * x2z.clone() + xzxz.trace());
        let k5 = trxz.clone()
            + sum(&|i| {
                Ok(
                    trxz.clone() * tr(&[a, &wp(i)?]) - trx.clone() * tr(&[a, &wp(i - p)?, &xzx])
                        + f(2) * tr(&[a, &wp(i + 1)?, &xzx, &wm, &zxz]),
                )
            })?
            + db.clone() * (trxz.clone() + tr(&[w, w, &xzx, &wm, &zxz, &wpp]));
        let k6 = tr(&[&wpp, x, z, x])
            + sum(&|i| {
                Ok(tr(&[a, &wp(i - p)?, &xzi2]) - tr(&[a, &wp(i)?, &xzi2])
                    + tr(&[a, &wp(i - p)?, &xzx]))
            })?
            + db.clone() * (f(2) + trxz.clone() * tw.clone());
        let k7 = -sum(&|i| {
            Ok(
                trxz.clone() * (tr(&[a, &wp(i - 1)?, z]) + tr(&[a, &wp(i)?, &xzxz]))
                    + tr(&[a, &wp(i - 1)?, z, x, x, z, x])
                    - tr(&[a, &wp(i)?, &xi, z, z]),
            )
        })? - db * (trx + trxz * (x2z + xzxz.trace()) + tr(&[w, &zi, &wm, &zxz, &wpp]));
        Ok(vec![k0, k1, k2, k3, k4, k5, k6, k7])
    } else {
        let (wq, wmq) = (wp(p)?, wp(-p)?);
        let xzx = prod(&[x, z, &xi]);
        let (xzxi, zxzi) = (xzx.inverse()?, zxz.inverse()?);
        let x2zi = prod(&[x, x, &zi]);
        let tt = tr(&[w, &x2zi, &wq, &zxz, &wmq]);
        let d = tr(&[x, &zi]) - trx.clone();
        let l0 = db.clone();
        let l1 = sum(&|i| Ok(tr(&[a, &wp(i - 1)?, z, &xi, &zi])))?
            + db.clone() * (d.clone() + tt.clone());
        let l2 =
            f(1) + sum(&|i| {
                Ok(tr(&[a, &wp(i)?, &x2zi]) - tr(&[a, &wp(i - 1)?])
                    + tr(&[a, &wp(i - 1)?, z, &xi, &xi]))
            })? + db.clone()
                * (f(3) - trx.clone() * tt.clone() + tr(&[x, &zi]) * (tt.clone() - trx.clone()));
        let l3 = d.clone()
            + sum(&|i| {
                Ok(tr(&[a, &wp(i - 1)?, &zxzi, w, &xzxi])
                    - tr(&[a, &wp(i - p)?, &xzx, &wp(p - 1)?, &zxzi])
                    - tr(&[a, &wp(i)?, &xzxi, &zxz])
                    + tr(&[a, &wp(i - p)?, &xzxi, &wq, &zxz])
                    + d.clone() * tr(&[a, &wp(i)?, &x2zi]))
            })?
            + db * (f(2) * (d + tt.clone()) - tr(&[x, &zi]) * trx * tt);
        Ok(vec![l0, l1, l2, l3])
    }
}

/// Indices `i` at which the trace formula for `kappa_i` or `lambda_i`
/// disagrees with the cofactor expansion by more than `tol` (relative).
pub fn trace_formula_mismatches<F: Field>(
    knot: &Case3Knot,
    rep: &Representation<F>,
    tol: f64,
) -> Result<Vec<usize>> {
    let blocks = case3_blocks(knot, rep, AConvention::PositiveIdentity)?;
    let expected = case3_coefficients(&blocks).from_low;
    let formula = trace_formula_coefficients(knot, rep)?;
    let scale = expected.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let differs = |a: &F, b: &F| {
        if F::EXACT {
            a != b
        } else {
            (a.clone() - b.clone()).norm() > tol * scale
        }
    };
    Ok((0..expected.len())
        .filter(|&i| differs(&expected[i], &formula[i]))
        .collect())
}
