//! Family-specific evaluators of the twisted Alexander polynomial: block
//! recursions for two-bridge and case (2) knots and the cofactor-trace
//! expansion for the case (3) family.

mod case2;
mod case3;
mod two_bridge;

pub use case2::{
    alex_closed_form, case2_block, coeffs_case2, lambda_factor, lambda_ranges, r_m4_block,
    recursion_case2, s0_block, Case2Branch, Case2Coeffs, Case2Recursion, Case2Row, SumRange,
};

pub use case3::{
    case3_blocks, case3_coefficients, case3_leading, case3_polynomial, cofactor_coefficients,
    symmetric_polynomial, trace_formula_coefficients, trace_formula_mismatches, AConvention,
    Case3Blocks, Case3Coeffs,
};

pub use two_bridge::{
    leading_coeff_two_bridge, recursion_two_bridge, twist_determinants, two_bridge_block,
    DegreeWindow, RecursionBlock, TwoBridgeRecursion,
};

use crate::engine::{Method, TapResult};
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Mat2};
use crate::repn::Representation;
use crate::scalar::{Field, Ring};

pub type MatPoly<F> = LaurentPoly<Mat2<F>>;

/// `sum_{j=lo}^{hi} w^j`; zero when `hi < lo`.
pub fn geometric_sum<F: Field>(w: &Mat2<F>, lo: i64, hi: i64) -> Result<Mat2<F>> {
    let mut acc = Mat2::zero();
    if hi < lo {
        return Ok(acc);
    }
    let mut p = w.pow(lo)?;
    for _ in lo..=hi {
        acc = acc + p.clone();
        p = p * w.clone();
    }
    Ok(acc)
}

/// `sum_{j=1}^{|m|} w^j`, the factor in the extreme coefficient formulas.
pub fn twist_sum<F: Field>(w: &Mat2<F>, m: i64) -> Result<Mat2<F>> {
    geometric_sum(w, 1, m.abs())
}

pub(crate) fn poly<F: Field>(terms: Vec<(i64, Mat2<F>)>) -> MatPoly<F> {
    LaurentPoly::from_terms(terms)
}

pub(crate) fn sign(m: i64) -> i64 {
    if m < 0 {
        -1
    } else {
        1
    }
}

/// Exponent support of a matrix polynomial, ignoring coefficients of norm at
/// most `tol` times the largest one (exact coefficients must vanish).
pub fn mat_support<F: Field>(p: &MatPoly<F>, tol: f64) -> Option<(i64, i64)> {
    let top = p.terms().map(|(_, c)| c.max_norm()).fold(0.0, f64::max);
    let live: Vec<i64> = p
        .terms()
        .filter(|(_, c)| {
            if F::EXACT {
                !c.is_zero()
            } else {
                c.max_norm() > tol * top
            }
        })
        .map(|(e, _)| e)
        .collect();
    Some((*live.iter().min()?, *live.iter().max()?))
}

pub(crate) enum Division<F: Field> {
    Exact(LaurentPoly<F>, f64),
    Fraction(TapResult<F>),
}

/// Divides `numerator` by `den`. An abelian representation with a remainder
/// yields the fraction; a nonabelian one fails.
pub(crate) fn divide_or_fraction<F: Field>(
    numerator: &LaurentPoly<F>,
    den: &LaurentPoly<F>,
    rep: &Representation<F>,
    column: &str,
    method: Method,
    tol: f64,
) -> Result<Division<F>> {
    let (q, _, rel) = numerator.divide(den)?;
    let exact = if F::EXACT { rel == 0.0 } else { rel <= 1e-6 };
    if exact {
        return Ok(Division::Exact(q, rel));
    }
    if rep.is_nonabelian() {
        return Err(Error::InexactDivision {
            remainder_norm: rel,
        });
    }
    let mut out = TapResult::from_quotient(numerator, column.into(), method, rel, tol)?;
    out.denominator = Some(den.normalized());
    Ok(Division::Fraction(out))
}
