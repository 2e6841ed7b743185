//! Coefficient fields: exact Gaussian rationals, exact algebraic extensions
//! of them, and double precision complex numbers.

mod algebraic;
mod complex;
mod gaussian;
mod upoly;

pub use algebraic::{AlgebraicExt, Modulus};
pub use complex::ComplexFloat;
pub use gaussian::GaussianRational;
pub use upoly::UPoly;

use crate::error::Result;
use num_complex::Complex64;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Default tolerance for floating point comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

/// An associative ring with unit; multiplication need not commute.
pub trait Ring:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    /// Exact zero test. Floats are only zero when every component is `0.0`.
    fn is_zero(&self) -> bool;
}

/// A commutative field used for matrix entries and polynomial coefficients.
pub trait Field: Ring + fmt::Display {
    /// Whether arithmetic is exact. Inexact fields need explicit tolerances.
    const EXACT: bool;
    /// Name used in reports and JSON.
    const NAME: &'static str;

    fn from_i64(n: i64) -> Self;
    fn inv(&self) -> Result<Self>;
    /// Magnitude estimate used for pivoting, pruning and reporting.
    fn norm(&self) -> f64;
    /// Complex value under the chosen embedding.
    fn to_complex(&self) -> Complex64;
    /// +1 or -1 so that `sign * self` is in canonical position, 0 for zero.
    fn canonical_sign(&self) -> i32;

    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * other.inv()?)
    }

    /// Equality up to `tol` (absolute on the difference). Exact fields ignore `tol`.
    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let d = self.clone() - other.clone();
        if Self::EXACT {
            d.is_zero()
        } else {
            d.norm() <= tol
        }
    }

    /// Nodes at which polynomials are sampled for interpolation.
    fn interpolation_nodes(count: usize) -> Vec<Self> {
        (0..count)
            .map(|i| {
                let k = i.div_ceil(2) as i64;
                Self::from_i64(if i % 2 == 1 { k } else { -k })
            })
            .collect()
    }

    /// Coefficients (lowest first) of the polynomial of degree `< values.len()`
    /// taking `values[i]` at `interpolation_nodes(values.len())[i]`.
    fn interpolate(values: &[Self]) -> Result<Vec<Self>> {
        let nodes = Self::interpolation_nodes(values.len());
        newton_interpolate(&nodes, values)
    }
}

pub(crate) fn newton_interpolate<F: Field>(nodes: &[F], values: &[F]) -> Result<Vec<F>> {
    let n = values.len();
    let mut dd = values.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = dd[i].clone() - dd[i - 1].clone();
            let den = nodes[i].clone() - nodes[i - j].clone();
            dd[i] = num.div(&den)?;
        }
    }
    let mut coeffs = vec![F::zero(); n];
    for j in (0..n).rev() {
        // coeffs <- coeffs * (t - nodes[j]) + dd[j]
        let mut next = vec![F::zero(); n];
        for i in 0..n {
            if coeffs[i].is_zero() {
                continue;
            }
            if i + 1 < n {
                next[i + 1] = next[i + 1].clone() + coeffs[i].clone();
            }
            next[i] = next[i].clone() - coeffs[i].clone() * nodes[j].clone();
        }
        next[0] = next[0].clone() + dd[j].clone();
        coeffs = next;
    }
    Ok(coeffs)
}

pub(crate) fn sign_of_parts(re: std::cmp::Ordering, im: std::cmp::Ordering) -> i32 {
    use std::cmp::Ordering::*;
    match (re, im) {
        (Greater, _) => 1,
        (Less, _) => -1,
        (Equal, Greater) => 1,
        (Equal, Less) => -1,
        (Equal, Equal) => 0,
    }
}
