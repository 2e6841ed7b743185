use crate::error::{Error, Result};
use crate::scalar::{Field, Ring};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// 2x2 matrix, entries row-major `[[a, b], [c, d]]`.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat2<R> {
    pub e: [R; 4],
}

impl<R: Ring> Mat2<R> {
    pub fn new(a: R, b: R, c: R, d: R) -> Self {
        Mat2 { e: [a, b, c, d] }
    }

    pub fn identity() -> Self {
        Self::new(R::one(), R::zero(), R::zero(), R::one())
    }

    pub fn scalar(s: R) -> Self {
        Self::new(s.clone(), R::zero(), R::zero(), s)
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.e[2 * i + j]
    }

    pub fn det(&self) -> R {
        let [a, b, c, d] = self.e.clone();
        a * d - b * c
    }

    pub fn trace(&self) -> R {
        self.e[0].clone() + self.e[3].clone()
    }

    /// Classical adjugate; equals the inverse when the determinant is one.
    pub fn adjugate(&self) -> Self {
        let [a, b, c, d] = self.e.clone();
        Self::new(d, -b, -c, a)
    }

    pub fn scale(&self, s: &R) -> Self {
        Mat2 {
            e: self.e.clone().map(|x| s.clone() * x),
        }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Mat2<S> {
        Mat2 {
            e: [f(&self.e[0]), f(&self.e[1]), f(&self.e[2]), f(&self.e[3])],
        }
    }

    /// Positive power by repeated squaring.
    pub fn pow_nonneg(&self, n: u64) -> Self {
        let mut acc = Self::identity();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            n >>= 1;
        }
        acc
    }
}

impl<F: Field> Mat2<F> {
    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.adjugate().scale(&d.inv()?))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, n: i64) -> Result<Self> {
        if n >= 0 {
            Ok(self.pow_nonneg(n as u64))
        } else {
            Ok(self.inverse()?.pow_nonneg(n.unsigned_abs()))
        }
    }

    /// Largest entry norm.
    pub fn max_norm(&self) -> f64 {
        self.e.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(
            F::from_i64(a),
            F::from_i64(b),
            F::from_i64(c),
            F::from_i64(d),
        )
    }
}

impl<R: Ring> Add for Mat2<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let [a, b, c, d] = self.e;
        let [p, q, r, s] = o.e;
        Self::new(a + p, b + q, c + r, d + s)
    }
}

impl<R: Ring> Sub for Mat2<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let [a, b, c, d] = self.e;
        let [p, q, r, s] = o.e;
        Self::new(a - p, b - q, c - r, d - s)
    }
}

impl<R: Ring> Mul for Mat2<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let [a, b, c, d] = self.e;
        let [p, q, r, s] = o.e;
        Self::new(
            a.clone() * p.clone() + b.clone() * r.clone(),
            a * q.clone() + b * s.clone(),
            c.clone() * p + d.clone() * r,
            c * q + d * s,
        )
    }
}

impl<R: Ring> Neg for Mat2<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Mat2 {
            e: self.e.map(|x| -x),
        }
    }
}

impl<R: Ring> Ring for Mat2<R> {
    fn zero() -> Self {
        Self::new(R::zero(), R::zero(), R::zero(), R::zero())
    }
    fn one() -> Self {
        Self::identity()
    }
    fn is_zero(&self) -> bool {
        self.e.iter().all(|x| x.is_zero())
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Mat2<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.e[0], self.e[1], self.e[2], self.e[3]
        )
    }
}

/// Square blocks that Laurent matrices can be built from: scalars (1x1) or 2x2 matrices.
pub trait Block<F: Field>: Ring {
    const DIM: usize;
    fn entry(&self, i: usize, j: usize) -> F;
    fn from_scalar(s: F) -> Self;
    fn inverse(&self) -> Result<Self>;
    fn block_det(&self) -> F;
}

impl<F: Field> Block<F> for F {
    const DIM: usize = 1;
    fn entry(&self, _: usize, _: usize) -> F {
        self.clone()
    }
    fn from_scalar(s: F) -> Self {
        s
    }
    fn inverse(&self) -> Result<Self> {
        self.inv()
    }
    fn block_det(&self) -> F {
        self.clone()
    }
}

impl<F: Field> Block<F> for Mat2<F> {
    const DIM: usize = 2;
    fn entry(&self, i: usize, j: usize) -> F {
        self.get(i, j).clone()
    }
    fn from_scalar(s: F) -> Self {
        Mat2::scalar(s)
    }
    fn inverse(&self) -> Result<Self> {
        Mat2::inverse(self)
    }
    fn block_det(&self) -> F {
        self.det()
    }
}
