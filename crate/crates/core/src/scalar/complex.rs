use super::{sign_of_parts, Field, Ring};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Double precision complex scalar. Comparisons take an explicit tolerance.
#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub struct ComplexFloat(pub Complex64);

impl ComplexFloat {
    pub fn new(re: f64, im: f64) -> Self {
        ComplexFloat(Complex64::new(re, im))
    }
}

impl From<Complex64> for ComplexFloat {
    fn from(c: Complex64) -> Self {
        ComplexFloat(c)
    }
}

impl Add for ComplexFloat {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        ComplexFloat(self.0 + o.0)
    }
}

impl Sub for ComplexFloat {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        ComplexFloat(self.0 - o.0)
    }
}

impl Mul for ComplexFloat {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        ComplexFloat(self.0 * o.0)
    }
}

impl Neg for ComplexFloat {
    type Output = Self;
    fn neg(self) -> Self {
        ComplexFloat(-self.0)
    }
}

impl Ring for ComplexFloat {
    fn zero() -> Self {
        ComplexFloat(Complex64::new(0.0, 0.0))
    }
    fn one() -> Self {
        ComplexFloat(Complex64::new(1.0, 0.0))
    }
    fn is_zero(&self) -> bool {
        self.0.re == 0.0 && self.0.im == 0.0
    }
}

impl Field for ComplexFloat {
    const EXACT: bool = false;
    const NAME: &'static str = "complex_float";

    fn from_i64(n: i64) -> Self {
        ComplexFloat(Complex64::new(n as f64, 0.0))
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ComplexFloat(self.0.inv()))
    }

    fn norm(&self) -> f64 {
        self.0.norm()
    }

    fn to_complex(&self) -> Complex64 {
        self.0
    }

    fn canonical_sign(&self) -> i32 {
        let n = self.0.norm();
        if n == 0.0 {
            return 0;
        }
        // a real part that is pure rounding noise should not decide the sign
        let re = if self.0.re.abs() <= 1e-12 * n {
            0.0
        } else {
            self.0.re
        };
        sign_of_parts(
            re.partial_cmp(&0.0).unwrap_or(std::cmp::Ordering::Equal),
            self.0
                .im
                .partial_cmp(&0.0)
                .unwrap_or(std::cmp::Ordering::Equal),
        )
    }

    fn interpolation_nodes(count: usize) -> Vec<Self> {
        (0..count)
            .map(|i| {
                ComplexFloat(Complex64::from_polar(
                    1.0,
                    2.0 * PI * i as f64 / count as f64,
                ))
            })
            .collect()
    }

    fn interpolate(values: &[Self]) -> Result<Vec<Self>> {
        let n = values.len();
        let inv_n = 1.0 / n as f64;
        Ok((0..n)
            .map(|j| {
                let mut acc = Complex64::new(0.0, 0.0);
                for (i, v) in values.iter().enumerate() {
                    let k = (i * j) % n;
                    acc += v.0 * Complex64::from_polar(1.0, -2.0 * PI * k as f64 / n as f64);
                }
                ComplexFloat(acc * inv_n)
            })
            .collect())
    }
}

impl fmt::Display for ComplexFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.im == 0.0 {
            write!(f, "{}", self.0.re)
        } else {
            write!(f, "({}{:+}i)", self.0.re, self.0.im)
        }
    }
}
