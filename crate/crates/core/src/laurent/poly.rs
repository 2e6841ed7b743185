use super::Block;
use crate::error::{Error, Result};
use crate::scalar::{Field, Ring};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Laurent polynomial `sum c_e t^e` with coefficients in a (possibly
/// noncommutative) ring. Leading and trailing zero coefficients are trimmed.
#[derive(Clone, PartialEq, Debug)]
pub struct LaurentPoly<C> {
    low: i64,
    coeffs: Vec<C>,
}

impl<C: Ring> LaurentPoly<C> {
    pub fn new(low: i64, mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        LaurentPoly {
            low: low + lead as i64,
            coeffs,
        }
    }

    pub fn zero() -> Self {
        LaurentPoly {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: C, e: i64) -> Self {
        Self::new(e, vec![c])
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let terms: Vec<(i64, C)> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![C::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            let i = (e - lo) as usize;
            coeffs[i] = coeffs[i].clone() + c;
        }
        Self::new(lo, coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Span `max_exp - min_exp`; `None` for zero.
    pub fn span(&self) -> Option<i64> {
        Some(self.max_exp()? - self.low)
    }

    pub fn coeff(&self, e: i64) -> C {
        let i = e - self.low;
        if i < 0 {
            return C::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn trailing(&self) -> Option<&C> {
        self.coeffs.first()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        let low = self.low;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (low + i as i64, c))
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Multiplies by `t^s`.
    pub fn shift(&self, s: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low + s,
            coeffs: self.coeffs.clone(),
        }
    }

    /// `c * self`.
    pub fn lmul(&self, c: &C) -> Self {
        Self::new(
            self.low,
            self.coeffs.iter().map(|x| c.clone() * x.clone()).collect(),
        )
    }

    /// `self * c`.
    pub fn rmul(&self, c: &C) -> Self {
        Self::new(
            self.low,
            self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        )
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        LaurentPoly::new(self.low, self.coeffs.iter().map(f).collect())
    }

    pub fn coeff_slice(&self) -> &[C] {
        &self.coeffs
    }
}

impl<C: Ring> Add for LaurentPoly<C> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let lo = self.low.min(o.low);
        let hi = self.max_exp().unwrap().max(o.max_exp().unwrap());
        Self::new(lo, (lo..=hi).map(|e| self.coeff(e) + o.coeff(e)).collect())
    }
}

impl<C: Ring> Sub for LaurentPoly<C> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<C: Ring> Neg for LaurentPoly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<C: Ring> Mul for LaurentPoly<C> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Self::new(self.low + o.low, out)
    }
}

impl<C: Ring> Ring for LaurentPoly<C> {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::constant(C::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<F: Field> LaurentPoly<F> {
    pub fn from_i64s(low: i64, cs: &[i64]) -> Self {
        Self::new(low, cs.iter().map(|&c| F::from_i64(c)).collect())
    }

    pub fn eval(&self, x: &F) -> Result<F> {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        if self.low >= 0 {
            Ok(acc * pow(x, self.low as u64))
        } else {
            Ok(acc * pow(&x.inv()?, self.low.unsigned_abs()))
        }
    }

    /// Largest coefficient norm.
    pub fn max_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Drops coefficients whose norm is at most `rel_tol` times the largest one.
    /// Exact coefficients are left alone.
    pub fn prune(&self, rel_tol: f64) -> Self {
        if F::EXACT || self.is_zero() {
            return self.clone();
        }
        let cut = rel_tol * self.max_norm();
        Self::new(
            self.low,
            self.coeffs
                .iter()
                .map(|c| {
                    if c.norm() <= cut {
                        F::zero()
                    } else {
                        c.clone()
                    }
                })
                .collect(),
        )
    }

    /// Representative of the class `{±t^s p}` with lowest exponent 0 and the
    /// constant coefficient in canonical sign position. Returns it together
    /// with the applied shift and sign.
    pub fn normalize_unit(&self) -> (Self, i64, i32) {
        if self.is_zero() {
            return (Self::zero(), 0, 1);
        }
        let sign = match self.coeffs[0].canonical_sign() {
            -1 => -1,
            _ => 1,
        };
        let shifted = LaurentPoly {
            low: 0,
            coeffs: self.coeffs.clone(),
        };
        let out = if sign < 0 { -shifted } else { shifted };
        (out, -self.low, sign)
    }

    pub fn normalized(&self) -> Self {
        self.normalize_unit().0
    }

    /// Coefficientwise comparison with relative tolerance.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if F::EXACT {
            return self == other;
        }
        let scale = self.max_norm().max(other.max_norm()).max(1.0);
        let lo = self.low.min(other.low);
        let hi = self
            .max_exp()
            .unwrap_or(lo)
            .max(other.max_exp().unwrap_or(lo));
        (lo..=hi).all(|e| (self.coeff(e) - other.coeff(e)).norm() <= tol * scale)
    }

    /// Equality up to multiplication by `±t^s`.
    pub fn unit_equivalent(&self, other: &Self, tol: f64) -> bool {
        let a = self.prune(tol);
        let b = other.prune(tol);
        if a.is_zero() || b.is_zero() {
            return a.is_zero() && b.is_zero();
        }
        let a = a.shift(-a.low);
        let b = b.shift(-b.low);
        a.approx_eq(&b, tol) || a.approx_eq(&(-b), tol)
    }

    /// Euclidean division from the top: `self = q * d + r` with `r` supported
    /// strictly below `d`'s span above `self`'s lowest exponent.
    /// Returns `(q, r, |r| / |self|)`.
    pub fn divide(&self, d: &Self) -> Result<(Self, Self, f64)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok((Self::zero(), Self::zero(), 0.0));
        }
        let dl = d.coeffs.len();
        let lead_inv = d.leading().unwrap().inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() < dl {
            return Ok((Self::zero(), self.clone(), 1.0));
        }
        let qn = rem.len() - dl + 1;
        let mut q = vec![F::zero(); qn];
        for i in (0..qn).rev() {
            let c = rem[i + dl - 1].clone() * lead_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - c.clone() * dc.clone();
            }
            rem[i + dl - 1] = F::zero();
            q[i] = c;
        }
        let r = Self::new(self.low, rem);
        let rel = if r.is_zero() {
            0.0
        } else {
            r.max_norm() / self.max_norm()
        };
        Ok((Self::new(self.low - d.low, q), r, rel))
    }

    /// Exact quotient. For inexact fields the remainder must be below `tol`
    /// relative to `self`.
    pub fn divide_exact(&self, d: &Self, tol: f64) -> Result<Self> {
        let (q, r, rel) = self.divide(d)?;
        if (F::EXACT && !r.is_zero()) || (!F::EXACT && rel > tol) {
            return Err(Error::InexactDivision {
                remainder_norm: rel,
            });
        }
        Ok(q)
    }
}

fn pow<F: Field>(x: &F, n: u64) -> F {
    let mut acc = F::one();
    for _ in 0..n {
        acc = acc * x.clone();
    }
    acc
}

impl<B: Ring> LaurentPoly<B> {
    /// The scalar Laurent polynomial in entry `(i, j)` of a block polynomial.
    pub fn entry<F: Field>(&self, i: usize, j: usize) -> LaurentPoly<F>
    where
        B: Block<F>,
    {
        LaurentPoly::new(
            self.low,
            self.coeffs.iter().map(|b| b.entry(i, j)).collect(),
        )
    }
}

impl<C: Ring + fmt::Display> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{e}")?,
            }
        }
        Ok(())
    }
}
