use super::{Field, GaussianRational, Ring, UPoly};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// Defining polynomial of an extension Q(i)[w]/(p), with an optional numeric
/// root selecting the complex embedding.
#[derive(Clone, PartialEq, Debug)]
pub struct Modulus {
    poly: UPoly<GaussianRational>,
    root: Option<Complex64>,
}

impl Modulus {
    /// The polynomial is made monic. It must have positive degree.
    pub fn new(poly: UPoly<GaussianRational>, root: Option<Complex64>) -> Result<Arc<Self>> {
        if poly.degree().unwrap_or(0) == 0 {
            return Err(Error::Parse(
                "extension modulus must have positive degree".into(),
            ));
        }
        Ok(Arc::new(Modulus {
            poly: poly.monic()?,
            root,
        }))
    }

    pub fn poly(&self) -> &UPoly<GaussianRational> {
        &self.poly
    }

    pub fn root(&self) -> Option<Complex64> {
        self.root
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }
}

/// Element of Q(i)[w]/(p). Inversion fails lazily with
/// [`Error::NonInvertibleResidue`] when `p` is reducible and the residue
/// shares a factor with it.
///
/// Constants carry no modulus and adopt the modulus of whatever they are
/// combined with.
#[derive(Clone, Debug)]
pub struct AlgebraicExt {
    modulus: Option<Arc<Modulus>>,
    residue: UPoly<GaussianRational>,
}

impl AlgebraicExt {
    pub fn new(residue: UPoly<GaussianRational>, modulus: &Arc<Modulus>) -> Result<Self> {
        let (_, r) = residue.divrem(modulus.poly())?;
        Ok(AlgebraicExt {
            modulus: Some(modulus.clone()),
            residue: r,
        })
    }

    pub fn constant(c: GaussianRational) -> Self {
        AlgebraicExt {
            modulus: None,
            residue: UPoly::constant(c),
        }
    }

    /// The class of `w`.
    pub fn generator(modulus: &Arc<Modulus>) -> Self {
        Self::new(UPoly::x(), modulus).expect("reduction by a monic polynomial")
    }

    pub fn residue(&self) -> &UPoly<GaussianRational> {
        &self.residue
    }

    pub fn modulus(&self) -> Option<&Arc<Modulus>> {
        self.modulus.as_ref()
    }

    /// Attaches a modulus to a constant, or checks that it matches.
    pub fn with_modulus(&self, m: &Arc<Modulus>) -> Result<Self> {
        Self::new(self.residue.clone(), m)
    }

    fn join(a: &Option<Arc<Modulus>>, b: &Option<Arc<Modulus>>) -> Option<Arc<Modulus>> {
        match (a, b) {
            (Some(x), Some(y)) => {
                debug_assert!(
                    Arc::ptr_eq(x, y) || x.poly == y.poly,
                    "mixed extension moduli"
                );
                Some(x.clone())
            }
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        }
    }
}

impl PartialEq for AlgebraicExt {
    fn eq(&self, other: &Self) -> bool {
        self.residue == other.residue
    }
}

impl Add for AlgebraicExt {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        AlgebraicExt {
            modulus: Self::join(&self.modulus, &o.modulus),
            residue: self.residue + o.residue,
        }
    }
}

impl Sub for AlgebraicExt {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        AlgebraicExt {
            modulus: Self::join(&self.modulus, &o.modulus),
            residue: self.residue - o.residue,
        }
    }
}

impl Mul for AlgebraicExt {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let modulus = Self::join(&self.modulus, &o.modulus);
        let prod = self.residue * o.residue;
        let residue = match &modulus {
            Some(m) if prod.degree().unwrap_or(0) >= m.degree() => {
                prod.divrem(m.poly()).expect("monic modulus").1
            }
            _ => prod,
        };
        AlgebraicExt { modulus, residue }
    }
}

impl Neg for AlgebraicExt {
    type Output = Self;
    fn neg(self) -> Self {
        AlgebraicExt {
            modulus: self.modulus,
            residue: -self.residue,
        }
    }
}

impl Ring for AlgebraicExt {
    fn zero() -> Self {
        Self::constant(GaussianRational::zero())
    }
    fn one() -> Self {
        Self::constant(GaussianRational::one())
    }
    fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }
}

impl Field for AlgebraicExt {
    const EXACT: bool = true;
    const NAME: &'static str = "algebraic";

    fn from_i64(n: i64) -> Self {
        Self::constant(GaussianRational::from_i64(n))
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (&self.modulus, self.residue.degree()) {
            (_, Some(0)) | (None, _) => Ok(AlgebraicExt {
                modulus: self.modulus.clone(),
                residue: UPoly::constant(self.residue.coeff(0).inv()?),
            }),
            (Some(m), _) => {
                let (g, s, _) = self.residue.xgcd(m.poly())?;
                if g.degree() != Some(0) {
                    return Err(Error::NonInvertibleResidue);
                }
                Self::new(s, m)
            }
        }
    }

    fn norm(&self) -> f64 {
        let z = self.to_complex();
        if z.is_nan() {
            self.residue
                .coeffs()
                .iter()
                .map(|c| c.norm())
                .fold(0.0, f64::max)
        } else {
            z.norm()
        }
    }

    fn to_complex(&self) -> Complex64 {
        match self.residue.degree() {
            None => Complex64::new(0.0, 0.0),
            Some(0) => self.residue.coeff(0).to_complex(),
            Some(_) => match self.modulus.as_ref().and_then(|m| m.root) {
                Some(r) => {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for c in self.residue.coeffs().iter().rev() {
                        acc = acc * r + c.to_complex();
                    }
                    acc
                }
                None => Complex64::new(f64::NAN, f64::NAN),
            },
        }
    }

    fn canonical_sign(&self) -> i32 {
        self.residue
            .coeffs()
            .iter()
            .find(|c| !c.is_zero())
            .map_or(0, |c| c.canonical_sign())
    }
}

impl fmt::Display for AlgebraicExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.residue.degree() {
            None => write!(f, "0"),
            Some(0) => write!(f, "{}", self.residue.coeff(0)),
            _ => write!(f, "[{}]", self.residue),
        }
    }
}
