//! Representations into SL2: validation, parabolic Riley representations of
//! two-bridge knots, and numeric search.

mod propagate;
mod riley;
mod roots;
mod search;

pub use propagate::Propagation;
pub use riley::{riley_parabolic_reps, riley_polynomial, riley_rep_newton, RileyReps};
pub use roots::polynomial_roots;
pub use search::{newton_search_rep, search_nonabelian, SearchOptions, SearchSeed};

use crate::error::{Error, Result};
use crate::group::{Gen, Presentation};
use crate::laurent::{Images, Mat2};
use crate::scalar::{ComplexFloat, Field};
use std::collections::BTreeMap;

/// Relative commutator deviation above which a float representation counts
/// as nonabelian.
pub const NONABELIAN_THRESHOLD: f64 = 1e-6;

#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub struct ValidationReport {
    pub max_relator_deviation: f64,
    pub max_det_deviation: f64,
    pub max_commutator: f64,
    pub nonabelian: bool,
}

/// Images of the generators of a presentation in SL2(F), checked against
/// every relator.
#[derive(Clone, Debug)]
pub struct Representation<F: Field> {
    names: Vec<String>,
    images: Vec<Mat2<F>>,
    report: ValidationReport,
}

impl<F: Field> Representation<F> {
    pub fn images(&self) -> &[Mat2<F>] {
        &self.images
    }

    pub fn image(&self, g: Gen) -> &Mat2<F> {
        &self.images[g.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn report(&self) -> &ValidationReport {
        &self.report
    }

    pub fn is_nonabelian(&self) -> bool {
        self.report.nonabelian
    }

    /// The map `w -> t^deg(w) rho(w)` for this representation.
    pub fn phi(&self, p: &Presentation) -> Result<Images<F, Mat2<F>>> {
        Images::new(self.images.clone(), p.degrees().to_vec())
    }

    /// Images keyed by generator name.
    pub fn by_name(&self) -> BTreeMap<String, Mat2<F>> {
        self.names
            .iter()
            .cloned()
            .zip(self.images.iter().cloned())
            .collect()
    }

    /// Representation with every generator sent to the identity.
    pub fn trivial(p: &Presentation) -> Self {
        let images = vec![Mat2::identity(); p.num_generators()];
        validate_rep(p, images, 0.0).expect("the trivial representation is valid")
    }

    /// `P rho P^-1`, revalidated.
    pub fn conjugate(&self, p: &Presentation, by: &Mat2<F>, tol: f64) -> Result<Self> {
        let inv = by.inverse()?;
        let images = self
            .images
            .iter()
            .map(|m| by.clone() * m.clone() * inv.clone())
            .collect();
        validate_rep(p, images, tol)
    }

    /// Numeric copy under the embedding chosen by the scalars.
    pub fn to_float(&self, p: &Presentation, tol: f64) -> Result<Representation<ComplexFloat>> {
        let images = self
            .images
            .iter()
            .map(|m| m.map(|x| ComplexFloat(x.to_complex())))
            .collect();
        validate_rep(p, images, tol)
    }
}

/// Checks that every image has determinant one and every relator maps to
/// the identity. Exact fields require exact equality; `tol` applies to floats.
pub fn validate_rep<F: Field>(
    p: &Presentation,
    images: Vec<Mat2<F>>,
    tol: f64,
) -> Result<Representation<F>> {
    if images.len() != p.num_generators() {
        let missing = p
            .generators()
            .get(images.len())
            .cloned()
            .unwrap_or_default();
        return Err(Error::MissingImage(missing));
    }
    let ok = |x: &F| {
        if F::EXACT {
            x.is_zero()
        } else {
            x.norm() <= tol
        }
    };
    let mut report = ValidationReport::default();
    for (g, m) in images.iter().enumerate() {
        let d = m.det() - F::one();
        report.max_det_deviation = report.max_det_deviation.max(d.norm());
        if !ok(&d) {
            return Err(Error::NotSl2 {
                generator: p.generators()[g].clone(),
                deviation: d.norm(),
            });
        }
    }
    let phi = Images::<F, Mat2<F>>::new(images.clone(), p.degrees().to_vec())?;
    for (i, r) in p.relators().iter().enumerate() {
        let (m, _) = phi.word(r);
        let dev = m - Mat2::identity();
        let worst = dev.max_norm();
        report.max_relator_deviation = report.max_relator_deviation.max(worst);
        if !dev.e.iter().all(ok) {
            return Err(Error::RelatorViolation {
                index: i,
                deviation: worst,
            });
        }
    }
    let mut nonabelian = false;
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            let (x, y) = (&images[i], &images[j]);
            let c = x.clone() * y.clone() - y.clone() * x.clone();
            let scale = (x.max_norm() * y.max_norm()).max(1.0);
            let dev = c.max_norm() / scale;
            report.max_commutator = report.max_commutator.max(dev);
            if F::EXACT && !crate::scalar::Ring::is_zero(&c) {
                nonabelian = true;
            }
        }
    }
    if !F::EXACT {
        nonabelian = report.max_commutator > NONABELIAN_THRESHOLD;
    }
    report.nonabelian = nonabelian;
    Ok(Representation {
        names: p.generators().to_vec(),
        images,
        report,
    })
}

/// Validates images given by generator name.
pub fn validate_named<F: Field>(
    p: &Presentation,
    named: &BTreeMap<String, Mat2<F>>,
    tol: f64,
) -> Result<Representation<F>> {
    for name in named.keys() {
        p.gen_by_name(name)?;
    }
    let images = p
        .generators()
        .iter()
        .map(|g| {
            named
                .get(g)
                .cloned()
                .ok_or_else(|| Error::MissingImage(g.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    validate_rep(p, images, tol)
}
