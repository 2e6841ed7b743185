//! Twisted Alexander polynomials from a presentation and a representation via
//! Fox calculus and block determinants.

use crate::error::{Error, Result};
use crate::group::{Gen, Presentation, Word};
use crate::laurent::{det2, det_block, Block, Images, LaurentPoly, Mat2};
use crate::repn::Representation;
use crate::scalar::{Field, GaussianRational, DEFAULT_TOL};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Engine,
    Recursion,
    CofactorTrace,
}

#[derive(Clone, Copy, Debug)]
pub struct TapOptions {
    /// Generator whose column is removed; `None` picks the meridian when
    /// admissible, otherwise the first admissible generator.
    pub column: Option<Gen>,
    /// Closeness tolerance for float coefficients.
    pub tol: f64,
    /// Largest accepted relative remainder of the final division (floats).
    pub division_tol: f64,
}

impl Default for TapOptions {
    fn default() -> Self {
        TapOptions {
            column: None,
            tol: DEFAULT_TOL,
            division_tol: 1e-6,
        }
    }
}

impl TapOptions {
    pub fn with_tol(tol: f64) -> Self {
        TapOptions {
            tol,
            ..Self::default()
        }
    }

    pub fn column(mut self, g: Gen) -> Self {
        self.column = Some(g);
        self
    }
}

/// A normalized twisted Alexander polynomial with metadata. Abelian
/// representations may leave a nontrivial denominator, kept separately.
#[derive(Clone, Debug)]
pub struct TapResult<F: Field> {
    pub polynomial: LaurentPoly<F>,
    pub denominator: Option<LaurentPoly<F>>,
    pub column: String,
    pub degree: i64,
    pub leading: F,
    pub trailing: F,
    pub method: Method,
    pub remainder_norm: f64,
}

impl<F: Field> TapResult<F> {
    /// Builds a result from an unnormalized quotient.
    pub fn from_quotient(
        q: &LaurentPoly<F>,
        column: String,
        method: Method,
        remainder_norm: f64,
        tol: f64,
    ) -> Result<Self> {
        let polynomial = q.prune(tol).normalized();
        if polynomial.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(TapResult {
            degree: polynomial.max_exp().unwrap_or(0),
            leading: polynomial.leading().cloned().unwrap_or_else(F::zero),
            trailing: polynomial.coeff(0),
            polynomial,
            denominator: None,
            column,
            method,
            remainder_norm,
        })
    }

    pub fn is_monic(&self, tol: f64) -> bool {
        let one = F::one();
        self.leading.approx_eq(&one, tol) || self.leading.approx_eq(&(-one), tol)
    }

    /// Equality of the underlying fractions up to `±t^s`.
    pub fn equivalent(&self, other: &Self, tol: f64) -> bool {
        match (&self.denominator, &other.denominator) {
            (None, None) => self.polynomial.unit_equivalent(&other.polynomial, tol),
            _ => {
                let one = LaurentPoly::constant(F::one());
                let d1 = self.denominator.as_ref().unwrap_or(&one);
                let d2 = other.denominator.as_ref().unwrap_or(&one);
                let lhs = self.polynomial.clone() * d2.clone();
                let rhs = other.polynomial.clone() * d1.clone();
                lhs.unit_equivalent(&rhs, tol)
            }
        }
    }
}

fn check_deficiency(p: &Presentation) -> Result<()> {
    if p.relators().len() + 1 != p.num_generators() {
        return Err(Error::DeficiencyMismatch {
            generators: p.num_generators(),
            relators: p.relators().len(),
        });
    }
    Ok(())
}

fn is_zero_poly<F: Field>(d: &LaurentPoly<F>, tol: f64) -> bool {
    if F::EXACT {
        d.is_zero()
    } else {
        d.max_norm() <= tol
    }
}

fn column_order(p: &Presentation, column: Option<Gen>) -> Vec<Gen> {
    match column {
        Some(g) => vec![g],
        None => {
            let m = p.meridian();
            std::iter::once(m)
                .chain((0..p.num_generators()).map(Gen).filter(|&g| g != m))
                .collect()
        }
    }
}

/// Numerator and denominator of the invariant for a removed column.
struct Pieces<F: Field> {
    numerator: LaurentPoly<F>,
    denominator: LaurentPoly<F>,
}

fn fox_matrix<F: Field, B: Block<F>>(
    p: &Presentation,
    phi: &Images<F, B>,
) -> Vec<Vec<LaurentPoly<B>>> {
    p.relators().iter().map(|r| phi.fox_row(r)).collect()
}

fn minor<F: Field, B: Block<F>>(rows: &[Vec<LaurentPoly<B>>], k: usize) -> Result<LaurentPoly<F>> {
    let m: Vec<Vec<LaurentPoly<B>>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect();
    det_block(&m)
}

fn pieces_twisted<F: Field>(
    phi: &Images<F, Mat2<F>>,
    rows: &[Vec<LaurentPoly<Mat2<F>>>],
    k: Gen,
    tol: f64,
) -> Result<Option<Pieces<F>>> {
    let x = phi.phi_word(&Word::gen(k)) - LaurentPoly::constant(Mat2::identity());
    let denominator = det2(&x);
    if is_zero_poly(&denominator, tol) {
        return Ok(None);
    }
    Ok(Some(Pieces {
        numerator: minor(rows, k.0)?,
        denominator,
    }))
}

fn finish<F: Field>(
    pieces: Pieces<F>,
    column: String,
    nonabelian: bool,
    opts: &TapOptions,
) -> Result<TapResult<F>> {
    let numerator = pieces.numerator.prune(opts.tol);
    if numerator.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (q, _, rel) = numerator.divide(&pieces.denominator)?;
    let exact = if F::EXACT {
        rel == 0.0
    } else {
        rel <= opts.division_tol
    };
    if exact {
        return TapResult::from_quotient(&q, column, Method::Engine, rel, opts.tol);
    }
    if nonabelian {
        return Err(Error::InexactDivision {
            remainder_norm: rel,
        });
    }
    let mut out = TapResult::from_quotient(&numerator, column, Method::Engine, rel, opts.tol)?;
    out.denominator = Some(pieces.denominator.normalized());
    Ok(out)
}

/// `det A_k / det Phi(x_k - 1)` for a validated SL2 representation, normalized
/// up to units. Abelian representations whose division is inexact return the
/// fraction; nonabelian ones fail with `InexactDivision`.
pub fn twisted_alexander<F: Field>(
    p: &Presentation,
    rep: &Representation<F>,
    opts: &TapOptions,
) -> Result<TapResult<F>> {
    check_deficiency(p)?;
    let phi = rep.phi(p)?;
    let rows = fox_matrix(p, &phi);
    for k in column_order(p, opts.column) {
        if k.0 >= p.num_generators() {
            return Err(Error::UnknownGenerator(format!("#{}", k.0)));
        }
        if let Some(pieces) = pieces_twisted(&phi, &rows, k, opts.tol)? {
            return finish(pieces, p.name(k).to_string(), rep.is_nonabelian(), opts);
        }
    }
    Err(Error::AllDenominatorsZero)
}

/// Classical Alexander polynomial from the one-dimensional specialization,
/// dividing `det A_k` by `(t^d - 1)/(t - 1)` with `d = deg x_k`.
pub fn alexander(p: &Presentation) -> Result<LaurentPoly<GaussianRational>> {
    alexander_with_column(p, None)
}

pub fn alexander_with_column(
    p: &Presentation,
    column: Option<Gen>,
) -> Result<LaurentPoly<GaussianRational>> {
    check_deficiency(p)?;
    let n = p.num_generators();
    let phi = Images::<GaussianRational, GaussianRational>::new(
        vec![GaussianRational::from_i64(1); n],
        p.degrees().to_vec(),
    )?;
    let rows = fox_matrix(p, &phi);
    for k in column_order(p, column) {
        let d = p.degrees()[k.0];
        if d == 0 {
            continue;
        }
        let den = LaurentPoly::new(
            0,
            vec![GaussianRational::from_i64(1); d.unsigned_abs() as usize],
        );
        let num = minor(&rows, k.0)?;
        if num.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        return Ok(num.divide_exact(&den, 0.0)?.normalized());
    }
    Err(Error::AllDenominatorsZero)
}

/// Outcome of one removed column in a well-definedness report.
#[derive(Clone, Debug)]
pub enum ColumnOutcome<F: Field> {
    Computed(TapResult<F>),
    Skipped,
    Failed(Error),
}

#[derive(Clone, Debug)]
pub struct WellDefinedness<F: Field> {
    pub columns: Vec<(String, ColumnOutcome<F>)>,
    /// `agree[i][j]` compares columns `i` and `j` when both were computed.
    pub agree: Vec<Vec<Option<bool>>>,
}

impl<F: Field> WellDefinedness<F> {
    pub fn all_agree(&self) -> bool {
        self.agree.iter().flatten().all(|a| a.unwrap_or(true))
    }

    pub fn computed(&self) -> usize {
        self.columns
            .iter()
            .filter(|(_, c)| matches!(c, ColumnOutcome::Computed(_)))
            .count()
    }
}

/// Runs the invariant for every admissible column and compares the results.
pub fn welldefinedness_report<F: Field>(
    p: &Presentation,
    rep: &Representation<F>,
    opts: &TapOptions,
) -> Result<WellDefinedness<F>> {
    check_deficiency(p)?;
    let phi = rep.phi(p)?;
    let rows = fox_matrix(p, &phi);
    let mut columns = Vec::new();
    for g in 0..p.num_generators() {
        let k = Gen(g);
        let name = p.name(k).to_string();
        let outcome = match pieces_twisted(&phi, &rows, k, opts.tol) {
            Ok(None) => ColumnOutcome::Skipped,
            Ok(Some(pieces)) => match finish(pieces, name.clone(), rep.is_nonabelian(), opts) {
                Ok(r) => ColumnOutcome::Computed(r),
                Err(e) => ColumnOutcome::Failed(e),
            },
            Err(e) => ColumnOutcome::Failed(e),
        };
        columns.push((name, outcome));
    }
    let agree = columns
        .iter()
        .map(|(_, a)| {
            columns
                .iter()
                .map(|(_, b)| match (a, b) {
                    (ColumnOutcome::Computed(x), ColumnOutcome::Computed(y)) => {
                        Some(x.equivalent(y, opts.tol.max(1e-8)))
                    }
                    _ => None,
                })
                .collect()
        })
        .collect();
    Ok(WellDefinedness { columns, agree })
}
