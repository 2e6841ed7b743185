use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not invertible modulo the extension polynomial")]
    NonInvertibleResidue,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("abelianization is not infinite cyclic: {0}")]
    NonCyclicAbelianization(String),
    #[error("matrix is not square: {rows} x {cols}")]
    NonSquare { rows: usize, cols: usize },
    #[error("division left a remainder of relative norm {remainder_norm:e}")]
    InexactDivision { remainder_norm: f64 },
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error(
        "presentation has {generators} generators and {relators} relators, deficiency must be one"
    )]
    DeficiencyMismatch { generators: usize, relators: usize },
    #[error("every admissible column has a vanishing denominator")]
    AllDenominatorsZero,
    #[error("column `{0}` has a vanishing denominator")]
    ZeroDenominator(String),
    #[error("alpha and beta are not coprime: {alpha}, {beta}")]
    NotCoprime { alpha: i64, beta: i64 },
    #[error("continued fraction violates the expected shape: {0}")]
    SpecInvariantViolation(String),
    #[error("not a tunnel number one case (2) knot: {0}")]
    NotCase2(String),
    #[error("image of `{generator}` is not in SL2 (deviation {deviation:e})")]
    NotSl2 { generator: String, deviation: f64 },
    #[error("relator {index} is violated (deviation {deviation:e})")]
    RelatorViolation { index: usize, deviation: f64 },
    #[error("representation has no image for generator `{0}`")]
    MissingImage(String),
    #[error("Riley polynomial has no nonabelian root")]
    NoNonabelianRoot,
    #[error("representation search did not converge (best residual {best_residual:e})")]
    DidNotConverge { best_residual: f64 },
    #[error("closed form does not apply: {0}")]
    Unsupported(String),
    #[error("block index {0} is out of range")]
    IndexOutOfRange(i64),
    #[error("closed form recursion is inconsistent: {0}")]
    Inconsistent(String),
    #[error("representation is {found}, expected {expected}")]
    BackendMismatch {
        expected: &'static str,
        found: &'static str,
    },
}

impl Error {
    /// Stable machine-readable tag used in CLI error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division_by_zero",
            Error::NonInvertibleResidue => "non_invertible_residue",
            Error::UnknownGenerator(_) => "unknown_generator",
            Error::Parse(_) => "parse",
            Error::NonCyclicAbelianization(_) => "non_cyclic_abelianization",
            Error::NonSquare { .. } => "non_square",
            Error::InexactDivision { .. } => "inexact_division",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::DeficiencyMismatch { .. } => "deficiency_mismatch",
            Error::AllDenominatorsZero => "all_denominators_zero",
            Error::ZeroDenominator(_) => "zero_denominator",
            Error::NotCoprime { .. } => "not_coprime",
            Error::SpecInvariantViolation(_) => "spec_invariant_violation",
            Error::NotCase2(_) => "not_case2",
            Error::NotSl2 { .. } => "not_sl2",
            Error::RelatorViolation { .. } => "relator_violation",
            Error::MissingImage(_) => "missing_image",
            Error::NoNonabelianRoot => "no_nonabelian_root",
            Error::DidNotConverge { .. } => "did_not_converge",
            Error::Unsupported(_) => "unsupported",
            Error::IndexOutOfRange(_) => "index_out_of_range",
            Error::Inconsistent(_) => "inconsistent",
            Error::BackendMismatch { .. } => "backend_mismatch",
        }
    }

    /// True for errors caused by bad user input rather than a failed computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::UnknownGenerator(_)
                | Error::Parse(_)
                | Error::NonCyclicAbelianization(_)
                | Error::NonSquare { .. }
                | Error::DeficiencyMismatch { .. }
                | Error::NotCoprime { .. }
                | Error::SpecInvariantViolation(_)
                | Error::NotCase2(_)
                | Error::NotSl2 { .. }
                | Error::RelatorViolation { .. }
                | Error::MissingImage(_)
                | Error::Unsupported(_)
                | Error::IndexOutOfRange(_)
                | Error::BackendMismatch { .. }
        )
    }
}
