use thiserror::Error;

/// Every failure the library can report.
///
/// Variants split into two families: domain errors (the input is well formed
/// but the requested object does not exist, e.g. a cyclic quiver handed to the
/// representation-theory routines) and internal consistency guards
/// (`DualityViolation`, `SignCoherenceViolation`, `ConventionViolation`) that
/// indicate a bug rather than bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix rows have unequal lengths")]
    RaggedRows,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("matrix inverse is not integral")]
    NotIntegral,

    #[error("negative exponent {0} applied to a polynomial that is not a monomial")]
    ExponentNegative(i64),

    #[error("exponent {0} does not fit in 64 bits")]
    ExponentOverflow(String),

    #[error("polynomial division is not exact")]
    NotDivisible,

    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),

    #[error("exchange matrix is not skew-symmetrizable: {0}")]
    NotSkewSymmetrizable(String),

    #[error("exchange matrix is not skew-symmetric")]
    NotSkewSymmetric,

    #[error("direction {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("tropical duality violated after mutation sequence {history:?}")]
    DualityViolation { history: Vec<usize> },

    #[error("c-matrix column {column} is not sign-coherent after mutation sequence {history:?}")]
    SignCoherenceViolation { column: usize, history: Vec<usize> },

    #[error("F-polynomial without constant term 1 after mutation sequence {history:?}")]
    ConstantTermViolation { history: Vec<usize> },

    #[error("quiver has an oriented cycle")]
    NotAcyclic,

    #[error("path-count Cartan matrix does not reproduce the exchange matrix")]
    ConventionViolation,

    #[error("quiver is not of Dynkin type; exhaustive knitting is unavailable")]
    NotRepresentationFinite,

    #[error("vector {0:?} is not positive")]
    NotPositive(Vec<String>),

    #[error("vector {0:?} is not a dimension vector of a knitted module")]
    NotARoot(Vec<String>),

    #[error("vector {0:?} is not sign-coherent")]
    NotSignCoherent(Vec<String>),

    #[error("{beta:?} lies in no visited cone ({reason})")]
    NotInVisitedComplex { beta: Vec<String>, reason: String },
}

impl Error {
    /// True for errors caused by the mathematical content of a well-formed request.
    pub fn is_domain_error(&self) -> bool {
        !matches!(
            self,
            Error::DimensionMismatch { .. }
                | Error::NotSquare { .. }
                | Error::RaggedRows
                | Error::VariableMismatch(..)
                | Error::IndexOutOfRange { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn display_vec<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}
