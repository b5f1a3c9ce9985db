use alloc::string::String;

/// Errors raised by the exact-arithmetic layers.
///
/// Variants split into input problems (bad prime, unparsable entry, a
/// Frobenius matrix without finite E-height) and internal invariant
/// failures; [`Error::is_internal`] tells them apart.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a supported prime")]
    InvalidPrime(u64),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("coefficient {value} is not {p}-integral")]
    NotPIntegral { value: String, p: u64 },
    #[error("polynomial is not divisible by E^{k}")]
    NotDivisible { k: u32 },
    #[error("lattice is not contained in the ambient lattice")]
    NotContained,
    #[error("vectors do not span a saturated submodule")]
    NotSaturated,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("module rank must be positive")]
    ZeroRank,
    #[error("Frobenius matrix is zero")]
    ZeroMatrix,
    #[error("determinant of the Frobenius matrix is zero")]
    ZeroDeterminant,
    #[error("determinant is not a unit times a power of E (cofactor {cofactor})")]
    InfiniteHeight { cofactor: String },
    #[error("basis matrix does not have determinant unit * E^k: {0}")]
    NotFreeBasis(String),
    #[error("filtration failed to stabilize: {0}")]
    StabilizationFailure(String),
    #[error("graded ranks are inconsistent: {0}")]
    InconsistentRanks(String),
    #[error("independent computations disagree: {0}")]
    InternalMismatch(String),
    #[error("Frobenius matrix is singular mod p")]
    SingularModP,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NotDivisible { .. }
                | Error::StabilizationFailure(_)
                | Error::InconsistentRanks(_)
                | Error::InternalMismatch(_)
                | Error::SingularModP
                | Error::Internal(_)
        )
    }
}

pub type Result<T> = core::result::Result<T, Error>;
