use thiserror::Error;

/// Errors raised across the library.
///
/// The variants fall in three groups that callers (notably the CLI) treat
/// differently: malformed input, violated construction conditions, and
/// resource limits.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("extension degree {0} is outside 1..=24")]
    DegreeOutOfRange(u32),
    #[error("modulus {modulus:#x} has degree {found:?}, expected {expected}")]
    WrongModulusDegree {
        modulus: u64,
        expected: u32,
        found: Option<u32>,
    },
    #[error("modulus {0:#x} is not irreducible over GF(2)")]
    ReducibleModulus(u64),
    #[error("modulus {0:#x} has zero constant term")]
    ModulusNotCoprimeToX(u64),
    #[error("value {value:#x} does not fit in GF(2^{degree})")]
    ValueOutOfRange { value: u64, degree: u32 },
    #[error("field elements belong to different fields (moduli {left:#x} and {right:#x})")]
    ContextMismatch { left: u32, right: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("Frobenius power {k} out of range for degree {degree}")]
    FrobeniusOutOfRange { k: u32, degree: u32 },
    #[error("{d} does not divide the extension degree {degree}")]
    NotADivisor { d: u32, degree: u32 },
    #[error("parse error: {0}")]
    Parse(String),

    #[error("linearized polynomial is not a permutation")]
    NotPermutation,
    #[error("expected {expected} coefficients, got {found}")]
    CoefficientCount { expected: usize, found: usize },
    #[error("field degree {degree} does not fit the required shape ({shape})")]
    DegreeShape { degree: u32, shape: String },
    #[error("not invertible as binomial: alpha^(2^m+1) = beta^(2^m+1)")]
    BinomialNotInvertible,
    #[error("trinomial not invertible as trinomial of this shape: determinant is zero")]
    TrinomialSingular,
    #[error("internal error: {0}")]
    Internal(String),

    /// A parameter fails one of the defining conditions of a family.
    #[error("{family}: condition violated: {condition}")]
    ConditionViolated {
        family: &'static str,
        condition: String,
    },
    /// A parameter choice meets the stated conditions but collapses the
    /// triple so the family's conclusion no longer holds.
    #[error("{family}: degenerate parameters rejected: {reason}")]
    Degenerate {
        family: &'static str,
        reason: String,
    },

    #[error("resource limit: {0}")]
    ResourceLimit(String),
}

impl Error {
    /// True for violated family conditions and rejected degenerate parameters.
    pub fn is_condition_violation(&self) -> bool {
        matches!(
            self,
            Error::ConditionViolated { .. }
                | Error::Degenerate { .. }
                | Error::BinomialNotInvertible
                | Error::TrinomialSingular
        )
    }

    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
