use thiserror::Error;

/// Errors raised by the arithmetic, factorization and checking layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("denominator {den} is divisible by p = {p}")]
    DenominatorNotUnit { den: i64, p: u64 },
    #[error("element is not a unit")]
    NotAUnit,
    #[error("x is divisible by p")]
    XNotUnit,
    #[error("polynomial is not squarefree modulo p")]
    NotSquarefree,
    #[error("factors are not coprime modulo p")]
    NotCoprime,
    #[error("double-root division left a nonzero remainder")]
    DegenerateDivisionFailure,
    #[error("value is not divisible by p^{0}")]
    NotDivisible(u32),
    #[error("summation range contains k = 0 with a 1/k^d weight")]
    ZeroInRange,
    #[error("x is degenerate ({0})")]
    DegenerateX(&'static str),
    #[error("prime too small: {0}")]
    SmallPrime(String),
    #[error("non-unit denominator in a factor ring")]
    NonUnitDenominator,
    #[error("divisibility certificate failed: bracket not divisible by p^{0}")]
    DivisibilityFailure(u32),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Reason tag when this error means "check not applicable" rather than a failure.
    pub fn skip_reason(&self) -> Option<&'static str> {
        match self {
            Error::DegenerateX(_) | Error::XNotUnit => Some("DegenerateX"),
            Error::SmallPrime(_) => Some("SmallPrime"),
            Error::NonUnitDenominator => Some("NonUnitDenominator"),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
