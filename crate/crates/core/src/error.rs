use thiserror::Error;

/// Characteristic lower bounds required by the algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    /// char F >= mu (univariate tangling).
    H1,
    /// char F >= n = deg I (bivariate tangling, Taylor shifts).
    H2,
    /// J' is a monomial ideal.
    H3,
}

impl std::fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Hypothesis::H1 => "H1",
            Hypothesis::H2 => "H2",
            Hypothesis::H3 => "H3",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime below 2^62")]
    NotPrime(u64),
    #[error("modulus must be monic of degree at least 1")]
    NotMonic,
    #[error("polynomial is not irreducible, the quotient is not a field")]
    NotIrreducible,
    #[error("polynomial is not separable: gcd(T, T') != 1")]
    NotSeparable,
    #[error("division by zero")]
    DivisionByZero,
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("element is not invertible")]
    NotInvertible,
    #[error("{hypothesis} violated: characteristic {characteristic} must be at least {needed}")]
    CharacteristicTooSmall {
        hypothesis: Hypothesis,
        needed: u64,
        characteristic: u64,
    },
    #[error("moduli are not pairwise coprime")]
    ModuliNotCoprime,
    #[error("linear form does not generate the dual module")]
    NotAGenerator,
    #[error("invalid staircase: {0}")]
    InvalidStaircase(String),
    #[error("coefficient at x1^{a} x2^{b} lies outside the standard basis")]
    OutsideBasis { a: usize, b: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for failures of a mathematical precondition (as opposed to malformed input).
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::NotIrreducible
                | Error::NotSeparable
                | Error::NotInvertible
                | Error::DivisionByZero
                | Error::CharacteristicTooSmall { .. }
                | Error::ModuliNotCoprime
                | Error::NotAGenerator
        )
    }
}

/// Checks `char >= needed`, reporting the hypothesis on failure.
pub(crate) fn require_char(characteristic: u64, needed: u64, hypothesis: Hypothesis) -> Result<()> {
    if characteristic < needed {
        Err(Error::CharacteristicTooSmall {
            hypothesis,
            needed,
            characteristic,
        })
    } else {
        Ok(())
    }
}
