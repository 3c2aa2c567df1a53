use thiserror::Error;

/// Errors raised anywhere in the guessing pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// No fraction within the symmetric bound maps to the residue; more primes are needed.
    #[error("rational reconstruction failed modulo {modulus}: no fraction with |p|, q <= {bound}")]
    ReconstructionFailed { modulus: String, bound: String },

    /// A denominator vanishes modulo the prime; the prime should be dropped.
    #[error("unlucky prime {prime}: {reason}")]
    UnluckyPrime { prime: u64, reason: String },

    #[error("series has no trusted coefficients left")]
    EmptySeries,

    #[error("insufficient data: {detail} (need at least {needed}, have {have})")]
    InsufficientData { needed: usize, have: usize, detail: String },

    #[error("support mismatch across primes: {0}")]
    SupportMismatch(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown builtin sequence `{0}`")]
    UnknownBuiltin(String),
}

pub type Result<T> = std::result::Result<T, Error>;
