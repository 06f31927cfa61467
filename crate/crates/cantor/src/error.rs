use crate::ensembles::EnsembleKind;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Division by zero in exact field arithmetic.
    #[error("division by zero in exact arithmetic")]
    DivisionByZero,

    /// The distribution parameter must satisfy 0 < theta <= 1/2.
    #[error("theta = {0} is outside (0, 1/2]")]
    ThetaOutOfRange(String),

    /// A request would enumerate more strings than the configured guard.
    #[error("{kind} ensemble of length {len} has {count} members, above the guard of {guard}")]
    InfeasibleSize {
        kind: EnsembleKind,
        len: usize,
        count: String,
        guard: u64,
    },

    /// Longest 1-runs of solus strings are a degenerate statistic.
    #[error("run statistics for ({kind}, bit={bit}) are not defined")]
    UnsupportedRunPair { kind: EnsembleKind, bit: u8 },

    /// A generating function whose denominator vanishes at z = 0 has no
    /// coefficient sequence.
    #[error("generating-function denominator has zero constant term")]
    ZeroConstantTerm,

    /// Malformed exact value (rational, quadratic or cubic element).
    #[error("cannot parse {input:?} as {expected}")]
    Parse { input: String, expected: &'static str },

    /// Argument outside a function's domain (e.g. gamma at s <= 0).
    #[error("argument out of domain: {0}")]
    OutOfDomain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
