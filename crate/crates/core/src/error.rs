use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("unsupported arity {0}")]
    UnsupportedArity(usize),
    #[error("rule number does not fit in 2^{bits} bits")]
    RuleOutOfRange { bits: usize },
    #[error("malformed rule number: {0}")]
    MalformedNumber(String),
    #[error("truth table must have {expected} entries, got {got}")]
    TableLength { expected: usize, got: usize },
    #[error("lattice dimensions are degenerate: {0}")]
    DegenerateLattice(String),
    #[error("lattice dimensions do not match rule arity {arity}")]
    DimsMismatch { arity: usize },
    #[error("correlation is undefined for a constant vector")]
    UndefinedCorrelation,
    #[error("crossover point {0} out of range")]
    CrossoverPoint(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("operation requires a 2D history")]
    NotTwoDimensional,
}
