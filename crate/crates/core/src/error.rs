use thiserror::Error;

/// Errors produced by the core library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed state document: {0}")]
    MalformedDocument(String),
    #[error("length not power of two: {0} amplitudes")]
    LengthNotPowerOfTwo(usize),
    #[error("declared n = {declared} but {len} amplitudes given (expected {expected})")]
    LengthMismatch {
        declared: usize,
        len: usize,
        expected: usize,
    },
    #[error("qubit count {0} out of range 1..=10")]
    QubitCountOutOfRange(usize),
    #[error("non-finite amplitude at index {0}")]
    NonFiniteAmplitude(usize),
    #[error("all-zero amplitude vector")]
    ZeroState,

    #[error("invalid partition '{text}': {reason}")]
    InvalidPartition { text: String, reason: String },
    #[error("arity mismatch: expected {expected} qubits, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("singular local operator (|det| = {0:e})")]
    SingularOperator(f64),
    #[error("local operator is not unimodular (|det - 1| = {0:e})")]
    NotUnimodular(f64),
    #[error("Kronecker power {0} out of range 1..=10")]
    KronPowerOutOfRange(usize),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("closed-form invariants need {expected} qubits, state has {got}")]
    WrongQubitCount { expected: &'static str, got: usize },

    #[error("rejection sampling exhausted after {0} attempts")]
    SamplerExhausted(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
