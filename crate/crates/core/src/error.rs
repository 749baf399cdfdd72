use thiserror::Error;

/// Errors raised by code construction, verification and the LP layer.
///
/// Generator and row indices are zero-based; the `Display` text reports them
/// one-based to match how generator tables are usually read.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty Pauli string")]
    EmptyPauli,
    #[error("invalid character {ch:?} at position {pos} in Pauli string")]
    InvalidPauliChar { ch: char, pos: usize },
    #[error("qubit count mismatch: expected {expected}, found {found}")]
    QubitCountMismatch { expected: usize, found: usize },
    #[error("weight {w} out of range for {n} qubits")]
    WeightOutOfRange { n: usize, w: usize },

    #[error("no generators given")]
    EmptyGeneratorList,
    #[error("generator {} is not Hermitian (squares to -I)", .0 + 1)]
    NonHermitianGenerator(usize),
    #[error("generators {} and {} anticommute", .0 + 1, .1 + 1)]
    AnticommutingPair(usize, usize),
    #[error("generator {} is a product of earlier generators", .0 + 1)]
    DependentGenerator(usize),
    #[error("generator {} depends on earlier generators with opposite sign (group contains -I)", .0 + 1)]
    DependentGeneratorWithSignConflict(usize),
    #[error("group of rank {rank} has more than {cap} elements")]
    CapExceeded { rank: usize, cap: u64 },

    #[error("classical message has length {found}, expected {expected}")]
    MessageLengthMismatch { expected: usize, found: usize },
    #[error("{m} classical bits would give more than 2^{limit} inner codes")]
    TooManyInnerCodes { m: usize, limit: usize },
    #[error("{n} qubits exceeds the dense limit of {limit}")]
    DenseLimitExceeded { n: usize, limit: usize },
    #[error("inner codes {} and {} are not orthogonal", .0 + 1, .1 + 1)]
    NotOrthogonal(usize, usize),
    #[error("inner codes must share qubit count and rank")]
    InconsistentInnerCodes,
    #[error("code has {available} logical qubits, {requested} requested")]
    InsufficientLogicals { available: usize, requested: usize },
    #[error("classical generator matrix is empty")]
    EmptyClassicalCode,
    #[error("classical generator matrix is rank deficient")]
    RankDeficientClassicalCode,

    #[error("Krawtchouk index out of range: j={j}, r={r}, n={n}")]
    KrawtchoukRange { n: usize, j: usize, r: usize },
    #[error("shadow inequalities are only defined for qubits, got q={0}")]
    ShadowUndefined(u32),

    #[error("length {0} is even: X^n and Z^(n-1)I anticommute")]
    EvenLengthRejected(usize),
    #[error("invalid family parameter: {0}")]
    InvalidFamilyParameter(String),
    #[error("Gottesman construction for j={j} failed distance verification under every convention")]
    DistanceVerificationFailed { j: usize },

    #[error("invalid LP instance: {0}")]
    InvalidLpInstance(String),
}

pub type Result<T> = std::result::Result<T, Error>;
