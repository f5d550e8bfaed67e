use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("Jacobi iteration did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },
    #[error("Pauli words have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("Pauli index {0} out of range 0..=3")]
    BadIndex(u8),
    #[error("size {0} is too large for this operation")]
    TooLarge(usize),
    #[error("weights must be non-negative and sum to one")]
    BadWeights,
    #[error("subset is empty")]
    EmptySubset,
    #[error("parameter {name} = {value} is out of range")]
    OutOfRange { name: &'static str, value: f64 },
    #[error("dimension {0} must be even and at least 4")]
    OddDim(usize),
    #[error("vectors are not orthonormal (max Gram deviation {0:e})")]
    NotOrthonormal(f64),
    #[error("mu must be positive, got {0}")]
    NonPositiveMu(f64),
    #[error("bad parameter: {0}")]
    BadParameter(&'static str),
    #[error("point ({0},{1}) is not in the subset")]
    PointNotInSubset(u8, u8),
    #[error("state is not PPT")]
    NotPpt,
    #[error("state and its partial transpose both have trivial kernels")]
    ZeroKernels,
    #[error("realignment needs equal local dimensions, got {0}x{1}")]
    NonSquareParties(usize, usize),
    #[error("covering is not a uniform covering of the subset")]
    BadCovering,
}
