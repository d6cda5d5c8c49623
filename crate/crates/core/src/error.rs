use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty input")]
    Empty,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("basis rows are linearly dependent")]
    DependentBasis,
    #[error("subspace dimension {dim} outside 1..={ambient}")]
    BadSubspaceDim { dim: usize, ambient: usize },
    #[error("polytope is not full-dimensional (affine dimension {affine} in R^{ambient})")]
    NotFullDimensional { affine: usize, ambient: usize },
    #[error("directions do not span R^{ambient} (rank {rank})")]
    NotSpanning { rank: usize, ambient: usize },
    #[error("components do not form a direct sum of R^{ambient}")]
    NotDirectSum { ambient: usize },
    #[error("zero direction at index {0}")]
    ZeroDirection(usize),
    #[error("invalid reliability dimension d={d} for ambient dimension {n}")]
    BadReliabilityDim { d: usize, n: usize },
    #[error("invalid simplicial family: {0}")]
    BadFamily(String),
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("no scale above 1 found: sampled minimum {alpha_min} at trial {trial}")]
    NoSlack { alpha_min: String, trial: usize },
    #[error("corpus member {0} is not centrally symmetric")]
    NotCentrallySymmetric(usize),
    #[error("polytope is a reliable {0}-cover; no counterexample exists")]
    Reliable(usize),
    #[error("factor reconstruction failed: direct sum does not reproduce the polytope")]
    ReconstructionFailed,
    #[error("random generation failed after {0} attempts")]
    GenerationFailed(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown example `{0}`")]
    UnknownExample(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("input exceeds limits: {0}")]
    TooLarge(String),
}
