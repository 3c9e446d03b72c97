use thiserror::Error;

/// Crate-wide error type. Every fallible operation in the library returns
/// one of these; the CLI maps them onto exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("gram matrix is not symmetric (entry [{row},{col}] differs from [{col},{row}])")]
    NonSymmetric { row: usize, col: usize },

    #[error("gram matrix is degenerate (zero determinant)")]
    Degenerate,

    #[error("dimension mismatch: got a length-{got} vector for a rank-{expected} lattice")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unknown lattice preset `{0}`")]
    UnknownPreset(String),

    #[error("rescaling factor must be nonzero")]
    ZeroScale,

    #[error("the zero vector is not allowed here")]
    ZeroVector,

    #[error("lattices do not form a covering pair (expected the doubled gram matrix)")]
    LatticePairMismatch,

    #[error("lattice is not hyperbolic: signature is ({0}, {1}), need (1, rank-1)")]
    NotHyperbolic(usize, usize),

    #[error("not a valid polarized class: {0}")]
    NonPositivePolarization(String),

    #[error("empty pairing range [{lo}, {hi}] (need 1 <= lo <= hi)")]
    EmptyRange { lo: i64, hi: i64 },

    #[error("box scan of {points} candidate points exceeds the limit of {limit}")]
    BoxTooLarge { points: u128, limit: u128 },

    #[error("mu cap {cap} lies below the Hodge floor {floor}; no search range remains")]
    CapBelowHodgeFloor { cap: i64, floor: i64 },

    #[error("no isotropic seed vector is known for this lattice; supply one explicitly")]
    NoIsotropicSeed,

    #[error("operation requires the enriques_num lattice")]
    WrongLattice,

    #[error("self-intersection {0} is odd; genus is undefined on this class")]
    OddSelfIntersection(i64),

    #[error("sample space is empty for the given coordinate box and filters")]
    EmptySampleSpace,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
