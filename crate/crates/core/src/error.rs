use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("point {point} is outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("group closure exceeded the cap of {cap} elements ({partial} found so far)")]
    GroupTooLarge { cap: usize, partial: usize },

    #[error("subgroup lattice needs |G| <= {cap}, got {order}")]
    LatticeTooLarge { order: usize, cap: usize },

    #[error("group is not transitive")]
    NotTransitive,

    #[error("partition is not invariant under the group")]
    InvalidPartition,

    #[error("malformed partition: {0}")]
    MalformedPartition(String),

    #[error("subgroup is not contained in the ambient group")]
    NotContained,

    #[error("{count} tuples exceed the tuple cap of {cap}")]
    TooManyTuples { count: u128, cap: usize },

    #[error("right action needs a tuple of arity {degree}, got arity {arity}")]
    UnsupportedRightAction { arity: usize, degree: usize },

    #[error("tuple would repeat a coordinate")]
    DiagonalViolation,

    #[error("invalid projection positions: {0}")]
    InvalidPositions(String),

    #[error("{points} points exceed the engine cap of {cap}")]
    EngineCap { points: usize, cap: usize },

    #[error("automorphism search exceeded its budget of {nodes} nodes")]
    SearchBudget { nodes: usize },

    #[error("k-orbit is not coherent")]
    NotCoherent,

    #[error("partitions are over different tuple sets")]
    CarrierMismatch,

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("edge list parse error at line {line}: {reason}")]
    EdgeList { line: usize, reason: String },

    #[error("group file error at line {line}: {reason}")]
    GroupFile { line: usize, reason: String },

    #[error("korb file error at line {line}: {reason}")]
    KorbFile { line: usize, reason: String },

    #[error("catalog error at line {line}: {reason}")]
    CatalogLoad { line: usize, reason: String },

    #[error("unknown group id {0:?}")]
    UnknownGroup(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// True for errors that signal a configured resource cap rather than bad input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::GroupTooLarge { .. }
                | Error::LatticeTooLarge { .. }
                | Error::TooManyTuples { .. }
                | Error::EngineCap { .. }
                | Error::SearchBudget { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
