use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polygon multiset is empty")]
    EmptyMultiset,
    #[error("face degree {degree} is below 3")]
    DegreeBelowThree { degree: i64 },
    #[error("count {count} for degree {degree} is not positive")]
    NonPositiveCount { degree: i64, count: i64 },
    #[error("polygon multiset is too large to count exactly")]
    Overflow,
    #[error("vertex count {v} is below the minimum of {min}")]
    VertexCountTooSmall { v: u64, min: u64 },
    #[error("flatness {s} outside 0..={s_max} for V={v}")]
    FlatnessOutOfRange { v: u64, s: u64, s_max: u64 },
    #[error("T={t} with V={v} gives a negative gluing count")]
    InconsistentPair { t: u64, v: u64 },
    #[error("{quantity} evaluates to {value}, inputs are inconsistent")]
    NegativeCount { quantity: &'static str, value: i64 },
    #[error("angle unit count {n} is odd, no genus-0 surface exists")]
    OddAngleUnits { n: u64 },
    #[error("angle unit count must be positive")]
    NoAngleUnits,
    #[error("inconsistent inputs: {0}")]
    InconsistentInputs(String),
    #[error("edge count {e} outside {min}..={max} for V={v}")]
    EdgeCountOutOfRange { v: u64, e: u64, min: u64, max: u64 },
    #[error("tetrahedron {index} is invalid: {reason}")]
    InvalidTet { index: usize, reason: String },
    #[error("tetrahedron {index} duplicates an earlier one")]
    DuplicateTet { index: usize },
    #[error("triangle {triangle:?} belongs to {count} tetrahedra")]
    NonManifoldTriangle { triangle: [usize; 3], count: usize },
    #[error("complex is not face-connected or has unused vertices")]
    DisconnectedComplex,
    #[error("flat edge {edge:?} is not a boundary edge")]
    FlatEdgeNotOnBoundary { edge: [usize; 2] },
    #[error("unknown accounting mode `{0}`")]
    UnknownMode(String),
}
