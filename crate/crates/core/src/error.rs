use thiserror::Error;

use crate::complexes::Simplex;

pub type Result<T, E = TopologyError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("simplex {0:?} repeats a vertex")]
    DuplicateVertex(Vec<u32>),

    #[error("a maximal simplex must have at least one vertex")]
    EmptySimplex,

    #[error("not a pseudomanifold: {reason}")]
    NotAPseudomanifold { reason: String },

    #[error("simplex {simplex} of the subcomplex is missing from the ambient complex")]
    NotASubcomplex { simplex: Simplex },

    #[error("simplex {simplex} of {region} does not lie on the boundary")]
    RegionNotInBoundary {
        region: &'static str,
        simplex: Simplex,
    },

    #[error("boundary simplex {simplex} is covered by neither region")]
    RegionsDoNotCover { simplex: Simplex },

    #[error("reduced homology is only defined for an absolute complex")]
    ReducedOnPair,

    #[error("not an inclusion of pairs: {simplex} of the {part} has no image")]
    NotAnInclusion {
        part: &'static str,
        simplex: Simplex,
    },

    #[error("cover precondition violated: {reason}")]
    CoverViolation { reason: String },

    #[error("complex has empty boundary; nothing to glue along")]
    EmptyBoundary,

    #[error("unknown example `{name}`; catalog: {catalog}")]
    UnknownExample { name: String, catalog: String },

    #[error("parameter out of range for `{name}`: {reason}")]
    ParameterOutOfRange { name: String, reason: String },

    #[error("invalid acyclic matching: {0}")]
    InvalidMatching(String),

    #[error("rolling modulus must use N >= 1")]
    ZeroModulus,

    #[error("internal identity failure: {0}")]
    Internal(String),
}
