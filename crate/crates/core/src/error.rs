use thiserror::Error;

use crate::complex::{Simplex, VertexId};

/// Errors shared across the toolkit.
///
/// Negative mathematical answers (no isomorphism, not modeled, no immersion)
/// are not errors; they are encoded in return types. An `Error` means the
/// inputs violated a precondition or a construction could not be carried out.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {0} is not in the complex")]
    UnknownVertex(VertexId),

    #[error("simplex {0} is not in the complex")]
    UnknownSimplex(Simplex),

    #[error("simplex {0} is not top-dimensional")]
    NotTopSimplex(Simplex),

    #[error("{facet} is not a facet of {simplex}")]
    NotAFacet { simplex: Simplex, facet: Simplex },

    #[error("subdivision requires dimension at least 2, got {0}")]
    SubdivisionDimension(usize),

    #[error("chain subdivision requires at least one step")]
    EmptyChain,

    #[error("degree index {index} out of range for dimension {dim}")]
    DegreeIndex { index: usize, dim: usize },

    #[error("parameter N must be at least 1")]
    BadDegreeParameter,

    #[error("coloring is not total: vertex {0} has no color")]
    PartialColoring(VertexId),

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("vertices {0} and {1} have different geographies")]
    GeographyMismatch(VertexId, VertexId),

    #[error("not a combinatorial manifold: {0}")]
    NotAManifold(String),

    #[error("label codec requires dimension at least 2, got {0}")]
    CodecDimension(usize),

    #[error("labeling is not total: {0}")]
    PartialLabeling(String),

    #[error("no family entry matches labeled simplex class of {0}")]
    UnmatchedSimplexClass(Simplex),

    #[error("decode failed: {0}")]
    DecodeFailed(String),

    #[error("model sets must not mix labeled and unlabeled models")]
    MixedLabels,

    #[error("models in a set must share one dimension")]
    MixedDimensions,

    #[error("center {0} is not a vertex of the model complex")]
    BadCenter(VertexId),

    #[error("enumeration supports dimensions 1 and 2, got {0}")]
    EnumerationDimension(usize),

    #[error("witness {0} is not modeled on the model set")]
    WitnessNotModeled(usize),

    #[error("radius {given} is too small; need at least {required}")]
    RadiusTooSmall { given: usize, required: usize },

    #[error("vertex {0} has a geography outside the build; witness set not saturated")]
    UnsaturatedGeography(VertexId),

    #[error("vertex map is not defined on {0}")]
    MapNotTotal(VertexId),

    #[error("map sends {0} to a simplex outside the target")]
    MapNotSimplicial(Simplex),

    #[error("vertex relabeling is not injective")]
    RelabelNotInjective,

    #[error("matrix has determinant {0}; need +1 or -1")]
    NotUnimodular(i64),

    #[error("monodromy word must be nonempty")]
    EmptyWord,

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
