//! Combinatorial topology toolkit: labeled simplicial complexes, local
//! models, branched manifolds, and immersion search.
//!
//! Everything here is finite, pure, and deterministic: complexes are
//! immutable after construction, searches branch in a fixed order, and all
//! answers with undecidable cases at higher dimension say `Unknown`
//! rather than guess.

pub mod branched;
pub mod bundles;
pub mod complex;
pub mod error;
pub mod fixtures;
pub mod labeling;
pub mod model;
pub mod subdivision;
pub mod universal;

pub use complex::{
    boundary_complex, disjoint_union, find_isomorphism, isomorphisms, Distance, IsoConstraints,
    ManifoldStatus, Recognition, Simplex, SimplicialComplex, SimplicialMap, VertexId,
};
pub use error::{Error, Result};
pub use labeling::{
    compute_d_coloring, compute_geography, geographize, geography_transport, is_d_coloring, Color,
    Coloring, Geography, GeographyLabeling, Label, Labeling,
};
