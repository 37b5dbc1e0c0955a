//! Pure simplicial complexes in `R^m` with exact coordinates: validation,
//! stellar subdivision and its inverse, and Delaunay checks.

mod brute;
mod delaunay;
mod stellar;
mod triangulation;

pub use brute::brute_force_delaunay;
pub(crate) use brute::combinations;
pub use delaunay::{check_delaunay, support_constraints, DelaunayMode, DelaunayReport, SupportSystem, Violation};
pub use stellar::{stellar_subdivide, undo_stellar};
pub use triangulation::{build_triangulation, Facet, Triangulation};

use thiserror::Error;

use crate::kernel::KernelError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("ambient dimension must be at least 2, got {0}")]
    BadDimension(usize),
    #[error("vertex {vertex} has dimension {got}, expected {expected}")]
    VertexDimension { vertex: usize, expected: usize, got: usize },
    #[error("facet {0:?} does not have dim + 1 distinct vertices")]
    BadArity(Vec<usize>),
    #[error("facet {0:?} refers to a missing vertex")]
    VertexOutOfRange(Vec<usize>),
    #[error("facet {0:?} listed twice")]
    DuplicateFacet(Vec<usize>),
    #[error("facet {0:?} is affinely dependent")]
    DegenerateFacet(Vec<usize>),
    #[error("ridge {0:?} lies in three or more facets")]
    NonManifoldRidge(Vec<usize>),
    #[error("vertex {0} is in no facet")]
    DanglingVertex(usize),
    #[error("facets meeting at ridge {0:?} lie on the same side of it")]
    FoldedRidge(Vec<usize>),
    #[error("support is not convex at boundary ridge {0:?}")]
    NonConvexBoundary(Vec<usize>),
    #[error("facets {0:?} and {1:?} overlap")]
    Overlap(Vec<usize>, Vec<usize>),
    #[error("dual graph is disconnected")]
    Disconnected,
    #[error("triangulation has no facets")]
    Empty,
    #[error("facet {0:?} is not in the triangulation")]
    UnknownFacet(Vec<usize>),
    #[error("vertex {0} is not in the triangulation")]
    UnknownVertex(usize),
    #[error("point is not strictly inside the facet")]
    NotInterior,
    #[error("vertex {0} is not an interior vertex whose star subdivides one simplex")]
    NotSimpleInterior(usize),
    #[error("point set is not in general position: {0}")]
    DegeneratePointSet(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

pub type Result<T> = std::result::Result<T, ComplexError>;
