//! Evidence that three subdivisions around one simple vertex can never be
//! Delaunay: the planar angle argument, the split point `x` of a single
//! subdivision, and the inversion-and-projection reduction to the plane.

mod angle;
mod inversion;
mod split;
mod sweep;

pub use angle::{
    angle_obstruction_2d, check_configuration, AngleDiagnostic, AngleObstruction, EdgeCheck, Spoke, TriangleConfig,
};
pub use inversion::{reduce_by_inversion, Reduction, RidgeDiagnostic};
pub use split::{
    classify_split, split_geometry, verify_new_facets, verify_split_point, NewFacetCase, NewFacetCheck, NewFacetReport,
    SplitGeometry, SplitPointReport, SplitSimplex,
};
pub use sweep::{
    certify_sweep, certify_tree, new_facet_instance, pipeline_instance, random_split, random_triangle_config,
    subdivide_three, CertifyReport, PipelineStages, TrialReport,
};

use thiserror::Error;

use crate::builder::BuildError;
use crate::complex::ComplexError;
use crate::kernel::KernelError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("invariant failed: {0}")]
    InvariantFailed(String),
    #[error("subdivided complex is not Delaunay (face {0:?} violated)")]
    HypothesisFailed(Vec<usize>),
    #[error("points do not have the split-triangle combinatorial type: {0}")]
    WrongCombinatorialType(String),
    #[error("vertex {0} coincides with the inversion center")]
    InversionCenterHit(usize),
    #[error("tree has maximum degree {0}; nothing to certify")]
    NotObstructed(usize),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

pub type Result<T> = std::result::Result<T, ObstructionError>;
