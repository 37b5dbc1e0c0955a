//! Exact Delaunay realizations of stellar subdivision plans, and their lift
//! to inscribed polytopes.

mod expand;
mod inscribed;
mod plan_build;

pub use expand::{choose_points, expand_at, init_root, initial_simplex, tangent_line, Expansion, PointChoice};
pub use inscribed::{
    lift_delaunay, lift_to_inscribed, verify_inscribed, InscribedPolytope, InscribedReport, InscribedViolation,
};
pub use plan_build::{
    build_bounded_degree, build_from_plan, build_from_tree, build_path, Build, BuildStep, BuildTrace,
};

use thiserror::Error;

use crate::complex::ComplexError;
use crate::kernel::{KernelError, Scalar};
use crate::trees::{Buildability, TreeError};

/// Search parameters shared by all constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildConfig {
    /// Edge length of the initial simplex.
    pub scale: Scalar,
    /// Maximum number of halvings of the step length before giving up.
    pub halving_cap: u32,
}

impl Default for BuildConfig {
    fn default() -> Self {
        BuildConfig { scale: crate::kernel::int(1), halving_cap: 256 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("dimension {0} is not supported here (need d >= 3)")]
    BadDimension(usize),
    #[error("scale must be positive")]
    BadScale,
    #[error("vertex {0} is not an interior vertex of degree d")]
    NotSimpleInterior(usize),
    #[error("faces {0:?} are not one or two distinct facets at the vertex")]
    BadFaces(Vec<Vec<usize>>),
    #[error("tangent directions span only the zero vector")]
    DegenerateNormals,
    #[error("line through the vertex does not enter both facets")]
    DegenerateDirection,
    #[error("no admissible points after {0} halvings")]
    SearchExhausted(u32),
    #[error("plan is not buildable: {0:?}")]
    PlanNotBuildable(Buildability),
    #[error("node {0} is not a leaf of the tree")]
    NotALeaf(usize),
    #[error("triangulation is not Delaunay")]
    NotDelaunay,
    #[error("support of the triangulation is not a simplex")]
    SupportNotSimplex,
    #[error("boundary ridges {0:?} and {1:?} span a common hyperplane")]
    NotSimplicial(Vec<usize>, Vec<usize>),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

pub type Result<T> = std::result::Result<T, BuildError>;
