//! Exact rational geometry kernel.
//!
//! Every quantity is a [`Scalar`] (an arbitrary-precision rational). Spheres
//! carry squared radii, so no operation in this module ever needs a square
//! root and every predicate is decided exactly.

pub mod linalg;
mod line;
mod lp;
mod maps;
mod point;
mod predicates;
mod scalar;

pub use line::{affine_intersection_line, line_sphere_second_root, Line};
pub use lp::{strictly_feasible, Feasibility};
pub use maps::{inverse_stereographic, invert_in_sphere, north_pole, reflect_onto, stereographic_project, Reflection};
pub use point::Point;
pub use predicates::{
    circumsphere, face_circumsphere, hyperplane_side, insphere_lifted, orientation, point_in_simplex, sphere_side,
    Hyperplane, Side, Sign, SimplexLocation, Sphere, SphereSide,
};
pub use scalar::{
    format_approx, format_scalar, int, parse_scalar, ratio, serde_scalar, serde_scalar_opt, Scalar, ScalarParseError,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("wrong number of points: expected {expected}, got {got}")]
    WrongPointCount { expected: usize, got: usize },
    #[error("simplex is affinely dependent")]
    DegenerateSimplex,
    #[error("cannot invert the center of the inversion sphere")]
    CenterInversion,
    #[error("the north pole has no stereographic image")]
    NorthPole,
    #[error("point is not on the sphere")]
    NotOnSphere,
    #[error("direction spaces meet only in the origin")]
    EmptyIntersection,
    #[error("vectors have different norms")]
    NormMismatch,
    #[error("spans do not start at a common point")]
    NoCommonPoint,
    #[error("zero vector where a nonzero direction or normal is required")]
    ZeroVector,
}

pub type Result<T> = std::result::Result<T, KernelError>;

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(KernelError::DimensionMismatch { expected, got })
    }
}
