//! Inscribed cyclic polytopes, Gale's evenness criterion, and the f-vector
//! families of inscribed 3-polytopes.

mod cyclic;
mod fvectors;
mod gale;

pub use cyclic::{cyclic_spherical, cyclic_standard, cyclic_trig, hull_facets, CyclicMethod};
pub use fvectors::{fvector_families, steinitz_member, steinitz_set, FVector3, Family, FamilyVector};
pub use gale::gale_evenness_facets;

use thiserror::Error;

use crate::builder::BuildError;
use crate::complex::ComplexError;
use crate::kernel::KernelError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("curve parameters are not distinct")]
    NonDistinctParams,
    #[error("the trigonometric curve needs an even dimension, got {0}")]
    OddDimension(usize),
    #[error("no admissible parameter after {0} doublings")]
    GrowthCapExceeded(u32),
    #[error("vertex {0} is off the expected sphere")]
    NotOnSphere(usize),
    #[error("points {0:?} lie on a common hyperplane with another point")]
    NotSimplicial(Vec<usize>),
    #[error("facets differ from Gale's evenness prediction ({got} facets, expected {expected})")]
    GaleMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

pub type Result<T> = std::result::Result<T, GeneratorError>;
