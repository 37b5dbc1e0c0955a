//! Exact constructions and obstructions for inscribed stacked polytopes and
//! Delaunay triangulations built by stellar subdivision.

pub mod builder;
pub mod complex;
pub mod generators;
pub mod kernel;
pub mod obstruction;
pub mod random;
pub mod trees;
