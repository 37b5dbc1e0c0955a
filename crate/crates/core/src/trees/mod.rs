//! Dual trees of stacked polytopes, rooted subdivision plans and the
//! combinatorial decision procedure.

mod canon;
mod enumerate;
mod extract;
mod plan;
mod tree;

pub use canon::{rooted_canonical, unrooted_canonical};
pub use enumerate::all_trees;
pub use extract::{extract_dual_tree, stacked_boundary, StackStep, StackingOrder};
pub use plan::{plan_is_buildable, root_plan, Buildability, ChildEdge, RootedPlan};
pub use tree::{count_simple_vertices, decide_inscribable, max_degree, Decision, DualTree};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("tree has no nodes")]
    EmptyTree,
    #[error("expected {expected} edges for {nodes} nodes, got {got}")]
    EdgeCount { nodes: usize, expected: usize, got: usize },
    #[error("edge ({0}, {1}) is invalid")]
    BadEdge(usize, usize),
    #[error("graph is not connected")]
    NotConnected,
    #[error("node {0} is not in the tree")]
    UnknownNode(usize),
    #[error("operation needs at least two nodes")]
    TooSmall,
    #[error("node {0} has a parent twice or is its own ancestor")]
    NotATree(usize),
    #[error("node {0} has repeated face labels")]
    DuplicateLabel(usize),
    #[error("facet {0:?} does not have {1} distinct vertices")]
    BadFacet(Vec<usize>, usize),
    #[error("ridge {0:?} is in {1} facets instead of 2")]
    NotClosed(Vec<usize>, usize),
    #[error("no simple vertex left to peel with {0} vertices remaining")]
    NotStacked(usize),
    #[error("facet index {0} out of range")]
    FacetOutOfRange(usize),
}

pub type Result<T> = std::result::Result<T, TreeError>;
