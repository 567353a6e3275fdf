//! Exact treewidth, separator and linear layout solvers for small graphs, their
//! profiles over connected subgraphs, tree-graded graphs and free-product Cayley balls.

mod bits;
pub mod blocks;
pub mod cayley;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod layout;
pub mod profile;
pub mod separation;
pub mod treegraded;
pub mod treewidth;

pub use error::{Error, Result};
pub use graph::{Format, Graph, VertexSet};
pub use profile::{Invariant, Profile, ProfileOptions, ProfileRow};
pub use treewidth::TreeDecomposition;
