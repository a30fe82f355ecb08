//! Robust graph parameters: graphs, edge selections, exact and polynomial
//! algorithms, and a tree-decomposition dynamic program.

pub mod bounds;
pub mod error;
pub mod exact;
pub mod graph;
pub mod poly;
pub mod selection;
pub mod treewidth;

pub use error::{Error, Result};
pub use graph::{Edge, Graph};
