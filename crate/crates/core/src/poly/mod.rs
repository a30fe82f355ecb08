//! Polynomial-time constructions: minimum out-degree orientations and the
//! matching quasi-unicyclic decomposition, the degeneracy and max-degree
//! robust colorings, and the edge-coloring reduction.

mod degeneracy;
mod edge_coloring;
mod orientation;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::selection::SSelection;

pub use degeneracy::{degeneracy_greedy, degeneracy_order, max_degree_partition, DegeneracyOrder, MaxDegreePartition};
pub use edge_coloring::{edge_color_reduction, misra_gries, EdgeColorReduction};
pub use orientation::{
    min_outdegree_orientation, quasi_unicyclic_edge_decomposition,
    Decomposition, MinOrientation,
};

/// A 1-selection together with a coloring that is proper once the selected
/// edges are deleted. Colors are `0..k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RobustColoring {
    pub selection: SSelection,
    pub colors: Vec<usize>,
    pub k: usize,
}

impl RobustColoring {
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.selection.s() != 1 {
            return Err(Error::InvalidSelection("robust coloring needs s = 1".into()));
        }
        self.selection.validate(g)?;
        if self.colors.len() != g.n() || self.colors.iter().any(|&c| c >= self.k) {
            return Err(Error::Certificate("coloring does not fit 0..k".into()));
        }
        let removed = self.selection.removed_edges();
        for &(u, v) in g.edges() {
            if self.colors[u] == self.colors[v] && removed.binary_search(&(u, v)).is_err() {
                return Err(Error::Certificate(format!("edge {u}-{v} is monochromatic")));
            }
        }
        Ok(())
    }
}
