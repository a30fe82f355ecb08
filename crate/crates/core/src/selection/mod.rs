//! Edge selections and removable edge sets.
//!
//! An s-selection assigns to every vertex at most `s` incident edges; the
//! union of the assigned edges is the removed set. A set `F` is the image of
//! some s-selection exactly when `(V, F)` has an orientation with out-degree
//! at most `s` (orient each edge away from the vertex that selected it). For
//! `s = 1` that is the same as every component of `(V, F)` having no more
//! edges than vertices. Solvers therefore search over edge sets and rebuild
//! the selection afterwards.

mod enumerate;
pub mod tracker;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{norm, Edge, Graph};

pub use enumerate::{enumerate_removable_sets, for_each_removable, EnumMode};
pub use tracker::{EdgeTracker, OrientationTracker, Tracker, UfTracker};

/// Every component has at most as many edges as vertices.
pub fn is_quasi_unicyclic(g: &Graph) -> bool {
    g.components()
        .iter()
        .all(|c| g.induced_edge_count(c) <= c.len())
}

/// An orientation of an edge set: arcs `(tail, head)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orientation {
    pub arcs: Vec<(usize, usize)>,
    pub max_outdegree: usize,
}

impl Orientation {
    pub fn from_arcs(n: usize, arcs: Vec<(usize, usize)>) -> Self {
        let mut out = vec![0usize; n];
        for &(t, _) in &arcs {
            out[t] += 1;
        }
        Orientation {
            max_outdegree: out.into_iter().max().unwrap_or(0),
            arcs,
        }
    }

    pub fn out_degrees(&self, n: usize) -> Vec<usize> {
        let mut out = vec![0usize; n];
        for &(t, _) in &self.arcs {
            out[t] += 1;
        }
        out
    }
}

/// Checks that `edges` are edges of `g` and returns them normalized and
/// sorted without repeats.
pub fn normalize_edge_set(g: &Graph, edges: &[Edge]) -> Result<Vec<Edge>> {
    let mut set = BTreeSet::new();
    for &(u, v) in edges {
        if !g.has_edge(u, v) {
            return Err(Error::InvalidSelection(format!("{u}-{v} is not an edge")));
        }
        set.insert(norm(u, v));
    }
    Ok(set.into_iter().collect())
}

/// Orientation of `F` with out-degree at most `s`, if one exists.
pub fn is_removable(f: &[Edge], g: &Graph, s: usize) -> Result<Option<Orientation>> {
    let f = normalize_edge_set(g, f)?;
    let mut t = OrientationTracker::new(g.n(), s);
    for &(u, v) in &f {
        if !t.try_add(u, v) {
            return Ok(None);
        }
    }
    Ok(Some(t.orientation()))
}

/// A per-vertex assignment of incident edges, `assignment[v]` listing the
/// far endpoints of the edges chosen by `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SelectionRepr", into = "SelectionRepr")]
pub struct SSelection {
    s: usize,
    assignment: Vec<Vec<usize>>,
}

/// Serialized as the budget plus a list of `(vertex, endpoint)` pairs.
#[derive(Serialize, Deserialize)]
struct SelectionRepr {
    s: usize,
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl TryFrom<SelectionRepr> for SSelection {
    type Error = Error;
    fn try_from(r: SelectionRepr) -> Result<Self> {
        SSelection::from_pairs(r.n, r.s, &r.pairs)
    }
}

impl From<SSelection> for SelectionRepr {
    fn from(f: SSelection) -> Self {
        SelectionRepr {
            s: f.s,
            n: f.assignment.len(),
            pairs: f.pairs(),
        }
    }
}

impl SSelection {
    pub fn empty(n: usize, s: usize) -> Self {
        SSelection {
            s,
            assignment: vec![Vec::new(); n],
        }
    }

    /// Builds a selection from `(vertex, endpoint)` pairs, checking only the
    /// budget; incidence is checked against a graph by [`SSelection::validate`].
    pub fn from_pairs(n: usize, s: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut assignment = vec![Vec::new(); n];
        for &(v, w) in pairs {
            if v >= n || w >= n || v == w {
                return Err(Error::InvalidSelection(format!("bad pair ({v}, {w})")));
            }
            if assignment[v].contains(&w) {
                return Err(Error::InvalidSelection(format!("pair ({v}, {w}) repeated")));
            }
            assignment[v].push(w);
        }
        for (v, a) in assignment.iter_mut().enumerate() {
            if a.len() > s {
                return Err(Error::InvalidSelection(format!(
                    "vertex {v} selects {} edges, budget {s}",
                    a.len()
                )));
            }
            a.sort_unstable();
        }
        Ok(SSelection { s, assignment })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn selected(&self, v: usize) -> &[usize] {
        &self.assignment[v]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.assignment
            .iter()
            .enumerate()
            .flat_map(|(v, a)| a.iter().map(move |&w| (v, w)))
            .collect()
    }

    /// The removed set `f(V)`, normalized and sorted.
    pub fn removed_edges(&self) -> Vec<Edge> {
        let set: BTreeSet<Edge> = self.pairs().into_iter().map(|(v, w)| norm(v, w)).collect();
        set.into_iter().collect()
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.n() != g.n() {
            return Err(Error::InvalidSelection(format!(
                "selection on {} vertices, graph has {}",
                self.n(),
                g.n()
            )));
        }
        for (v, w) in self.pairs() {
            if !g.has_edge(v, w) {
                return Err(Error::InvalidSelection(format!(
                    "vertex {v} selects non-edge {v}-{w}"
                )));
            }
        }
        Ok(())
    }
}

/// Injective selection whose image is exactly `F`.
pub fn selection_from_edge_set(f: &[Edge], g: &Graph, s: usize) -> Result<SSelection> {
    let o = is_removable(f, g, s)?.ok_or(Error::NotRemovable { s })?;
    SSelection::from_pairs(g.n(), s, &o.arcs)
}

/// `G` together with a selection and the graph left after deleting it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemovedGraph {
    pub base: Graph,
    pub selection: SSelection,
    pub removed_edges: Vec<Edge>,
    pub result: Graph,
}

pub fn apply_selection(g: &Graph, f: &SSelection) -> Result<RemovedGraph> {
    f.validate(g)?;
    let removed_edges = f.removed_edges();
    let result = g.remove_edges(&removed_edges);
    Ok(RemovedGraph {
        base: g.clone(),
        selection: f.clone(),
        removed_edges,
        result,
    })
}

/// The digraph `D(G, f)` of a 1-selection: arc `(v, w)` whenever `v` selects
/// `vw`. Both `(v, w)` and `(w, v)` appear when the endpoints select the same
/// edge.
pub fn selection_digraph(g: &Graph, f: &SSelection) -> Result<Vec<(usize, usize)>> {
    if f.s() != 1 {
        return Err(Error::InvalidArgument(format!(
            "selection digraph needs s = 1, got s = {}",
            f.s()
        )));
    }
    f.validate(g)?;
    Ok(f.pairs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;
    use crate::graph::ops::disjoint_union;

    #[test]
    fn quasi_unicyclic_examples() {
        assert!(is_quasi_unicyclic(&cycle(4)));
        assert!(!is_quasi_unicyclic(&complete(4)));
        assert!(is_quasi_unicyclic(&disjoint_union(&[path(3), cycle(3)])));
    }

    #[test]
    fn removable_examples() {
        let c5 = cycle(5);
        assert!(is_removable(c5.edges(), &c5, 1).unwrap().is_some());
        let k4 = complete(4);
        assert!(is_removable(k4.edges(), &k4, 1).unwrap().is_none());
        let o = is_removable(k4.edges(), &k4, 2).unwrap().unwrap();
        assert!(o.max_outdegree <= 2);
        assert_eq!(o.arcs.len(), 6);
        assert!(is_removable(&[(0, 2)], &path(3), 1).is_err());
    }

    #[test]
    fn selections_from_sets() {
        let k2 = complete(2);
        let f = selection_from_edge_set(k2.edges(), &k2, 1).unwrap();
        assert_eq!(f.pairs().len(), 1);
        let k3 = complete(3);
        let f = selection_from_edge_set(k3.edges(), &k3, 1).unwrap();
        assert!((0..3).all(|v| f.selected(v).len() == 1));
        assert_eq!(f.removed_edges(), k3.edges());
        let k4 = complete(4);
        assert_eq!(
            selection_from_edge_set(k4.edges(), &k4, 1),
            Err(Error::NotRemovable { s: 1 })
        );
    }

    #[test]
    fn applying_selections() {
        let k3 = complete(3);
        let f = SSelection::from_pairs(3, 1, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(apply_selection(&k3, &f).unwrap().result, Graph::empty(3));
        let k4 = complete(4);
        let c4 = SSelection::from_pairs(4, 1, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let r = apply_selection(&k4, &c4).unwrap();
        assert_eq!(r.result.edges(), &[(0, 2), (1, 3)]);
        let none = SSelection::empty(4, 1);
        assert_eq!(apply_selection(&k4, &none).unwrap().result, k4);
        let bad = SSelection::from_pairs(3, 1, &[(0, 2)]).unwrap();
        assert!(apply_selection(&path(3), &bad).is_err());
        assert!(SSelection::from_pairs(3, 1, &[(0, 1), (0, 2)]).is_err());
    }

    #[test]
    fn digraph_allows_two_cycles() {
        let k2 = complete(2);
        let f = SSelection::from_pairs(2, 1, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(selection_digraph(&k2, &f).unwrap(), vec![(0, 1), (1, 0)]);
        let r = apply_selection(&k2, &f).unwrap();
        assert_eq!(r.removed_edges.len(), 1);
        let f2 = SSelection::empty(2, 2);
        assert!(selection_digraph(&k2, &f2).is_err());
        assert!(selection_digraph(&k2, &SSelection::empty(2, 1)).unwrap().is_empty());
    }

    #[test]
    fn selection_json_is_pair_list() {
        let f = SSelection::from_pairs(3, 1, &[(0, 1), (2, 1)]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"s":1,"n":3,"pairs":[[0,1],[2,1]]}"#);
        let back: SSelection = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}
