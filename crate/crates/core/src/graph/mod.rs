//! Simple undirected graphs on dense vertex identifiers `0..n`.
//!
//! A [`Graph`] is immutable once built: the edge list is kept sorted with
//! `u < v` for every pair, and adjacency lists are sorted and derived from the
//! edge list. Every solver in the crate indexes arrays by vertex id, so labels
//! from input files only survive in the mapping returned by [`io`].

pub mod generators;
pub mod io;
pub mod ops;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Edge = (usize, usize);

/// Normalizes an unordered pair so that the smaller endpoint comes first.
#[inline]
pub fn norm(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<Edge>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;
    fn try_from(r: GraphRepr) -> Result<Self> {
        Graph::from_edges(r.n, r.edges)
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            n: g.n,
            edges: g.edges,
        }
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph, rejecting loops, out-of-range endpoints and repeated pairs.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut set = BTreeSet::new();
        for (i, (u, v)) in edges.into_iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge {u}-{v} out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::Loop { line: i + 1, v: u });
            }
            if !set.insert(norm(u, v)) {
                return Err(Error::DuplicateEdge { line: i + 1, u, v });
            }
        }
        Ok(Self::from_sorted_set(n, set))
    }

    /// Builds a graph from pairs, silently collapsing repeats. Loops are still
    /// rejected.
    pub fn from_edges_dedup<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge {u}-{v} out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::Loop { line: 0, v: u });
            }
            set.insert(norm(u, v));
        }
        Ok(Self::from_sorted_set(n, set))
    }

    fn from_sorted_set(n: usize, set: BTreeSet<Edge>) -> Self {
        let edges: Vec<Edge> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in increasing lexicographic order, each with `u < v`.
    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Position of `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&norm(u, v)).ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn is_edgeless(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.iter().any(Vec::is_empty)
    }

    /// Number of edges of the subgraph induced by `vertices`.
    pub fn induced_edge_count(&self, vertices: &[usize]) -> usize {
        let mut inside = vec![false; self.n];
        for &v in vertices {
            inside[v] = true;
        }
        self.edges
            .iter()
            .filter(|&&(u, v)| inside[u] && inside[v])
            .count()
    }

    /// Induced subgraph, relabelled in the order given by `vertices`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| norm(pos[u], pos[v]));
        Graph::from_sorted_set(vertices.len(), edges.collect())
    }

    /// The graph with vertex `x` deleted; remaining vertices keep their order.
    pub fn remove_vertex(&self, x: usize) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&v| v != x).collect();
        self.induced_subgraph(&keep)
    }

    /// Spanning subgraph without the listed edges. Pairs that are not edges
    /// are ignored.
    pub fn remove_edges(&self, removed: &[Edge]) -> Graph {
        let gone: BTreeSet<Edge> = removed.iter().map(|&(u, v)| norm(u, v)).collect();
        let kept = self.edges.iter().copied().filter(|e| !gone.contains(e));
        Graph::from_sorted_set(self.n, kept.collect())
    }

    /// Spanning subgraph with the given edges added (duplicates collapse).
    pub fn add_edges(&self, added: &[Edge]) -> Result<Graph> {
        Graph::from_edges_dedup(self.n, self.edges.iter().copied().chain(added.iter().copied()))
    }

    pub fn complement(&self) -> Graph {
        let mut set = BTreeSet::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    set.insert((u, v));
                }
            }
        }
        Graph::from_sorted_set(self.n, set)
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for &w in &self.adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Two-coloring of the vertices if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                let sv = side[v].unwrap();
                for &w in &self.adj[v] {
                    match side[w] {
                        None => {
                            side[w] = Some(!sv);
                            stack.push(w);
                        }
                        Some(sw) if sw == sv => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Summary of the standard structural quantities.
    pub fn structure(&self) -> Structure {
        Structure {
            n: self.n,
            m: self.m(),
            max_degree: self.max_degree(),
            min_degree: self.min_degree(),
            components: self.components().len(),
            is_bipartite: self.is_bipartite(),
            is_connected: self.is_connected(),
        }
    }

    /// Adjacency rows as bit masks; only valid for `n <= 64`.
    pub(crate) fn bit_rows(&self) -> Vec<u64> {
        assert!(self.n <= 64, "bit rows need n <= 64");
        self.adj
            .iter()
            .map(|a| a.iter().fold(0u64, |m, &w| m | (1u64 << w)))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Structure {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub min_degree: usize,
    pub components: usize,
    pub is_bipartite: bool,
    pub is_connected: bool,
}

/// A partition of `0..n` into non-empty, pairwise disjoint classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexPartition {
    classes: Vec<Vec<usize>>,
}

impl VertexPartition {
    pub fn new(n: usize, classes: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for class in &classes {
            if class.is_empty() {
                return Err(Error::InvalidArgument("empty partition class".into()));
            }
            for &v in class {
                if v >= n || seen[v] {
                    return Err(Error::InvalidArgument(format!(
                        "vertex {v} repeated or out of range in partition"
                    )));
                }
                seen[v] = true;
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidArgument(format!("vertex {v} not covered")));
        }
        let mut classes = classes;
        for c in &mut classes {
            c.sort_unstable();
        }
        Ok(VertexPartition { classes })
    }

    /// Groups vertices by label; labels need not be contiguous.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut ids: Vec<usize> = labels.to_vec();
        ids.sort_unstable();
        ids.dedup();
        let mut classes = vec![Vec::new(); ids.len()];
        for (v, l) in labels.iter().enumerate() {
            let i = ids.binary_search(l).unwrap();
            classes[i].push(v);
        }
        VertexPartition { classes }
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Class index of every vertex.
    pub fn labels(&self, n: usize) -> Vec<usize> {
        let mut out = vec![0; n];
        for (i, c) in self.classes.iter().enumerate() {
            for &v in c {
                out[v] = i;
            }
        }
        out
    }
}
