//! Binary and unary graph constructions.

use super::{norm, Edge, Graph};
use crate::error::{Error, Result};

/// Complete join: disjoint copies of `g` and `h` plus every cross pair.
/// Vertices of `h` are shifted by `g.n()`.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let off = g.n();
    let mut edges: Vec<Edge> = g.edges().to_vec();
    edges.extend(h.edges().iter().map(|&(u, v)| (u + off, v + off)));
    for u in 0..g.n() {
        for v in 0..h.n() {
            edges.push((u, v + off));
        }
    }
    Graph::from_edges(off + h.n(), edges).expect("join edges are distinct")
}

/// Union of edge sets over a shared vertex set.
pub fn union_graphs(graphs: &[Graph]) -> Result<Graph> {
    let Some(first) = graphs.first() else {
        return Err(Error::InvalidArgument("union of no graphs".into()));
    };
    let n = first.n();
    if let Some(g) = graphs.iter().find(|g| g.n() != n) {
        return Err(Error::InvalidArgument(format!(
            "union needs equal vertex counts ({} vs {})",
            n,
            g.n()
        )));
    }
    Graph::from_edges_dedup(n, graphs.iter().flat_map(|g| g.edges().iter().copied()))
}

/// Side-by-side copies; the i-th graph's vertices come after those of the
/// previous graphs.
pub fn disjoint_union(graphs: &[Graph]) -> Graph {
    let mut off = 0;
    let mut edges = Vec::new();
    for g in graphs {
        edges.extend(g.edges().iter().map(|&(u, v)| (u + off, v + off)));
        off += g.n();
    }
    Graph::from_edges(off, edges).expect("disjoint copies have distinct edges")
}

/// Lexicographic product; vertex `(g, h)` gets id `g * |V(H)| + h`.
pub fn lex_product(g: &Graph, h: &Graph) -> Graph {
    let nh = h.n();
    let id = |a: usize, b: usize| a * nh + b;
    let mut edges = Vec::new();
    for &(a, b) in g.edges() {
        for x in 0..nh {
            for y in 0..nh {
                edges.push(norm(id(a, x), id(b, y)));
            }
        }
    }
    for a in 0..g.n() {
        for &(x, y) in h.edges() {
            edges.push((id(a, x), id(a, y)));
        }
    }
    Graph::from_edges(g.n() * nh, edges).expect("lexicographic product is simple")
}

/// Line graph; vertex `i` is `g.edges()[i]`.
pub fn line_graph(g: &Graph) -> Graph {
    let mut edges = Vec::new();
    for v in 0..g.n() {
        let inc: Vec<usize> = g
            .neighbors(v)
            .iter()
            .map(|&w| g.edge_index(v, w).unwrap())
            .collect();
        for i in 0..inc.len() {
            for j in i + 1..inc.len() {
                edges.push((inc[i], inc[j]));
            }
        }
    }
    // two edges share at most one endpoint in a simple graph
    Graph::from_edges(g.m(), edges).expect("line graph is simple")
}

/// The hardness blow-up `G⁺`: each vertex becomes an independent set of
/// size `n + 1`, each edge a complete bipartite graph between the two sets.
#[derive(Clone, Debug)]
pub struct BlowUp {
    pub graph: Graph,
    /// `sets[v]` lists the vertices substituted for `v`.
    pub sets: Vec<Vec<usize>>,
}

pub fn blow_up(g: &Graph) -> Result<BlowUp> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidArgument("blow-up needs at least one vertex".into()));
    }
    let t = n + 1;
    let sets: Vec<Vec<usize>> = (0..n).map(|v| (v * t..(v + 1) * t).collect()).collect();
    let mut edges = Vec::with_capacity(g.m() * t * t);
    for &(u, v) in g.edges() {
        for &a in &sets[u] {
            for &b in &sets[v] {
                edges.push((a, b));
            }
        }
    }
    let graph = Graph::from_edges(n * t, edges)?;
    Ok(BlowUp { graph, sets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::canonical::isomorphic;
    use crate::graph::generators::*;

    fn iso(a: &Graph, b: &Graph) -> bool {
        isomorphic(a, b).unwrap()
    }

    #[test]
    fn joins() {
        assert_eq!(join(&complete(1), &complete(1)), complete(2));
        assert_eq!(join(&complete(2), &complete(1)), complete(3));
        let k22 = join(&Graph::empty(2), &Graph::empty(2));
        assert!(iso(&k22, &complete_multipartite(&[2, 2]).unwrap()));
    }

    #[test]
    fn unions() {
        let g = cycle(5);
        assert_eq!(union_graphs(&[g.clone(), g.clone()]).unwrap(), g);
        let p3 = path(3);
        let e = Graph::from_edges(3, [(0, 2)]).unwrap();
        assert_eq!(union_graphs(&[p3, e]).unwrap(), complete(3));
        assert!(union_graphs(&[complete(2), complete(3)]).is_err());
    }

    #[test]
    fn disjoint_unions() {
        let g = disjoint_union(&[complete(3), complete(3)]);
        assert_eq!((g.n(), g.m(), g.components().len()), (6, 6, 2));
        assert_eq!(disjoint_union(&[complete(1), complete(1)]), Graph::empty(2));
        let g = disjoint_union(&[complete(2), cycle(4)]);
        assert_eq!((g.n(), g.m()), (6, 5));
    }

    #[test]
    fn lexicographic() {
        for t in 1..5 {
            let g = lex_product(&complete(2), &Graph::empty(t));
            assert!(iso(&g, &complete_multipartite(&[t, t]).unwrap()));
        }
        let h = cycle(4);
        assert_eq!(
            lex_product(&Graph::empty(3), &h),
            disjoint_union(&[h.clone(), h.clone(), h])
        );
        let g = lex_product(&cycle(5), &complete(3));
        assert_eq!(g.n(), 15);
        assert!((0..15).all(|v| g.degree(v) == 8));
    }

    #[test]
    fn line_graphs() {
        let l = line_graph(&complete(4));
        assert_eq!(l.m(), 12);
        let k6_minus_matching = complete(6).remove_edges(&[(0, 1), (2, 3), (4, 5)]);
        assert!(iso(&l, &k6_minus_matching));
        assert!(iso(&line_graph(&star(5)), &complete(5)));
        assert_eq!(line_graph(&path(3)), complete(2));
    }

    #[test]
    fn blow_ups() {
        let b = blow_up(&complete(2)).unwrap();
        assert!(iso(&b.graph, &complete_multipartite(&[3, 3]).unwrap()));
        let b = blow_up(&complete(3)).unwrap();
        assert_eq!((b.graph.n(), b.graph.m()), (12, 48));
        // complete multipartite iff the complement is a union of cliques
        let parts = b.graph.complement().components();
        assert_eq!(parts.len(), 3);
        assert!(parts.iter().all(|p| p.len() == 4 && b.graph.induced_edge_count(p) == 0));
        let b = blow_up(&path(3)).unwrap();
        assert_eq!((b.graph.n(), b.graph.m()), (12, 32));
        assert!(b.graph.is_bipartite());
        assert_eq!(b.sets[1], vec![4, 5, 6, 7]);
        assert!(blow_up(&Graph::empty(0)).is_err());
    }
}
