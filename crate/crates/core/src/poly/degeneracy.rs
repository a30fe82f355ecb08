//! Degeneracy orderings and the two constructive robust colorings.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::RobustColoring;
use crate::error::{Error, Result};
use crate::graph::{norm, Edge, Graph};
use crate::selection::{selection_from_edge_set, SSelection};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegeneracyOrder {
    pub d: usize,
    /// Every vertex has at most `d` neighbours earlier in this order.
    pub order: Vec<usize>,
    /// A set inducing minimum degree `d` (empty when `d = 0`).
    pub core: Vec<usize>,
}

/// Repeated minimum-degree removal, reversed. Ties go to the lower id.
pub fn degeneracy_order(g: &Graph) -> DegeneracyOrder {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut gone = vec![false; n];
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = (0..n).map(|v| Reverse((deg[v], v))).collect();
    let mut removal = Vec::with_capacity(n);
    let mut d = 0;
    let mut core_start = 0;
    while let Some(Reverse((k, v))) = heap.pop() {
        if gone[v] || k != deg[v] {
            continue;
        }
        if k > d || (k == d && removal.is_empty()) {
            d = k;
            core_start = removal.len();
        }
        gone[v] = true;
        removal.push(v);
        for &w in g.neighbors(v) {
            if !gone[w] {
                deg[w] -= 1;
                heap.push(Reverse((deg[w], w)));
            }
        }
    }
    let mut core: Vec<usize> = if d == 0 { Vec::new() } else { removal[core_start..].to_vec() };
    core.sort_unstable();
    removal.reverse();
    DegeneracyOrder {
        d,
        order: removal,
        core,
    }
}

/// Greedy robust coloring along a degeneracy order with at most
/// `⌊d/2⌋ + 1` colors: each vertex joins the lowest class holding at most
/// one earlier neighbour and selects the edge to that neighbour.
pub fn degeneracy_greedy(g: &Graph) -> RobustColoring {
    let n = g.n();
    let order = degeneracy_order(g).order;
    let mut colors = vec![usize::MAX; n];
    let mut pairs = Vec::new();
    let mut k = 0;
    for &v in &order {
        let mut count = Vec::new();
        let mut first = Vec::new();
        for &w in g.neighbors(v) {
            let c = colors[w];
            if c == usize::MAX {
                continue;
            }
            if c >= count.len() {
                count.resize(c + 1, 0);
                first.resize(c + 1, usize::MAX);
            }
            count[c] += 1;
            first[c] = first[c].min(w);
        }
        let c = (0..).find(|&c| count.get(c).copied().unwrap_or(0) <= 1).unwrap();
        colors[v] = c;
        k = k.max(c + 1);
        if count.get(c).copied().unwrap_or(0) == 1 {
            pairs.push((v, first[c]));
        } else if let Some(&w) = g.neighbors(v).first() {
            pairs.push((v, w));
        }
    }
    let selection = SSelection::from_pairs(n, 1, &pairs).expect("one edge per vertex");
    RobustColoring { selection, colors, k }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxDegreePartition {
    pub coloring: RobustColoring,
    pub moves: usize,
}

/// Local search for a `k`-partition whose classes induce maximum degree at
/// most 2, which needs `Δ < 3k`. Each move raises the number of edges between
/// classes, so there are at most `|E|` moves.
pub fn max_degree_partition(g: &Graph, k: usize) -> Result<MaxDegreePartition> {
    let n = g.n();
    if g.max_degree() >= 3 * k {
        return Err(Error::InvalidArgument(format!(
            "max degree {} is not below 3k = {}",
            g.max_degree(),
            3 * k
        )));
    }
    let mut class: Vec<usize> = (0..n).map(|v| v % k).collect();
    let same = |class: &[usize], v: usize, c: usize| g.neighbors(v).iter().filter(|&&w| class[w] == c).count();
    let mut moves = 0;
    while let Some(v) = (0..n).find(|&v| same(&class, v, class[v]) >= 3) {
        let target = (0..k).find(|&c| same(&class, v, c) <= 2).expect("degree below 3k");
        class[v] = target;
        moves += 1;
        debug_assert!(moves <= g.m());
    }
    let inside: Vec<Edge> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| class[u] == class[v])
        .map(|(u, v)| norm(u, v))
        .collect();
    // classes of maximum degree two are paths and cycles
    let selection = selection_from_edge_set(&inside, g, 1)?;
    Ok(MaxDegreePartition {
        coloring: RobustColoring {
            selection,
            colors: class,
            k,
        },
        moves,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    #[test]
    fn orders() {
        let t = path(6);
        assert_eq!(degeneracy_order(&t).d, 1);
        let k4e = complete(4).remove_edges(&[(0, 1)]);
        assert_eq!(degeneracy_order(&k4e).d, 2);
        let d = degeneracy_order(&complete(5));
        assert_eq!((d.d, d.core.len()), (4, 5));
        assert_eq!(degeneracy_order(&Graph::empty(3)).d, 0);
    }

    #[test]
    fn greedy_is_valid() {
        let k4e = complete(4).remove_edges(&[(0, 1)]);
        let c = degeneracy_greedy(&k4e);
        c.validate(&k4e).unwrap();
        assert_eq!(c.k, 2);
        let mut rng = rng_from_seed(11);
        for _ in 0..50 {
            let g = erdos_renyi_with(30, 0.3, &mut rng);
            let c = degeneracy_greedy(&g);
            c.validate(&g).unwrap();
            assert!(c.k <= degeneracy_order(&g).d / 2 + 1);
        }
    }

    #[test]
    fn max_degree_examples() {
        let p = max_degree_partition(&complete(4), 2).unwrap();
        p.coloring.validate(&complete(4)).unwrap();
        let p = max_degree_partition(&cycle(7), 1).unwrap();
        assert_eq!(p.coloring.selection.removed_edges().len(), 7);
        let k7 = complete(7);
        let p = max_degree_partition(&k7, 3).unwrap();
        p.coloring.validate(&k7).unwrap();
        assert!(p.moves <= k7.m());
        assert!(max_degree_partition(&complete(4), 1).is_err());
    }
}
