//! Deliberately naive reference routines used to cross-check the solvers.
//!
//! Nothing here shares code with the branch-and-bound solvers: values come
//! from subset enumeration and plain backtracking, and robust values from
//! evaluating every removable set.

use std::ops::ControlFlow;

use super::Robust;
use crate::error::Result;
use crate::graph::{Edge, Graph};
use crate::selection::{for_each_removable, is_quasi_unicyclic, EnumMode};

fn colorable(g: &Graph, k: usize) -> bool {
    fn rec(g: &Graph, k: usize, v: usize, col: &mut Vec<usize>) -> bool {
        if v == g.n() {
            return true;
        }
        for c in 0..k {
            if g.neighbors(v).iter().all(|&w| w > v || col[w] != c) {
                col[v] = c;
                if rec(g, k, v + 1, col) {
                    return true;
                }
            }
        }
        false
    }
    rec(g, k, 0, &mut vec![0; g.n()])
}

pub fn chi(g: &Graph) -> usize {
    (0..=g.n()).find(|&k| colorable(g, k)).unwrap()
}

fn is_clique(g: &Graph, mask: u32) -> bool {
    let vs: Vec<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
    vs.iter()
        .enumerate()
        .all(|(i, &a)| vs[i + 1..].iter().all(|&b| g.has_edge(a, b)))
}

/// Maximum clique by checking every vertex subset; `n <= 20`.
pub fn omega(g: &Graph) -> usize {
    assert!(g.n() <= 20);
    (0u32..1 << g.n())
        .filter(|&m| is_clique(g, m))
        .map(u32::count_ones)
        .max()
        .unwrap_or(0) as usize
}

pub fn alpha(g: &Graph) -> usize {
    omega(&g.complement())
}

pub fn theta(g: &Graph) -> usize {
    chi(&g.complement())
}

fn edge_colorable(g: &Graph, k: usize) -> bool {
    let edges = g.edges();
    fn rec(edges: &[Edge], k: usize, i: usize, col: &mut Vec<usize>) -> bool {
        if i == edges.len() {
            return true;
        }
        let (u, v) = edges[i];
        // colors are interchangeable, so never skip past the next unused one
        let fresh = col[..i].iter().max().map_or(0, |&c| c + 1);
        for c in 0..k.min(fresh + 1) {
            let clash = (0..i).any(|j| {
                let (a, b) = edges[j];
                col[j] == c && (a == u || a == v || b == u || b == v)
            });
            if !clash {
                col[i] = c;
                if rec(edges, k, i + 1, col) {
                    return true;
                }
            }
        }
        false
    }
    rec(edges, k, 0, &mut vec![0; edges.len()])
}

pub fn chi_prime(g: &Graph) -> usize {
    (g.max_degree()..=g.m() + 1).find(|&k| edge_colorable(g, k)).unwrap()
}

/// Largest vertex set inducing a quasi-unicyclic subgraph, by enumeration.
pub fn iota(g: &Graph) -> usize {
    assert!(g.n() <= 20);
    (0u32..1 << g.n())
        .filter(|&m| {
            let vs: Vec<usize> = (0..g.n()).filter(|&v| m >> v & 1 == 1).collect();
            is_quasi_unicyclic(&g.induced_subgraph(&vs))
        })
        .map(u32::count_ones)
        .max()
        .unwrap_or(0) as usize
}

pub fn classical(g: &Graph, which: Robust) -> usize {
    match which {
        Robust::Chi => chi(g),
        Robust::Omega => omega(g),
        Robust::Alpha => alpha(g),
        Robust::Theta => theta(g),
        Robust::ChiPrime => chi_prime(g),
    }
}

/// Hakimi's condition checked over every vertex subset: `e_F(U) <= s|U|`.
pub fn removable_by_subsets(n: usize, f: &[Edge], s: usize) -> bool {
    assert!(n <= 20);
    (1u32..1 << n).all(|m| {
        let inside = f
            .iter()
            .filter(|&&(u, v)| m >> u & 1 == 1 && m >> v & 1 == 1)
            .count();
        inside <= s * m.count_ones() as usize
    })
}

/// `max_U ceil(e(G[U]) / |U|)` over non-empty vertex subsets.
pub fn max_subset_density(g: &Graph) -> usize {
    assert!(g.n() <= 20);
    (1u32..1 << g.n())
        .map(|m| {
            let vs: Vec<usize> = (0..g.n()).filter(|&v| m >> v & 1 == 1).collect();
            g.induced_edge_count(&vs).div_ceil(vs.len())
        })
        .max()
        .unwrap_or(0)
}

/// Best value and a removed set attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleValue {
    pub value: usize,
    pub removed: Vec<Edge>,
}

/// Every robust parameter at budget `s`, from one pass over all removable
/// sets. Results follow the order of `which`.
pub fn robust_all(
    g: &Graph,
    s: usize,
    which: &[Robust],
    edge_cap: usize,
) -> Result<Vec<OracleValue>> {
    let mut best: Vec<Option<OracleValue>> = vec![None; which.len()];
    for_each_removable(g, s, EnumMode::All, edge_cap, |f| {
        let h = g.remove_edges(f);
        for (slot, &p) in best.iter_mut().zip(which) {
            let v = classical(&h, p);
            let better = match slot {
                None => true,
                Some(b) if p.minimizes() => v < b.value,
                Some(b) => v > b.value,
            };
            if better {
                *slot = Some(OracleValue {
                    value: v,
                    removed: f.to_vec(),
                });
            }
        }
        ControlFlow::Continue(())
    })?;
    Ok(best.into_iter().map(Option::unwrap).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    #[test]
    fn naive_values() {
        assert_eq!(chi(&cycle(5)), 3);
        assert_eq!(omega(&complete(4)), 4);
        assert_eq!(alpha(&cycle(5)), 2);
        assert_eq!(theta(&cycle(5)), 3);
        assert_eq!(chi_prime(&complete(4)), 3);
        assert_eq!(iota(&complete(4)), 3);
        assert_eq!(iota(&cycle(5)), 5);
        assert_eq!(max_subset_density(&complete(4)), 2);
    }

    #[test]
    fn robust_by_enumeration() {
        let k4 = complete(4);
        let r = robust_all(&k4, 1, &Robust::ALL, 18).unwrap();
        let vals: Vec<usize> = r.iter().map(|x| x.value).collect();
        // chi, omega, alpha, theta, chi'
        assert_eq!(vals, vec![2, 2, 3, 3, 1]);
    }

    #[test]
    fn hakimi_condition() {
        let k4 = complete(4);
        assert!(!removable_by_subsets(4, k4.edges(), 1));
        assert!(removable_by_subsets(4, k4.edges(), 2));
    }
}
