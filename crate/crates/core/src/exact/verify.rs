//! Standalone certificate checks.
//!
//! A check confirms that the certificate is internally valid for the graph
//! and that it attains the reported value. For `ω_s` and `θ_s` the value of
//! the classical parameter on the removed graph is recomputed, since a single
//! clique or cover only bounds it from one side.

use super::classical::{clique_cover, max_clique};
use super::{Certificate, Parameter, ParameterResult};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::selection::{is_quasi_unicyclic, SSelection, UfTracker, EdgeTracker};

fn reject(msg: impl Into<String>) -> Error {
    Error::Certificate(msg.into())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(reject(msg()))
    }
}

/// Checks the selection against the graph and budget, returning `G - F`.
fn removed_graph(g: &Graph, f: &SSelection, s: usize) -> Result<(Graph, Vec<Edge>)> {
    ensure(f.s() == s, || format!("selection budget {} but result says s = {s}", f.s()))?;
    f.validate(g).map_err(|e| reject(e.to_string()))?;
    let removed = f.removed_edges();
    Ok((g.remove_edges(&removed), removed))
}

fn distinct_in_range(vs: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    for &v in vs {
        ensure(v < n && !seen[v], || format!("vertex {v} repeated or out of range"))?;
        seen[v] = true;
    }
    Ok(())
}

fn is_clique(h: &Graph, vs: &[usize]) -> bool {
    vs.iter()
        .enumerate()
        .all(|(i, &a)| vs[i + 1..].iter().all(|&b| h.has_edge(a, b)))
}

fn expect_param(r: &ParameterResult, allowed: &[Parameter]) -> Result<()> {
    ensure(allowed.contains(&r.parameter), || {
        format!("certificate kind does not fit parameter {}", r.parameter)
    })
}

pub fn verify(g: &Graph, r: &ParameterResult) -> Result<()> {
    let n = g.n();
    let k = r.value;
    match &r.certificate {
        Certificate::Coloring { selection, colors } => {
            expect_param(r, &[Parameter::Chi, Parameter::ChiS])?;
            let (h, _) = removed_graph(g, selection, r.s)?;
            ensure(colors.len() == n, || "coloring length differs from n".into())?;
            ensure(colors.iter().all(|&c| c < k), || format!("color outside 0..{k}"))?;
            let clash = h.edges().iter().find(|&&(u, v)| colors[u] == colors[v]);
            ensure(clash.is_none(), || format!("edge {:?} is monochromatic", clash.unwrap()))
        }
        Certificate::Clique { selection, clique } => {
            expect_param(r, &[Parameter::Omega, Parameter::OmegaS])?;
            let (h, _) = removed_graph(g, selection, r.s)?;
            distinct_in_range(clique, n)?;
            ensure(clique.len() == k, || format!("clique has {} vertices", clique.len()))?;
            ensure(is_clique(&h, clique), || "vertex set is not a clique".into())?;
            let omega = max_clique(&h).0.len();
            ensure(omega == k, || format!("removed graph has clique number {omega}"))
        }
        Certificate::IndependentSet { selection, set } => {
            expect_param(r, &[Parameter::Alpha, Parameter::AlphaS])?;
            let (h, _) = removed_graph(g, selection, r.s)?;
            distinct_in_range(set, n)?;
            ensure(set.len() == k, || format!("set has {} vertices", set.len()))?;
            ensure(h.induced_edge_count(set) == 0, || "set is not independent".into())
        }
        Certificate::CliqueCover { selection, classes } => {
            expect_param(r, &[Parameter::Theta, Parameter::ThetaS])?;
            let (h, _) = removed_graph(g, selection, r.s)?;
            let all: Vec<usize> = classes.iter().flatten().copied().collect();
            distinct_in_range(&all, n)?;
            ensure(all.len() == n, || "classes do not cover every vertex".into())?;
            ensure(classes.len() == k, || format!("{} classes", classes.len()))?;
            ensure(classes.iter().all(|c| !c.is_empty() && is_clique(&h, c)), || {
                "a class is empty or not a clique".into()
            })?;
            let theta = clique_cover(&h).0.len();
            ensure(theta == k, || format!("removed graph has clique cover number {theta}"))
        }
        Certificate::EdgeColoring { selection, colors } => {
            expect_param(r, &[Parameter::ChiPrime, Parameter::ChiPrimeS])?;
            let (_, removed) = removed_graph(g, selection, r.s)?;
            ensure(colors.len() == g.m(), || "one color per edge expected".into())?;
            let mut at = vec![Vec::new(); n];
            for (i, &(u, v)) in g.edges().iter().enumerate() {
                let gone = removed.binary_search(&(u, v)).is_ok();
                match colors[i] {
                    None => ensure(gone, || format!("edge {u}-{v} uncolored but kept"))?,
                    Some(c) => {
                        ensure(!gone, || format!("edge {u}-{v} colored but removed"))?;
                        ensure(c < k, || format!("color {c} outside 0..{k}"))?;
                        ensure(!at[u].contains(&c) && !at[v].contains(&c), || {
                            format!("color {c} repeats at edge {u}-{v}")
                        })?;
                        at[u].push(c);
                        at[v].push(c);
                    }
                }
            }
            Ok(())
        }
        Certificate::ForestPartition { classes } => {
            expect_param(r, &[Parameter::Arboricity])?;
            ensure(classes.len() == n, || "one class per vertex expected".into())?;
            ensure(classes.iter().all(|&c| c < k), || format!("class outside 0..{k}"))?;
            let mut t = UfTracker::forest(n);
            for &(u, v) in g.edges() {
                if classes[u] == classes[v] {
                    ensure(t.try_add(u, v), || format!("class of {u} contains a cycle"))?;
                }
            }
            Ok(())
        }
        Certificate::Ordering { order, core } => {
            expect_param(r, &[Parameter::Degeneracy])?;
            distinct_in_range(order, n)?;
            ensure(order.len() == n, || "ordering must list every vertex".into())?;
            let mut pos = vec![0; n];
            for (i, &v) in order.iter().enumerate() {
                pos[v] = i;
            }
            for v in 0..n {
                let back = g.neighbors(v).iter().filter(|&&w| pos[w] < pos[v]).count();
                ensure(back <= k, || format!("vertex {v} has {back} earlier neighbours"))?;
            }
            distinct_in_range(core, n)?;
            if k > 0 {
                let sub = g.induced_subgraph(core);
                ensure(!core.is_empty() && sub.min_degree() >= k, || {
                    "core does not have the claimed minimum degree".into()
                })?;
            }
            Ok(())
        }
        Certificate::InducingSet { set } => {
            expect_param(r, &[Parameter::Iota])?;
            distinct_in_range(set, n)?;
            ensure(set.len() == k, || format!("set has {} vertices", set.len()))?;
            ensure(is_quasi_unicyclic(&g.induced_subgraph(set)), || {
                "set does not induce a quasi-unicyclic graph".into()
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{classical_parameter, robust_parameter, Caps, Robust, Tier};
    use crate::graph::generators::*;

    #[test]
    fn solver_certificates_verify() {
        let g = complete_multipartite(&[2, 3]).unwrap();
        for w in Robust::ALL {
            for s in 0..=2 {
                let r = robust_parameter(&g, w, s, Tier::Solver, &Caps::default()).unwrap();
                verify(&g, &r).unwrap();
            }
        }
        for p in [
            Parameter::Chi,
            Parameter::Omega,
            Parameter::Alpha,
            Parameter::Theta,
            Parameter::ChiPrime,
            Parameter::Arboricity,
            Parameter::Degeneracy,
        ] {
            let r = classical_parameter(&g, p, &Caps::default()).unwrap();
            verify(&g, &r).unwrap();
        }
    }

    #[test]
    fn tampered_values_are_rejected() {
        let g = complete(5);
        let mut r = robust_parameter(&g, Robust::Chi, 1, Tier::Solver, &Caps::default()).unwrap();
        r.value -= 1;
        assert!(verify(&g, &r).is_err());
        let mut r = robust_parameter(&g, Robust::Omega, 1, Tier::Solver, &Caps::default()).unwrap();
        r.value += 1;
        assert!(verify(&g, &r).is_err());
        let mut r = robust_parameter(&g, Robust::Theta, 1, Tier::Solver, &Caps::default()).unwrap();
        r.s = 0;
        assert!(verify(&g, &r).is_err());
    }
}
