//! Exhaustive search for graphs with `θ₁ = θ` among small graphs.
//!
//! Isomorphism classes of order `n` are generated from those of order
//! `n - 1` by adding one vertex with every possible neighbourhood and keeping
//! one representative per canonical label. Counts are checked against the
//! known numbers of graphs (1, 2, 4, 11, 34, 156, 1044).

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::canonical::{canonical_form, canonical_graph};
use super::filters::{exactness_filters, Conclusion, FilterReport};
use super::{classical_parameter, robust_parameter, Caps, Parameter, ParameterResult, Robust, Tier};
use crate::error::{cap_check, Error, Result};
use crate::graph::Graph;

/// Numbers of unlabeled graphs on 0..=7 vertices.
pub const GRAPH_COUNTS: [usize; 8] = [1, 1, 2, 4, 11, 34, 156, 1044];

/// One representative per isomorphism class on exactly `n` vertices, for
/// every `n` in `1..=n_max`, in canonical-label order.
pub fn graphs_up_to(n_max: usize) -> Result<Vec<Vec<Graph>>> {
    cap_check("explorer order", n_max, 7)?;
    let mut out: Vec<Vec<Graph>> = Vec::new();
    let mut prev = vec![Graph::empty(1)];
    if n_max >= 1 {
        out.push(prev.clone());
    }
    for n in 2..=n_max {
        let mut seen: BTreeMap<String, Graph> = BTreeMap::new();
        for g in &prev {
            for mask in 0u32..1 << (n - 1) {
                let mut edges = g.edges().to_vec();
                edges.extend((0..n - 1).filter(|&v| mask >> v & 1 == 1).map(|v| (v, n - 1)));
                let h = Graph::from_edges(n, edges)?;
                let label = canonical_form(&h)?;
                if let std::collections::btree_map::Entry::Vacant(slot) = seen.entry(label) {
                    slot.insert(canonical_graph(&h)?);
                }
            }
        }
        prev = seen.into_values().collect();
        let expected = GRAPH_COUNTS.get(n).copied();
        if expected != Some(prev.len()) {
            return Err(Error::InvalidArgument(format!(
                "generated {} graphs of order {n}, expected {expected:?}",
                prev.len()
            )));
        }
        out.push(prev.clone());
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderStats {
    pub n: usize,
    pub graphs: usize,
    pub non_edgeless: usize,
    /// Graphs skipped because a filter proved them non-exact.
    pub skipped_by_filters: usize,
    /// Graphs whose `θ₁` was computed.
    pub computed: usize,
    pub confirmed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub graph: Graph,
    pub theta: ParameterResult,
    pub theta1: ParameterResult,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExplorationReport {
    pub n_max: usize,
    pub use_filters: bool,
    pub per_order: Vec<OrderStats>,
    pub counterexamples: Vec<Counterexample>,
    /// Number of graphs failing each filter.
    pub filter_failures: BTreeMap<String, usize>,
    /// Graphs with `θ ≤ 3` that pass every other applicable filter.
    pub small_theta_passing_other_filters: usize,
}

enum Outcome {
    Skipped(FilterReport),
    Checked(Option<FilterReport>, Box<Counterexample>, bool),
}

pub fn explore_exact_conjecture(
    n_max: usize,
    use_filters: bool,
    caps: &Caps,
) -> Result<ExplorationReport> {
    explore_with_progress(n_max, use_filters, caps, |_| {})
}

/// As [`explore_exact_conjecture`], calling `progress` after each order.
pub fn explore_with_progress(
    n_max: usize,
    use_filters: bool,
    caps: &Caps,
    mut progress: impl FnMut(&OrderStats),
) -> Result<ExplorationReport> {
    cap_check("explorer order", n_max, caps.explore.min(7))?;
    let orders = graphs_up_to(n_max)?;
    let mut report = ExplorationReport {
        n_max,
        use_filters,
        per_order: Vec::new(),
        counterexamples: Vec::new(),
        filter_failures: BTreeMap::new(),
        small_theta_passing_other_filters: 0,
    };
    for (i, graphs) in orders.iter().enumerate() {
        let n = i + 1;
        // connectivity holds for a minimum counterexample, so it only applies
        // while no smaller counterexample is known
        let minimal = report.counterexamples.is_empty();
        let outcomes: Vec<Result<Outcome>> = graphs
            .par_iter()
            .filter(|g| !g.is_edgeless())
            .map(|g| evaluate(g, use_filters, minimal, caps))
            .collect();
        let mut stats = OrderStats {
            n,
            graphs: graphs.len(),
            ..OrderStats::default()
        };
        for o in outcomes {
            stats.non_edgeless += 1;
            let filters = match o? {
                Outcome::Skipped(f) => {
                    stats.skipped_by_filters += 1;
                    Some(f)
                }
                Outcome::Checked(f, cx, exact) => {
                    stats.computed += 1;
                    if exact {
                        report.counterexamples.push(*cx);
                    } else {
                        stats.confirmed += 1;
                    }
                    f
                }
            };
            if let Some(f) = filters {
                for (name, v) in f.verdicts() {
                    if v.failed() {
                        *report.filter_failures.entry(name.to_string()).or_default() += 1;
                    }
                }
                if f.theta <= 3 && f.passes_all_but_theta_bound() {
                    report.small_theta_passing_other_filters += 1;
                }
            }
        }
        progress(&stats);
        report.per_order.push(stats);
    }
    Ok(report)
}

fn evaluate(g: &Graph, use_filters: bool, minimal: bool, caps: &Caps) -> Result<Outcome> {
    let filters = if use_filters {
        let f = exactness_filters(g, minimal, caps)?;
        if f.conclusion == Conclusion::CannotBeExact {
            return Ok(Outcome::Skipped(f));
        }
        Some(f)
    } else {
        None
    };
    let theta = classical_parameter(g, Parameter::Theta, caps)?;
    let theta1 = robust_parameter(g, Robust::Theta, 1, Tier::Solver, caps)?;
    let exact = theta1.value == theta.value;
    let cx = Counterexample {
        graph: g.clone(),
        theta,
        theta1,
    };
    Ok(Outcome::Checked(filters, Box::new(cx), exact))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        let orders = graphs_up_to(5).unwrap();
        let counts: Vec<usize> = orders.iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34]);
    }

    #[test]
    fn no_exact_graphs_up_to_four() {
        let r = explore_exact_conjecture(4, false, &Caps::default()).unwrap();
        assert!(r.counterexamples.is_empty());
        // K2 on two vertices, then P3, K3, K2+K1 on three
        assert_eq!(r.per_order[1].non_edgeless, 1);
        assert_eq!(r.per_order[2].non_edgeless, 3);
        let f = explore_exact_conjecture(4, true, &Caps::default()).unwrap();
        assert_eq!(f.counterexamples, r.counterexamples);
        assert!(explore_exact_conjecture(8, false, &Caps::default()).is_err());
    }
}
