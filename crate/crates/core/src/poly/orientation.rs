//! Orientations minimizing the maximum out-degree.
//!
//! Feasibility of out-degree `t` is tested by inserting the edges one at a
//! time into an [`OrientationTracker`], which reverses a directed path to a
//! vertex with spare capacity whenever both endpoints are saturated. The
//! smallest feasible `t` is found by binary search. When insertion fails at
//! `t - 1`, the vertices reachable from the two endpoints already carry
//! `(t - 1)|R|` edges plus the new one, which is the density witness.

use serde::{Deserialize, Serialize};

use crate::graph::{Edge, Graph};
use crate::selection::{EdgeTracker, Orientation, OrientationTracker};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinOrientation {
    pub orientation: Orientation,
    /// Vertex set `U` with `⌈e(G[U]) / |U|⌉` equal to the maximum out-degree.
    pub witness: Vec<usize>,
    /// Path reversals performed while building the final orientation.
    pub reversals: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub classes: Vec<Vec<Edge>>,
    pub orientation: Orientation,
    pub witness: Vec<usize>,
}

/// Inserts every edge at out-degree `t`; on failure returns the blocking set.
fn attempt(g: &Graph, t: usize) -> Result<(OrientationTracker, usize), Vec<usize>> {
    let mut tr = OrientationTracker::new(g.n(), t);
    let mut reversals = 0;
    for &(u, v) in g.edges() {
        let before = tr.checkpoint();
        if !tr.try_add(u, v) {
            let mut r = tr.reachable(&[u, v]);
            r.sort_unstable();
            return Err(r);
        }
        // a reversal logs two operations
        reversals += usize::from(tr.checkpoint() - before > 1);
    }
    Ok((tr, reversals))
}

pub fn min_outdegree_orientation(g: &Graph) -> MinOrientation {
    let n = g.n();
    if g.m() == 0 {
        return MinOrientation {
            orientation: Orientation::from_arcs(n, Vec::new()),
            witness: if n > 0 { vec![0] } else { Vec::new() },
            reversals: 0,
        };
    }
    // any t below ⌈m/n⌉ fails and Δ always works
    let mut lo = g.m().div_ceil(n).max(1);
    let mut hi = g.max_degree();
    while lo < hi {
        let mid = (lo + hi) / 2;
        if attempt(g, mid).is_ok() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let (tr, reversals) = attempt(g, lo).expect("feasible by search");
    let witness = if lo == 1 {
        // any edge is a set of density 1
        let (u, v) = g.edges()[0];
        vec![u, v]
    } else {
        attempt(g, lo - 1).expect_err("infeasible by search")
    };
    MinOrientation {
        orientation: tr.orientation(),
        witness,
        reversals,
    }
}

/// Splits `E` into the minimum number of quasi-unicyclic classes: class `i`
/// holds the `i`-th out-arc of each vertex, ranked by head.
pub fn quasi_unicyclic_edge_decomposition(g: &Graph) -> Decomposition {
    let MinOrientation {
        orientation,
        witness,
        ..
    } = min_outdegree_orientation(g);
    let mut outs = vec![Vec::new(); g.n()];
    for &(t, h) in &orientation.arcs {
        outs[t].push(h);
    }
    let mut classes = vec![Vec::new(); orientation.max_outdegree];
    for (t, hs) in outs.iter_mut().enumerate() {
        hs.sort_unstable();
        for (i, &h) in hs.iter().enumerate() {
            classes[i].push(crate::graph::norm(t, h));
        }
    }
    for c in &mut classes {
        c.sort_unstable();
    }
    Decomposition {
        classes,
        orientation,
        witness,
    }
}
