//! Robust parameters: the classical parameter optimized over all removable
//! edge sets at budget `s`.
//!
//! The solver tier uses one search per parameter:
//! - `χ_s`: vertex partition into classes whose induced edges are removable;
//! - `α_s` and `ι`: largest vertex set whose induced edges are removable;
//! - `ω_s`: for decreasing `t`, look for a removable set meeting every
//!   `(t+1)`-clique, branching on the edges of one unhit clique;
//! - `θ_s`: for increasing `t`, an optimal clique cover with fewer than `t`
//!   classes survives unless some intra-class edge is removed, so branch on
//!   those edges;
//! - `χ′_s`: each edge in turn is either colored or added to the removed set.

use std::time::Instant;

use super::classical::{
    chromatic_coloring, chromatic_index, cliques_of_size, clique_cover, full_mask, k_coloring, max_clique,
    max_clique_rows, max_independent_set,
};
use super::partition::partition_search;
use super::{oracle, Caps, Certificate, Parameter, ParameterResult, Robust, Stats, Tier};
use crate::error::{cap_check, Result};
use crate::graph::{Edge, Graph};
use crate::selection::{
    for_each_removable, selection_from_edge_set, EdgeTracker, EnumMode, OrientationTracker,
    SSelection, Tracker, UfTracker,
};

fn finish(
    parameter: Parameter,
    s: usize,
    value: usize,
    certificate: Certificate,
    nodes: u64,
    start: Instant,
) -> ParameterResult {
    ParameterResult {
        parameter,
        s,
        value,
        certificate,
        stats: Stats {
            nodes,
            elapsed_ms: Some(start.elapsed().as_secs_f64() * 1e3),
        },
    }
}

fn selection_of(g: &Graph, removed: &[Edge], s: usize) -> SSelection {
    selection_from_edge_set(removed, g, s).expect("solver produced a removable set")
}

/// Edges of `g` inside classes of the labelling.
fn intra_class_edges(g: &Graph, labels: &[usize]) -> Vec<Edge> {
    g.edges()
        .iter()
        .copied()
        .filter(|&(u, v)| labels[u] == labels[v])
        .collect()
}

/// Evaluates the classical parameter on `G - F` and packages a certificate.
pub(crate) fn certify(g: &Graph, removed: &[Edge], s: usize, which: Robust) -> (usize, Certificate, u64) {
    let h = g.remove_edges(removed);
    let selection = selection_of(g, removed, s);
    match which {
        Robust::Chi => {
            let (k, colors, nodes) = chromatic_coloring(&h);
            (k, Certificate::Coloring { selection, colors }, nodes)
        }
        Robust::Omega => {
            let (clique, nodes) = max_clique(&h);
            (clique.len(), Certificate::Clique { selection, clique }, nodes)
        }
        Robust::Alpha => {
            let (set, nodes) = max_independent_set(&h);
            (set.len(), Certificate::IndependentSet { selection, set }, nodes)
        }
        Robust::Theta => {
            let (classes, nodes) = clique_cover(&h);
            (classes.len(), Certificate::CliqueCover { selection, classes }, nodes)
        }
        Robust::ChiPrime => {
            let (k, hc, nodes) = chromatic_index(&h);
            let colors = g
                .edges()
                .iter()
                .map(|&(u, v)| h.edge_index(u, v).map(|i| hc[i]))
                .collect();
            (k, Certificate::EdgeColoring { selection, colors }, nodes)
        }
    }
}

/// `χ₁` by partition search with the union-find pseudoforest test.
pub fn robust_chromatic(g: &Graph, caps: &Caps) -> Result<ParameterResult> {
    cap_check("robust chi vertices", g.n(), caps.robust_chi.min(64))?;
    let start = Instant::now();
    let mut nodes = 0;
    let (k, labels) = min_partition(g, 1, &mut nodes, UfTracker::pseudoforest);
    let removed = intra_class_edges(g, &labels);
    let cert = Certificate::Coloring {
        selection: selection_of(g, &removed, 1),
        colors: labels,
    };
    Ok(finish(Parameter::ChiS, 1, k, cert, nodes, start))
}

fn min_partition<T: EdgeTracker>(
    g: &Graph,
    s: usize,
    nodes: &mut u64,
    make: impl Fn(usize) -> T,
) -> (usize, Vec<usize>) {
    if g.n() == 0 {
        return (0, Vec::new());
    }
    // a clique of order q needs at least ceil(q / (2s+1)) classes
    let q = max_clique(g).0.len();
    let mut k = q.div_ceil(2 * s + 1).max(1);
    loop {
        let mut t = make(g.n());
        if let Some(labels) = partition_search(g, k, &mut t, nodes) {
            return (k, labels);
        }
        k += 1;
    }
}

/// Robust parameter at budget `s` with the chosen tier.
pub fn robust_parameter(
    g: &Graph,
    which: Robust,
    s: usize,
    tier: Tier,
    caps: &Caps,
) -> Result<ParameterResult> {
    let start = Instant::now();
    let param = which.parameter();
    match tier {
        Tier::Oracle => {
            cap_check("oracle vertices", g.n(), 20)?;
            let best = oracle::robust_all(g, s, &[which], caps.oracle_edges)?.remove(0);
            let (value, cert, nodes) = certify(g, &best.removed, s, which);
            debug_assert_eq!(value, best.value);
            Ok(finish(param, s, value, cert, nodes, start))
        }
        Tier::Maximal => {
            cap_check("robust vertices", g.n(), caps.robust.min(64))?;
            let mut best: Option<(usize, Vec<Edge>)> = None;
            let mut nodes = 0u64;
            for_each_removable(g, s, EnumMode::Maximal, caps.maximal_edges, |f| {
                nodes += 1;
                let v = certify_value(g, f, which);
                let better = match &best {
                    None => true,
                    Some((b, _)) if which.minimizes() => v < *b,
                    Some((b, _)) => v > *b,
                };
                if better {
                    best = Some((v, f.to_vec()));
                }
                std::ops::ControlFlow::Continue(())
            })?;
            let (_, removed) = best.expect("the empty set is removable");
            let (value, cert, n2) = certify(g, &removed, s, which);
            Ok(finish(param, s, value, cert, nodes + n2, start))
        }
        Tier::Solver => {
            let cap = if which == Robust::Chi {
                caps.robust_chi
            } else {
                caps.robust
            };
            cap_check("robust vertices", g.n(), cap.min(64))?;
            let mut nodes = 0u64;
            let (value, cert) = match which {
                Robust::Chi => {
                    let (k, labels) =
                        min_partition(g, s, &mut nodes, |n| OrientationTracker::new(n, s));
                    let removed = intra_class_edges(g, &labels);
                    let cert = Certificate::Coloring {
                        selection: selection_of(g, &removed, s),
                        colors: labels,
                    };
                    (k, cert)
                }
                Robust::Alpha => {
                    let w = max_removable_set(g, Tracker::new(g.n(), s), &mut nodes);
                    let removed = induced_edges(g, &w);
                    let cert = Certificate::IndependentSet {
                        selection: selection_of(g, &removed, s),
                        set: w.clone(),
                    };
                    (w.len(), cert)
                }
                Robust::Omega => {
                    let removed = omega_search(g, s, &mut nodes);
                    let (v, cert, n2) = certify(g, &removed, s, which);
                    nodes += n2;
                    (v, cert)
                }
                Robust::Theta => {
                    cap_check("robust theta edges", g.m(), 128)?;
                    let removed = theta_search(g, s, &mut nodes);
                    let (v, cert, n2) = certify(g, &removed, s, which);
                    nodes += n2;
                    (v, cert)
                }
                Robust::ChiPrime => {
                    let (k, colors) = edge_color_search(g, s, &mut nodes);
                    let removed: Vec<Edge> = g
                        .edges()
                        .iter()
                        .zip(&colors)
                        .filter(|(_, c)| c.is_none())
                        .map(|(&e, _)| e)
                        .collect();
                    let cert = Certificate::EdgeColoring {
                        selection: selection_of(g, &removed, s),
                        colors,
                    };
                    (k, cert)
                }
            };
            Ok(finish(param, s, value, cert, nodes, start))
        }
    }
}

fn certify_value(g: &Graph, removed: &[Edge], which: Robust) -> usize {
    let h = g.remove_edges(removed);
    match which {
        Robust::Chi => chromatic_coloring(&h).0,
        Robust::Omega => max_clique(&h).0.len(),
        Robust::Alpha => max_independent_set(&h).0.len(),
        Robust::Theta => clique_cover(&h).0.len(),
        Robust::ChiPrime => chromatic_index(&h).0,
    }
}

fn induced_edges(g: &Graph, w: &[usize]) -> Vec<Edge> {
    let mut inside = vec![false; g.n()];
    for &v in w {
        inside[v] = true;
    }
    g.edges()
        .iter()
        .copied()
        .filter(|&(u, v)| inside[u] && inside[v])
        .collect()
}

/// Largest vertex set whose induced edges the tracker accepts.
fn max_removable_set<T: EdgeTracker>(g: &Graph, tracker: T, nodes: &mut u64) -> Vec<usize> {
    struct S<'a, T> {
        g: &'a Graph,
        order: Vec<usize>,
        inside: Vec<bool>,
        chosen: Vec<usize>,
        best: Vec<usize>,
        nodes: u64,
        t: T,
    }
    impl<T: EdgeTracker> S<'_, T> {
        fn rec(&mut self, i: usize) {
            self.nodes += 1;
            if self.chosen.len() + (self.order.len() - i) <= self.best.len() {
                return;
            }
            if i == self.order.len() {
                self.best = self.chosen.clone();
                return;
            }
            let v = self.order[i];
            let cp = self.t.checkpoint();
            let g = self.g;
            let ok = g
                .neighbors(v)
                .iter()
                .all(|&w| !self.inside[w] || self.t.try_add(v, w));
            if ok {
                self.inside[v] = true;
                self.chosen.push(v);
                self.rec(i + 1);
                self.chosen.pop();
                self.inside[v] = false;
            }
            self.t.rollback(cp);
            self.rec(i + 1);
        }
    }
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    let mut s = S {
        g,
        order,
        inside: vec![false; g.n()],
        chosen: Vec::new(),
        best: Vec::new(),
        nodes: 0,
        t: tracker,
    };
    s.rec(0);
    *nodes += s.nodes;
    let mut best = s.best;
    best.sort_unstable();
    best
}

/// `ι(G)`: largest vertex set inducing a quasi-unicyclic subgraph.
pub fn iota(g: &Graph, caps: &Caps) -> Result<ParameterResult> {
    cap_check("iota vertices", g.n(), caps.iota)?;
    let start = Instant::now();
    let mut nodes = 0;
    let set = max_removable_set(g, UfTracker::pseudoforest(g.n()), &mut nodes);
    let value = set.len();
    Ok(finish(
        Parameter::Iota,
        1,
        value,
        Certificate::InducingSet { set },
        nodes,
        start,
    ))
}

/// Edges of the Turán graph `T(n, t)`.
fn turan_edges(n: usize, t: usize) -> usize {
    if t == 0 {
        return 0;
    }
    let (q, r) = (n / t, n % t);
    let sq = r * (q + 1) * (q + 1) + (t - r) * q * q;
    (n * n - sq) / 2
}

/// Removed set minimizing `ω(G - F)`.
fn omega_search(g: &Graph, s: usize, nodes: &mut u64) -> Vec<Edge> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let omega = max_clique(g).0.len();
    let mut best: Vec<Edge> = Vec::new();
    let mut t = omega;
    while t > 1 {
        match hit_cliques(g, s, t - 1, nodes) {
            Some(f) => {
                let rows = g.remove_edges(&f).bit_rows();
                t = max_clique_rows(&rows, full_mask(n)).0.len();
                best = f;
            }
            None => break,
        }
    }
    best
}

/// A removable set leaving no clique of order `t + 1`, if one exists.
fn hit_cliques(g: &Graph, s: usize, t: usize, nodes: &mut u64) -> Option<Vec<Edge>> {
    let budget = s * g.n();
    if g.m() > turan_edges(g.n(), t) + budget {
        return None;
    }
    let mut h = Hit {
        g,
        rows: g.bit_rows(),
        tracker: Tracker::new(g.n(), s),
        excluded: vec![false; g.m()],
        removed: Vec::new(),
        budget,
        t,
        nodes: 0,
    };
    let found = h.rec();
    *nodes += h.nodes;
    found.then_some(h.removed)
}

struct Hit<'a> {
    g: &'a Graph,
    rows: Vec<u64>,
    tracker: Tracker,
    excluded: Vec<bool>,
    removed: Vec<Edge>,
    budget: usize,
    t: usize,
    nodes: u64,
}

impl Hit<'_> {
    fn addable(&mut self, u: usize, v: usize) -> bool {
        let cp = self.tracker.checkpoint();
        let ok = self.tracker.try_add(u, v);
        self.tracker.rollback(cp);
        ok
    }

    fn rec(&mut self) -> bool {
        self.nodes += 1;
        let n = self.g.n();
        let cliques = cliques_of_size(&self.rows, full_mask(n), self.t + 1);
        if cliques.is_empty() {
            return true;
        }
        if self.removed.len() >= self.budget {
            return false;
        }
        // candidate status per edge index: 0 unknown, 1 usable, 2 not usable
        let mut status = vec![0u8; self.g.m()];
        let mut per_edge = vec![0usize; self.g.m()];
        let mut best_clique: Option<Vec<usize>> = None;
        for &c in &cliques {
            let vs = bits(c);
            let mut cands = Vec::new();
            for i in 0..vs.len() {
                for j in i + 1..vs.len() {
                    let e = self.g.edge_index(vs[i], vs[j]).unwrap();
                    if status[e] == 0 {
                        status[e] = if !self.excluded[e] && self.addable(vs[i], vs[j]) {
                            1
                        } else {
                            2
                        };
                    }
                    if status[e] == 1 {
                        per_edge[e] += 1;
                        cands.push(e);
                    }
                }
            }
            if cands.is_empty() {
                return false;
            }
            if best_clique.as_ref().is_none_or(|b| cands.len() < b.len()) {
                best_clique = Some(cands);
            }
        }
        // each new edge hits at most `max_hits` of the remaining cliques
        let max_hits = per_edge.iter().copied().max().unwrap_or(0).max(1);
        if self.removed.len() + cliques.len().div_ceil(max_hits) > self.budget {
            return false;
        }
        let cands = best_clique.unwrap();
        let mut locked = Vec::new();
        let mut found = false;
        for &e in &cands {
            let (u, v) = self.g.edges()[e];
            let cp = self.tracker.checkpoint();
            if self.tracker.try_add(u, v) {
                self.rows[u] &= !(1u64 << v);
                self.rows[v] &= !(1u64 << u);
                self.removed.push((u, v));
                found = self.rec();
                if found {
                    break;
                }
                self.removed.pop();
                self.rows[u] |= 1u64 << v;
                self.rows[v] |= 1u64 << u;
            }
            self.tracker.rollback(cp);
            self.excluded[e] = true;
            locked.push(e);
        }
        for e in locked {
            self.excluded[e] = false;
        }
        found
    }
}

fn bits(mut m: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        out.push(v);
        m &= m - 1;
    }
    out
}

/// Removed set maximizing `θ(G - F)`.
fn theta_search(g: &Graph, s: usize, nodes: &mut u64) -> Vec<Edge> {
    let n = g.n();
    let mut best: Vec<Edge> = Vec::new();
    let mut value = clique_cover(g).0.len();
    // a removed set is 2s-degenerate, so θ(G - F) = χ(co-G ∪ F) <= θ (2s + 1)
    let cap = n.min(value * (2 * s + 1));
    // the α_s witness already gives θ(G - F) >= α_s
    let w = max_removable_set(g, Tracker::new(n, s), nodes);
    let fw = induced_edges(g, &w);
    let vw = clique_cover(&g.remove_edges(&fw)).0.len();
    if vw > value {
        value = vw;
        best = fw;
    }
    // covers found so far, as masks of their intra-class edges; each one
    // must be hit by the removed set for any larger target
    let mut covers = Vec::new();
    while value < cap {
        let mut b = Break {
            g,
            tracker: Tracker::new(n, s),
            locked: 0,
            removed: 0,
            list: Vec::new(),
            budget: s * n,
            t: value + 1,
            covers,
            nodes: 0,
        };
        let found = b.rec();
        *nodes += b.nodes;
        covers = b.covers;
        if !found {
            break;
        }
        value = clique_cover(&g.remove_edges(&b.list)).0.len();
        best = b.list;
    }
    best
}

/// Looks for a removable set leaving no clique cover with fewer than `t`
/// classes. Any such cover must contain a removed edge inside a class, so
/// the search branches on the intra-class edges of the most constrained
/// known cover and asks the coloring solver for a new cover only when every
/// known one is hit.
struct Break<'a> {
    g: &'a Graph,
    tracker: Tracker,
    locked: u128,
    removed: u128,
    list: Vec<Edge>,
    budget: usize,
    t: usize,
    covers: Vec<u128>,
    nodes: u64,
}

impl Break<'_> {
    fn cover_mask(&self, labels: &[usize]) -> u128 {
        self.g
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| labels[u] == labels[v])
            .fold(0, |m, (i, _)| m | 1u128 << i)
    }

    fn rec(&mut self) -> bool {
        self.nodes += 1;
        let free = !(self.locked | self.removed);
        let mut pick = None;
        let mut fewest = u32::MAX;
        let mut packed = 0u128;
        let mut need = 0;
        for &c in &self.covers {
            if c & self.removed != 0 {
                continue;
            }
            let k = (c & free).count_ones();
            if k == 0 {
                return false;
            }
            if k < fewest {
                fewest = k;
                pick = Some(c);
            }
            // disjoint unhit covers each need their own edge
            if c & free & packed == 0 {
                packed |= c & free;
                need += 1;
            }
        }
        if self.list.len() + need > self.budget {
            return false;
        }
        let target = match pick {
            Some(c) => c,
            None => {
                let h = self.g.remove_edges(&self.list);
                let (col, n2) = k_coloring(&h.complement(), self.t - 1);
                self.nodes += n2;
                let Some(labels) = col else {
                    return true;
                };
                let c = self.cover_mask(&labels);
                self.covers.push(c);
                if c & free == 0 || self.list.len() >= self.budget {
                    return false;
                }
                c
            }
        };
        let saved = self.locked;
        let mut cand = target & free;
        let mut found = false;
        while cand != 0 {
            let e = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let (u, v) = self.g.edges()[e];
            let cp = self.tracker.checkpoint();
            if self.tracker.try_add(u, v) {
                self.removed |= 1u128 << e;
                self.list.push((u, v));
                found = self.rec();
                if found {
                    break;
                }
                self.list.pop();
                self.removed &= !(1u128 << e);
            }
            self.tracker.rollback(cp);
            self.locked |= 1u128 << e;
        }
        self.locked = saved;
        found
    }
}

/// Minimum number of colors for the edges left after removing a removable
/// set; returns the color per edge (`None` when removed).
fn edge_color_search(g: &Graph, s: usize, nodes: &mut u64) -> (usize, Vec<Option<usize>>) {
    let (n, m) = (g.n(), g.m());
    let mut all = Tracker::new(n, s);
    if g.edges().iter().all(|&(u, v)| all.try_add(u, v)) {
        return (0, vec![None; m]);
    }
    let mut lb = g.min_degree().saturating_sub(2 * s).max(1);
    if n >= 2 {
        lb = lb.max(m.saturating_sub(s * n).div_ceil(n / 2));
    }
    let mut k = lb;
    loop {
        let mut e = EdgeSearch {
            g,
            k,
            color: vec![None; m],
            mask: vec![0; n],
            tracker: Tracker::new(n, s),
            nodes: 0,
        };
        let ok = e.rec(0, 0);
        *nodes += e.nodes;
        if ok {
            return (k, e.color);
        }
        k += 1;
    }
}

struct EdgeSearch<'a> {
    g: &'a Graph,
    k: usize,
    color: Vec<Option<usize>>,
    mask: Vec<u128>,
    tracker: Tracker,
    nodes: u64,
}

impl EdgeSearch<'_> {
    fn rec(&mut self, i: usize, used: usize) -> bool {
        self.nodes += 1;
        let edges = self.g.edges();
        if i == edges.len() {
            return true;
        }
        let (u, v) = edges[i];
        let busy = self.mask[u] | self.mask[v];
        for c in 0..(used + 1).min(self.k) {
            if busy >> c & 1 == 1 {
                continue;
            }
            self.color[i] = Some(c);
            self.mask[u] |= 1 << c;
            self.mask[v] |= 1 << c;
            let ok = self.rec(i + 1, used.max(c + 1));
            self.mask[u] &= !(1 << c);
            self.mask[v] &= !(1 << c);
            if ok {
                return true;
            }
            self.color[i] = None;
        }
        let cp = self.tracker.checkpoint();
        if self.tracker.try_add(u, v) {
            if self.rec(i + 1, used) {
                return true;
            }
            self.tracker.rollback(cp);
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;
    use crate::graph::ops::disjoint_union;

    fn solve(g: &Graph, w: Robust, s: usize) -> usize {
        robust_parameter(g, w, s, Tier::Solver, &Caps::default())
            .unwrap()
            .value
    }

    #[test]
    fn complete_graph_values() {
        for n in 1..=8 {
            assert_eq!(robust_chromatic(&complete(n), &Caps::default()).unwrap().value, n.div_ceil(3));
            assert_eq!(solve(&complete(n), Robust::Omega, 1), n.div_ceil(3), "omega1(K{n})");
        }
    }

    #[test]
    fn small_robust_values() {
        let k4 = complete(4);
        assert_eq!(solve(&k4, Robust::Alpha, 1), 3);
        assert_eq!(solve(&k4, Robust::ChiPrime, 1), 1);
        assert_eq!(solve(&k4, Robust::Theta, 1), 3);
        let two_k3 = disjoint_union(&[complete(3), complete(3)]);
        assert_eq!(solve(&two_k3, Robust::Theta, 1), 6);
        assert_eq!(solve(&cycle(4), Robust::Chi, 1), 1);
        assert_eq!(solve(&complete(5), Robust::ChiPrime, 1), 3);
        assert_eq!(solve(&star(9), Robust::ChiPrime, 1), 0);
    }

    #[test]
    fn zero_budget_is_classical() {
        let g = cycle(5);
        assert_eq!(solve(&g, Robust::Chi, 0), 3);
        assert_eq!(solve(&g, Robust::Omega, 0), 2);
        assert_eq!(solve(&g, Robust::Alpha, 0), 2);
        assert_eq!(solve(&g, Robust::Theta, 0), 3);
        assert_eq!(solve(&g, Robust::ChiPrime, 0), 3);
    }

    #[test]
    fn tiers_agree_on_k4() {
        let k4 = complete(4);
        for w in Robust::ALL {
            for s in 0..=2 {
                let caps = Caps::default();
                let a = robust_parameter(&k4, w, s, Tier::Solver, &caps).unwrap().value;
                let b = robust_parameter(&k4, w, s, Tier::Oracle, &caps).unwrap().value;
                let c = robust_parameter(&k4, w, s, Tier::Maximal, &caps).unwrap().value;
                assert_eq!((a, c), (b, b), "{w:?} s={s}");
            }
        }
    }

    #[test]
    fn turan_numbers() {
        assert_eq!(turan_edges(10, 3), 33);
        assert_eq!(turan_edges(12, 2), 36);
        assert_eq!(turan_edges(5, 5), 10);
    }

    #[test]
    fn iota_values() {
        assert_eq!(iota(&cycle(5), &Caps::default()).unwrap().value, 5);
        assert_eq!(iota(&complete(4), &Caps::default()).unwrap().value, 3);
    }
}
