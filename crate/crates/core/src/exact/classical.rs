//! Classical parameters: χ, ω, α, θ, χ′, vertex arboricity and degeneracy.

use std::time::Instant;

use super::partition::partition_search;
use super::{Caps, Certificate, Parameter, ParameterResult, Stats};
use crate::error::{cap_check, Result};
use crate::graph::ops::line_graph;
use crate::graph::Graph;
use crate::selection::{SSelection, UfTracker};

const NONE: usize = usize::MAX;

/// DSATUR branch and bound over colorings with fewer than `best` colors.
struct Dsatur<'a> {
    g: &'a Graph,
    color: Vec<usize>,
    cnt: Vec<u16>,
    width: usize,
    sat: Vec<usize>,
    best: usize,
    best_colors: Option<Vec<usize>>,
    stop: usize,
    nodes: u64,
    limit: u64,
    aborted: bool,
}

impl<'a> Dsatur<'a> {
    fn new(g: &'a Graph, best: usize, stop: usize) -> Self {
        let width = g.n() + 1;
        Dsatur {
            g,
            color: vec![NONE; g.n()],
            cnt: vec![0; g.n() * width],
            width,
            sat: vec![0; g.n()],
            best,
            best_colors: None,
            stop,
            nodes: 0,
            limit: u64::MAX,
            aborted: false,
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        for &w in self.g.neighbors(v) {
            let x = &mut self.cnt[w * self.width + c];
            if *x == 0 {
                self.sat[w] += 1;
            }
            *x += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v];
        self.color[v] = NONE;
        for &w in self.g.neighbors(v) {
            let x = &mut self.cnt[w * self.width + c];
            *x -= 1;
            if *x == 0 {
                self.sat[w] -= 1;
            }
        }
    }

    /// Returns true once a coloring with at most `stop` colors is known.
    fn rec(&mut self, colored: usize, used: usize) -> bool {
        self.nodes += 1;
        if self.nodes > self.limit {
            self.aborted = true;
            return true;
        }
        if used >= self.best {
            return false;
        }
        if colored == self.g.n() {
            self.best = used;
            self.best_colors = Some(self.color.clone());
            return self.best <= self.stop;
        }
        let mut v = NONE;
        let mut key = (0, 0);
        for u in 0..self.g.n() {
            if self.color[u] == NONE {
                let k = (self.sat[u], self.g.degree(u));
                if v == NONE || k > key {
                    v = u;
                    key = k;
                }
            }
        }
        for c in 0..=used {
            if used.max(c + 1) >= self.best {
                break;
            }
            if self.cnt[v * self.width + c] != 0 {
                continue;
            }
            self.assign(v, c);
            let done = self.rec(colored + 1, used.max(c + 1));
            self.unassign(v);
            if done {
                return true;
            }
        }
        false
    }
}

/// Optimal proper coloring; returns `(χ, colors, nodes)`.
pub fn chromatic_coloring(g: &Graph) -> (usize, Vec<usize>, u64) {
    if g.n() == 0 {
        return (0, Vec::new(), 0);
    }
    let lb = if g.n() <= 64 { max_clique(g).0.len() } else { 1 };
    let mut d = Dsatur::new(g, g.n() + 1, lb);
    d.rec(0, 0);
    (d.best, d.best_colors.unwrap(), d.nodes)
}

/// A proper coloring with at most `k` colors, if one exists.
pub fn k_coloring(g: &Graph, k: usize) -> (Option<Vec<usize>>, u64) {
    if g.n() == 0 {
        return (Some(Vec::new()), 0);
    }
    let mut d = Dsatur::new(g, k + 1, k);
    d.rec(0, 0);
    (d.best_colors, d.nodes)
}

/// Like [`k_coloring`] but gives up after `limit` search nodes, returning
/// `None` when the budget ran out.
pub fn k_coloring_limited(g: &Graph, k: usize, limit: u64) -> Option<Option<Vec<usize>>> {
    if g.n() == 0 {
        return Some(Some(Vec::new()));
    }
    let mut d = Dsatur::new(g, k + 1, k);
    d.limit = limit;
    d.rec(0, 0);
    if d.aborted {
        None
    } else {
        Some(d.best_colors)
    }
}

/// Colors `p` greedily; returns vertices in color order with the running
/// color count, which bounds the clique size inside each prefix.
fn color_sort(rows: &[u64], p: u64) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::with_capacity(p.count_ones() as usize);
    let mut bound = Vec::with_capacity(order.capacity());
    let mut uncolored = p;
    let mut color = 0;
    while uncolored != 0 {
        color += 1;
        let mut q = uncolored;
        while q != 0 {
            let v = q.trailing_zeros() as usize;
            q &= !(1u64 << v) & !rows[v];
            uncolored &= !(1u64 << v);
            order.push(v);
            bound.push(color);
        }
    }
    (order, bound)
}

struct CliqueSearch<'a> {
    rows: &'a [u64],
    best: Vec<usize>,
    nodes: u64,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, r: &mut Vec<usize>, mut p: u64) {
        self.nodes += 1;
        let (order, bound) = color_sort(self.rows, p);
        for i in (0..order.len()).rev() {
            if r.len() + bound[i] <= self.best.len() {
                return;
            }
            let v = order[i];
            r.push(v);
            let np = p & self.rows[v];
            if np == 0 {
                if r.len() > self.best.len() {
                    self.best = r.clone();
                }
            } else {
                self.expand(r, np);
            }
            r.pop();
            p &= !(1u64 << v);
        }
    }
}

/// Maximum clique by bitset branch and bound with a coloring bound; `n <= 64`.
pub fn max_clique(g: &Graph) -> (Vec<usize>, u64) {
    let rows = g.bit_rows();
    max_clique_rows(&rows, full_mask(g.n()))
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn max_clique_rows(rows: &[u64], within: u64) -> (Vec<usize>, u64) {
    if within == 0 {
        return (Vec::new(), 0);
    }
    let mut s = CliqueSearch {
        rows,
        best: Vec::new(),
        nodes: 0,
    };
    s.expand(&mut Vec::new(), within);
    let mut best = s.best;
    best.sort_unstable();
    (best, s.nodes)
}

pub fn max_independent_set(g: &Graph) -> (Vec<usize>, u64) {
    max_clique(&g.complement())
}

/// Minimum partition into cliques, as a coloring of the complement.
pub fn clique_cover(g: &Graph) -> (Vec<Vec<usize>>, u64) {
    let (k, colors, nodes) = chromatic_coloring(&g.complement());
    (classes_from_labels(k, &colors), nodes)
}

pub(crate) fn classes_from_labels(k: usize, labels: &[usize]) -> Vec<Vec<usize>> {
    let mut classes = vec![Vec::new(); k];
    for (v, &c) in labels.iter().enumerate() {
        classes[c].push(v);
    }
    classes.retain(|c| !c.is_empty());
    classes
}

/// All vertex sets of size `t` that are cliques in the graph given by
/// `rows`, as bit masks.
pub(crate) fn cliques_of_size(rows: &[u64], within: u64, t: usize) -> Vec<u64> {
    fn rec(rows: &[u64], cand: u64, cur: u64, need: usize, out: &mut Vec<u64>) {
        if need == 0 {
            out.push(cur);
            return;
        }
        if (cand.count_ones() as usize) < need {
            return;
        }
        let mut c = cand;
        while c != 0 {
            let v = c.trailing_zeros() as usize;
            c &= !(1u64 << v);
            rec(rows, c & rows[v], cur | (1u64 << v), need - 1, out);
        }
    }
    let mut out = Vec::new();
    rec(rows, within, 0, t, &mut out);
    out
}

/// Minimum number of forest-inducing classes.
pub fn vertex_arboricity(g: &Graph) -> (usize, Vec<usize>, u64) {
    if g.n() == 0 {
        return (0, Vec::new(), 0);
    }
    let omega = if g.n() <= 64 { max_clique(g).0.len() } else { 1 };
    let mut nodes = 0;
    let mut k = omega.div_ceil(2).max(1);
    loop {
        let mut t = UfTracker::forest(g.n());
        if let Some(labels) = partition_search(g, k, &mut t, &mut nodes) {
            return (k, labels, nodes);
        }
        k += 1;
    }
}

/// Chromatic index via the line graph, deciding between `Δ` and `Δ + 1`.
/// Returns `(χ′, color per edge, nodes)`.
pub fn chromatic_index(g: &Graph) -> (usize, Vec<usize>, u64) {
    if g.m() == 0 {
        return (0, Vec::new(), 0);
    }
    let delta = g.max_degree();
    let lg = line_graph(g);
    let (found, nodes) = k_coloring(&lg, delta);
    match found {
        Some(c) => (delta, c, nodes),
        None => {
            let mg = crate::poly::misra_gries(g);
            (delta + 1, mg, nodes)
        }
    }
}

fn empty_selection(g: &Graph) -> SSelection {
    SSelection::empty(g.n(), 0)
}

/// Exact classical parameter with certificate.
pub fn classical_parameter(g: &Graph, which: Parameter, caps: &Caps) -> Result<ParameterResult> {
    let start = Instant::now();
    let n = g.n();
    let (value, certificate, nodes) = match which {
        Parameter::Chi => {
            cap_check("chi vertices", n, caps.chi)?;
            let (k, colors, nodes) = chromatic_coloring(g);
            let cert = Certificate::Coloring {
                selection: empty_selection(g),
                colors,
            };
            (k, cert, nodes)
        }
        Parameter::Omega => {
            cap_check("omega vertices", n, caps.omega.min(64))?;
            let (c, nodes) = max_clique(g);
            let cert = Certificate::Clique {
                selection: empty_selection(g),
                clique: c.clone(),
            };
            (c.len(), cert, nodes)
        }
        Parameter::Alpha => {
            cap_check("alpha vertices", n, caps.alpha.min(64))?;
            let (s, nodes) = max_independent_set(g);
            let cert = Certificate::IndependentSet {
                selection: empty_selection(g),
                set: s.clone(),
            };
            (s.len(), cert, nodes)
        }
        Parameter::Theta => {
            cap_check("theta vertices", n, caps.theta)?;
            let (classes, nodes) = clique_cover(g);
            let k = classes.len();
            let cert = Certificate::CliqueCover {
                selection: empty_selection(g),
                classes,
            };
            (k, cert, nodes)
        }
        Parameter::ChiPrime => {
            cap_check("chi_prime vertices", n, caps.chi_prime)?;
            let (k, colors, nodes) = chromatic_index(g);
            let cert = Certificate::EdgeColoring {
                selection: empty_selection(g),
                colors: colors.into_iter().map(Some).collect(),
            };
            (k, cert, nodes)
        }
        Parameter::Arboricity => {
            cap_check("arboricity vertices", n, caps.arboricity)?;
            let (k, classes, nodes) = vertex_arboricity(g);
            (k, Certificate::ForestPartition { classes }, nodes)
        }
        Parameter::Degeneracy => {
            let d = crate::poly::degeneracy_order(g);
            let cert = Certificate::Ordering {
                order: d.order,
                core: d.core,
            };
            (d.d, cert, 0)
        }
        other => {
            return Err(crate::error::Error::InvalidArgument(format!(
                "{other} is not a classical parameter"
            )))
        }
    };
    Ok(ParameterResult {
        parameter: which,
        s: 0,
        value,
        certificate,
        stats: Stats {
            nodes,
            elapsed_ms: Some(start.elapsed().as_secs_f64() * 1e3),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;
    use crate::graph::ops::disjoint_union;

    fn val(g: &Graph, p: Parameter) -> usize {
        classical_parameter(g, p, &Caps::default()).unwrap().value
    }

    #[test]
    fn small_values() {
        assert_eq!(val(&complete(4), Parameter::Chi), 4);
        assert_eq!(val(&cycle(5), Parameter::Chi), 3);
        assert_eq!(val(&cycle(5), Parameter::Omega), 2);
        assert_eq!(val(&cycle(5), Parameter::Alpha), 2);
        assert_eq!(val(&cycle(5), Parameter::Theta), 3);
        let two_k3 = disjoint_union(&[complete(3), complete(3)]);
        assert_eq!(val(&two_k3, Parameter::Theta), 2);
        assert_eq!(val(&Graph::empty(3), Parameter::Chi), 1);
        assert_eq!(val(&Graph::empty(0), Parameter::Chi), 0);
    }

    #[test]
    fn arboricity_of_cycles() {
        assert_eq!(val(&cycle(4), Parameter::Arboricity), 2);
        assert_eq!(val(&path(5), Parameter::Arboricity), 1);
        assert_eq!(val(&complete(5), Parameter::Arboricity), 3);
    }

    #[test]
    fn chromatic_index_classes() {
        assert_eq!(val(&complete(4), Parameter::ChiPrime), 3);
        assert_eq!(val(&complete(5), Parameter::ChiPrime), 5);
        assert_eq!(val(&cycle(5), Parameter::ChiPrime), 3);
        assert_eq!(val(&star(6), Parameter::ChiPrime), 6);
        // Petersen graph is class 2
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let petersen = Graph::from_edges(10, outer.chain(spokes).chain(inner)).unwrap();
        assert_eq!(val(&petersen, Parameter::ChiPrime), 4);
    }

    #[test]
    fn caps_are_enforced() {
        let caps = Caps {
            chi: 3,
            ..Caps::default()
        };
        assert!(classical_parameter(&complete(4), Parameter::Chi, &caps).is_err());
    }
}
