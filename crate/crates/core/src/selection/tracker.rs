//! Incremental feasibility checks for growing edge sets, with undo.
//!
//! Every search in the crate grows an edge set one edge at a time and
//! backtracks in stack order, so both trackers expose `checkpoint` and
//! `rollback` instead of arbitrary deletion.

use super::Orientation;

/// Feasibility of a growing edge set on a fixed vertex set.
pub trait EdgeTracker {
    /// Adds `{u, v}` if the enlarged set stays feasible; on failure the state
    /// is unchanged.
    fn try_add(&mut self, u: usize, v: usize) -> bool;
    fn checkpoint(&self) -> usize;
    fn rollback(&mut self, checkpoint: usize);
}

#[derive(Clone, Copy, Debug)]
enum UfOp {
    Union { child: usize, root: usize, root_edges: usize },
    Cycle { root: usize },
}

/// Union-find without path compression (so unions can be undone) that keeps
/// an edge counter per component.
///
/// In pseudoforest mode a component may hold as many edges as vertices; in
/// forest mode one fewer.
#[derive(Clone, Debug)]
pub struct UfTracker {
    parent: Vec<usize>,
    size: Vec<usize>,
    edges: Vec<usize>,
    slack: usize,
    log: Vec<UfOp>,
}

impl UfTracker {
    pub fn pseudoforest(n: usize) -> Self {
        Self::with_slack(n, 0)
    }

    pub fn forest(n: usize) -> Self {
        Self::with_slack(n, 1)
    }

    fn with_slack(n: usize, slack: usize) -> Self {
        UfTracker {
            parent: (0..n).collect(),
            size: vec![1; n],
            edges: vec![0; n],
            slack,
            log: Vec::new(),
        }
    }

    pub fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    /// Number of edges added so far.
    pub fn edge_count(&self) -> usize {
        self.log.len()
    }
}

impl EdgeTracker for UfTracker {
    fn try_add(&mut self, u: usize, v: usize) -> bool {
        let (ru, rv) = (self.find(u), self.find(v));
        if ru == rv {
            if self.edges[ru] + 1 + self.slack > self.size[ru] {
                return false;
            }
            self.edges[ru] += 1;
            self.log.push(UfOp::Cycle { root: ru });
            return true;
        }
        let merged = self.edges[ru] + self.edges[rv] + 1;
        if merged + self.slack > self.size[ru] + self.size[rv] {
            return false;
        }
        let (child, root) = if self.size[ru] < self.size[rv] {
            (ru, rv)
        } else {
            (rv, ru)
        };
        self.log.push(UfOp::Union {
            child,
            root,
            root_edges: self.edges[root],
        });
        self.parent[child] = root;
        self.size[root] += self.size[child];
        self.edges[root] = merged;
        true
    }

    fn checkpoint(&self) -> usize {
        self.log.len()
    }

    fn rollback(&mut self, checkpoint: usize) {
        while self.log.len() > checkpoint {
            match self.log.pop().unwrap() {
                UfOp::Cycle { root } => self.edges[root] -= 1,
                UfOp::Union {
                    child,
                    root,
                    root_edges,
                } => {
                    self.parent[child] = child;
                    self.size[root] -= self.size[child];
                    self.edges[root] = root_edges;
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
enum OrientOp {
    Arc { tail: usize, head: usize },
    Reversed { path: Vec<usize> },
}

/// Maintains an orientation of the added edges with out-degree at most `s`.
///
/// A new edge is oriented out of an endpoint with spare out-degree; if both
/// are saturated, a directed path from one endpoint to a vertex with spare
/// capacity is reversed first. When neither endpoint reaches such a vertex,
/// the reachable set `R` already carries `s|R|` edges and the new edge would
/// exceed it, so the set is infeasible.
#[derive(Clone, Debug)]
pub struct OrientationTracker {
    s: usize,
    out: Vec<Vec<usize>>,
    log: Vec<OrientOp>,
    arcs: usize,
    // scratch for the path search
    pred: Vec<usize>,
    stamp: Vec<u32>,
    epoch: u32,
}

impl OrientationTracker {
    pub fn new(n: usize, s: usize) -> Self {
        OrientationTracker {
            s,
            out: vec![Vec::new(); n],
            log: Vec::new(),
            arcs: 0,
            pred: vec![0; n],
            stamp: vec![0; n],
            epoch: 0,
        }
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn edge_count(&self) -> usize {
        self.arcs
    }

    pub fn orientation(&self) -> Orientation {
        let mut arcs: Vec<(usize, usize)> = self
            .out
            .iter()
            .enumerate()
            .flat_map(|(t, hs)| hs.iter().map(move |&h| (t, h)))
            .collect();
        arcs.sort_unstable_by_key(|&(t, h)| super::super::graph::norm(t, h));
        Orientation::from_arcs(self.out.len(), arcs)
    }

    /// Vertices reachable from `starts` along out-arcs.
    pub fn reachable(&self, starts: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.out.len()];
        let mut stack = Vec::new();
        for &v in starts {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
        let mut out = Vec::new();
        while let Some(v) = stack.pop() {
            out.push(v);
            for &w in &self.out[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        out
    }

    fn push_arc(&mut self, tail: usize, head: usize) {
        self.out[tail].push(head);
        self.arcs += 1;
        self.log.push(OrientOp::Arc { tail, head });
    }

    fn remove_arc(&mut self, tail: usize, head: usize) {
        let pos = self.out[tail].iter().position(|&h| h == head).unwrap();
        self.out[tail].swap_remove(pos);
    }

    fn reverse_path(&mut self, path: &[usize]) {
        for w in path.windows(2) {
            self.remove_arc(w[0], w[1]);
            self.out[w[1]].push(w[0]);
        }
    }

    /// Breadth-first search along out-arcs for a vertex with spare capacity;
    /// returns the path from `start` to it.
    fn find_free(&mut self, start: usize) -> Option<Vec<usize>> {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|x| *x = 0);
            self.epoch = 1;
        }
        let mut queue = vec![start];
        self.stamp[start] = self.epoch;
        let mut i = 0;
        while i < queue.len() {
            let v = queue[i];
            i += 1;
            if self.out[v].len() < self.s {
                let mut path = vec![v];
                let mut x = v;
                while x != start {
                    x = self.pred[x];
                    path.push(x);
                }
                path.reverse();
                return Some(path);
            }
            for j in 0..self.out[v].len() {
                let w = self.out[v][j];
                if self.stamp[w] != self.epoch {
                    self.stamp[w] = self.epoch;
                    self.pred[w] = v;
                    queue.push(w);
                }
            }
        }
        None
    }
}

impl EdgeTracker for OrientationTracker {
    fn try_add(&mut self, u: usize, v: usize) -> bool {
        if self.s == 0 {
            return false;
        }
        if self.out[u].len() < self.s {
            self.push_arc(u, v);
            return true;
        }
        if self.out[v].len() < self.s {
            self.push_arc(v, u);
            return true;
        }
        for (a, b) in [(u, v), (v, u)] {
            if let Some(path) = self.find_free(a) {
                self.reverse_path(&path);
                self.log.push(OrientOp::Reversed { path });
                self.push_arc(a, b);
                return true;
            }
        }
        false
    }

    fn checkpoint(&self) -> usize {
        self.log.len()
    }

    fn rollback(&mut self, checkpoint: usize) {
        while self.log.len() > checkpoint {
            match self.log.pop().unwrap() {
                OrientOp::Arc { tail, head } => {
                    self.remove_arc(tail, head);
                    self.arcs -= 1;
                }
                OrientOp::Reversed { path } => {
                    let back: Vec<usize> = path.iter().rev().copied().collect();
                    self.reverse_path(&back);
                }
            }
        }
    }
}

/// Picks the union-find tracker for `s = 1` and the orientation tracker
/// otherwise.
#[derive(Clone, Debug)]
pub enum Tracker {
    Uf(UfTracker),
    Orient(OrientationTracker),
}

impl Tracker {
    pub fn new(n: usize, s: usize) -> Self {
        if s == 1 {
            Tracker::Uf(UfTracker::pseudoforest(n))
        } else {
            Tracker::Orient(OrientationTracker::new(n, s))
        }
    }
}

impl EdgeTracker for Tracker {
    #[inline]
    fn try_add(&mut self, u: usize, v: usize) -> bool {
        match self {
            Tracker::Uf(t) => t.try_add(u, v),
            Tracker::Orient(t) => t.try_add(u, v),
        }
    }

    #[inline]
    fn checkpoint(&self) -> usize {
        match self {
            Tracker::Uf(t) => t.checkpoint(),
            Tracker::Orient(t) => t.checkpoint(),
        }
    }

    #[inline]
    fn rollback(&mut self, checkpoint: usize) {
        match self {
            Tracker::Uf(t) => t.rollback(checkpoint),
            Tracker::Orient(t) => t.rollback(checkpoint),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uf_pseudoforest_allows_one_cycle() {
        let mut t = UfTracker::pseudoforest(4);
        assert!(t.try_add(0, 1));
        assert!(t.try_add(1, 2));
        assert!(t.try_add(0, 2));
        assert!(!t.try_add(1, 2));
        assert!(t.try_add(2, 3));
        assert!(!t.try_add(0, 3));
        t.rollback(2);
        assert!(t.try_add(2, 3));
        assert!(t.try_add(0, 3));
    }

    #[test]
    fn uf_forest_rejects_cycles() {
        let mut t = UfTracker::forest(3);
        assert!(t.try_add(0, 1));
        assert!(t.try_add(1, 2));
        assert!(!t.try_add(0, 2));
        let cp = t.checkpoint();
        t.rollback(cp - 1);
        assert!(t.try_add(0, 2));
    }

    #[test]
    fn orientation_reverses_paths() {
        // K4 has 6 edges on 4 vertices: feasible at s = 2, not at s = 1
        let k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let mut t1 = OrientationTracker::new(4, 1);
        let ok: Vec<bool> = k4.iter().map(|&(u, v)| t1.try_add(u, v)).collect();
        assert_eq!(ok.iter().filter(|&&b| b).count(), 4);
        let mut t2 = OrientationTracker::new(4, 2);
        assert!(k4.iter().all(|&(u, v)| t2.try_add(u, v)));
        assert!((0..4).all(|v| t2.out_neighbors(v).len() <= 2));
        t2.rollback(0);
        assert_eq!(t2.edge_count(), 0);
        assert!((0..4).all(|v| t2.out_neighbors(v).is_empty()));
    }

    #[test]
    fn zero_budget_rejects_everything() {
        let mut t = OrientationTracker::new(2, 0);
        assert!(!t.try_add(0, 1));
    }
}
