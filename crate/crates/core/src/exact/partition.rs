//! Vertex partitions whose classes keep their induced edge sets feasible for
//! an [`EdgeTracker`]. With a pseudoforest tracker this decides `χ₁ <= k`,
//! with an orientation tracker `χ_s <= k`, with a forest tracker `a <= k`.
//! Classes never share vertices, so one tracker serves all classes.

use crate::graph::Graph;
use crate::selection::EdgeTracker;

const NONE: usize = usize::MAX;

pub(crate) fn partition_search<T: EdgeTracker>(
    g: &Graph,
    k: usize,
    tracker: &mut T,
    nodes: &mut u64,
) -> Option<Vec<usize>> {
    let n = g.n();
    if n == 0 {
        return Some(Vec::new());
    }
    if k == 0 {
        return None;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut s = Search {
        g,
        order,
        label: vec![NONE; n],
        k,
        nodes: 0,
    };
    let found = s.rec(0, 0, tracker);
    *nodes += s.nodes;
    found.then_some(s.label)
}

struct Search<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    label: Vec<usize>,
    k: usize,
    nodes: u64,
}

impl Search<'_> {
    fn rec<T: EdgeTracker>(&mut self, i: usize, used: usize, t: &mut T) -> bool {
        self.nodes += 1;
        if i == self.order.len() {
            return true;
        }
        let v = self.order[i];
        // a fresh class is only ever opened at the next index
        for c in 0..(used + 1).min(self.k) {
            let cp = t.checkpoint();
            let ok = self
                .g
                .neighbors(v)
                .iter()
                .all(|&w| self.label[w] != c || t.try_add(v, w));
            if ok {
                self.label[v] = c;
                if self.rec(i + 1, used.max(c + 1), t) {
                    t.rollback(cp);
                    return true;
                }
                self.label[v] = NONE;
            }
            t.rollback(cp);
        }
        false
    }
}
