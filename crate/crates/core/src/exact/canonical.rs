//! Canonical labels for small graphs.
//!
//! Vertices are first split into cells by colour refinement (degree, then
//! repeatedly the multiset of neighbour colours), which only depends on the
//! isomorphism class. The label is the lexicographically largest
//! upper-triangle adjacency string over all orderings that list the cells in
//! refinement order, found by backtracking with prefix pruning.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{cap_check, Result};
use crate::graph::Graph;

pub const CANONICAL_CAP: usize = 10;

/// Stable colour refinement; returns a colour per vertex in `0..cells`.
fn refine(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut color: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut cells = usize::MAX;
    loop {
        let keys: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| color[w]).collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let mut ranks: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
        for k in &keys {
            ranks.insert(k, 0);
        }
        for (i, r) in ranks.values_mut().enumerate() {
            *r = i;
        }
        let next: Vec<usize> = keys.iter().map(|k| ranks[k]).collect();
        let count = ranks.len();
        color = next;
        if count == cells {
            return color;
        }
        cells = count;
    }
}

struct Canon<'a> {
    g: &'a Graph,
    /// cell of each position
    slot_cell: Vec<usize>,
    color: Vec<usize>,
    perm: Vec<usize>,
    used: Vec<bool>,
    bits: Vec<bool>,
    best: Option<(Vec<bool>, Vec<usize>)>,
}

impl Canon<'_> {
    fn rec(&mut self, pos: usize) {
        let n = self.g.n();
        if pos == n {
            if self.best.as_ref().is_none_or(|(b, _)| self.bits > *b) {
                self.best = Some((self.bits.clone(), self.perm.clone()));
            }
            return;
        }
        for v in 0..n {
            if self.used[v] || self.color[v] != self.slot_cell[pos] {
                continue;
            }
            let mark = self.bits.len();
            for i in 0..pos {
                self.bits.push(self.g.has_edge(self.perm[i], v));
            }
            // the best string may have changed since the parent compared,
            // so compare the whole prefix
            let prune = match &self.best {
                Some((best, _)) => self.bits[..] < best[..self.bits.len()],
                None => false,
            };
            if !prune {
                self.used[v] = true;
                self.perm.push(v);
                self.rec(pos + 1);
                self.perm.pop();
                self.used[v] = false;
            }
            self.bits.truncate(mark);
        }
    }
}

/// Maximal adjacency string and the ordering that attains it.
fn search(g: &Graph) -> (Vec<bool>, Vec<usize>) {
    let color = refine(g);
    let mut slot_cell = color.clone();
    slot_cell.sort_unstable();
    let mut c = Canon {
        g,
        slot_cell,
        color,
        perm: Vec::new(),
        used: vec![false; g.n()],
        bits: Vec::new(),
        best: None,
    };
    c.rec(0);
    c.best.unwrap_or_default()
}

/// Label `"n:hex"` equal for two graphs iff they are isomorphic; `n <= 10`.
pub fn canonical_form(g: &Graph) -> Result<String> {
    cap_check("canonical form vertices", g.n(), CANONICAL_CAP)?;
    let (bits, _) = search(g);
    let mut s = format!("{}:", g.n());
    for chunk in bits.chunks(4) {
        let nib = chunk
            .iter()
            .enumerate()
            .fold(0u8, |acc, (i, &b)| acc | (u8::from(b) << (3 - i)));
        write!(s, "{nib:x}").unwrap();
    }
    Ok(s)
}

/// The isomorphic copy of `g` whose vertex `i` is the `i`-th vertex of the
/// canonical ordering.
pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    cap_check("canonical form vertices", g.n(), CANONICAL_CAP)?;
    let (_, perm) = search(g);
    Ok(g.induced_subgraph(&perm))
}

pub fn isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    if a.n() != b.n() || a.m() != b.m() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    #[test]
    fn labels() {
        let c4 = cycle(4);
        let k22 = complete_multipartite(&[2, 2]).unwrap();
        assert_eq!(canonical_form(&c4).unwrap(), canonical_form(&k22).unwrap());
        assert_ne!(
            canonical_form(&complete(3)).unwrap(),
            canonical_form(&path(3)).unwrap()
        );
        let c5 = cycle(5);
        assert!(isomorphic(&c5, &c5.complement()).unwrap());
        assert!(canonical_form(&complete(11)).is_err());
    }

    #[test]
    fn relabelling_invariance() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5)]).unwrap();
        let perm = [4, 2, 5, 0, 3, 1];
        let h = Graph::from_edges(6, g.edges().iter().map(|&(u, v)| (perm[u], perm[v]))).unwrap();
        assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        assert_eq!(canonical_graph(&g).unwrap(), canonical_graph(&h).unwrap());
    }
}
