//! Nice tree decompositions: leaves, introduce, forget and join nodes.

use serde::{Deserialize, Serialize};

use super::{validate_decomposition, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "vertex")]
pub enum NiceKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NiceNode {
    pub bag: Vec<usize>,
    pub kind: NiceKind,
    pub children: Vec<usize>,
}

/// Rooted binary decomposition; leaf and root bags are arbitrary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
    pub root: usize,
}

impl NiceTreeDecomposition {
    pub fn width(&self) -> usize {
        self.nodes.iter().map(|x| x.bag.len()).max().unwrap_or(0).saturating_sub(1)
    }

    /// The plain decomposition on the same nodes.
    pub fn as_tree_decomposition(&self) -> TreeDecomposition {
        TreeDecomposition {
            bags: self.nodes.iter().map(|x| x.bag.clone()).collect(),
            tree: self
                .nodes
                .iter()
                .enumerate()
                .flat_map(|(i, x)| x.children.iter().map(move |&c| (c, i)))
                .collect(),
        }
    }

    /// Node ids with every child before its parent.
    pub fn postorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(self.root, false)];
        while let Some((x, expanded)) = stack.pop() {
            if expanded {
                out.push(x);
            } else {
                stack.push((x, true));
                for &c in self.nodes[x].children.iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        out
    }

    /// Checks node kinds against bag differences and the underlying
    /// decomposition conditions.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |i: usize, msg: &str| Err(Error::InvalidDecomposition(format!("node {i}: {msg}")));
        if self.postorder().len() != self.nodes.len() {
            return Err(Error::InvalidDecomposition("nodes unreachable from the root".into()));
        }
        for (i, x) in self.nodes.iter().enumerate() {
            if x.bag.windows(2).any(|w| w[0] >= w[1]) {
                return bad(i, "bag not sorted");
            }
            let child = |j: usize| &self.nodes[x.children[j]].bag;
            let ok = match (x.kind, x.children.len()) {
                (NiceKind::Leaf, 0) => true,
                (NiceKind::Introduce(v), 1) => {
                    !child(0).contains(&v) && with(child(0), v) == x.bag
                }
                (NiceKind::Forget(v), 1) => child(0).contains(&v) && with(&x.bag, v) == *child(0),
                (NiceKind::Join, 2) => *child(0) == x.bag && *child(1) == x.bag,
                _ => false,
            };
            if !ok {
                return bad(i, "kind does not match bags");
            }
        }
        validate_decomposition(&self.as_tree_decomposition(), g)
    }
}

fn with(bag: &[usize], v: usize) -> Vec<usize> {
    let mut b = bag.to_vec();
    b.push(v);
    b.sort_unstable();
    b
}

fn subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

/// Contracts tree edges whose bags are nested, so no bag lies inside a
/// neighbouring one; at most `n` bags remain.
fn compact(td: &TreeDecomposition) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let k = td.bags.len();
    let mut bags = td.bags.clone();
    let mut adj = td.adjacency();
    let mut alive = vec![true; k];
    loop {
        let mut merged = false;
        for a in 0..k {
            if !alive[a] {
                continue;
            }
            let Some(b) = adj[a].iter().copied().find(|&b| subset(&bags[a], &bags[b])) else {
                continue;
            };
            // fold a into b
            let nbs = std::mem::take(&mut adj[a]);
            for c in nbs {
                adj[c].retain(|&x| x != a);
                if c != b {
                    adj[c].push(b);
                    adj[b].push(c);
                }
            }
            alive[a] = false;
            bags[a].clear();
            merged = true;
        }
        if !merged {
            break;
        }
    }
    let ids: Vec<usize> = (0..k).filter(|&a| alive[a]).collect();
    let mut index = vec![usize::MAX; k];
    for (i, &a) in ids.iter().enumerate() {
        index[a] = i;
    }
    let out_bags = ids.iter().map(|&a| bags[a].clone()).collect();
    let out_adj = ids
        .iter()
        .map(|&a| {
            let mut v: Vec<usize> = adj[a].iter().map(|&c| index[c]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    (out_bags, out_adj)
}

struct Builder {
    nodes: Vec<NiceNode>,
}

impl Builder {
    fn push(&mut self, bag: Vec<usize>, kind: NiceKind, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { bag, kind, children });
        self.nodes.len() - 1
    }

    /// Forget `from \ to`, then introduce `to \ from`, on top of `node`.
    fn chain(&mut self, mut node: usize, from: &[usize], to: &[usize]) -> usize {
        let mut bag = from.to_vec();
        for &v in from.iter().filter(|v| !to.contains(v)) {
            bag.retain(|&x| x != v);
            node = self.push(bag.clone(), NiceKind::Forget(v), vec![node]);
        }
        for &v in to.iter().filter(|v| !from.contains(v)) {
            bag = with(&bag, v);
            node = self.push(bag.clone(), NiceKind::Introduce(v), vec![node]);
        }
        node
    }
}

/// Nice form of a valid decomposition, of the same width. Nested bags are
/// contracted first; each remaining tree edge becomes a forget chain
/// followed by an introduce chain, and a node with several children becomes
/// a chain of joins.
pub fn make_nice(td: &TreeDecomposition, g: &Graph) -> Result<NiceTreeDecomposition> {
    validate_decomposition(td, g)?;
    let (bags, adj) = compact(td);
    let k = bags.len();
    let mut parent = vec![usize::MAX; k];
    let mut order = vec![0];
    let mut seen = vec![false; k];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        i += 1;
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                order.push(y);
            }
        }
    }
    let mut b = Builder { nodes: Vec::new() };
    // top node (with the bag of x) built for each decomposition node
    let mut top = vec![usize::MAX; k];
    for &x in order.iter().rev() {
        let kids: Vec<usize> = adj[x].iter().copied().filter(|&y| parent[y] == x).collect();
        let mut tops: Vec<usize> = kids
            .iter()
            .map(|&c| b.chain(top[c], &bags[c], &bags[x]))
            .collect();
        top[x] = match tops.len() {
            0 => b.push(bags[x].clone(), NiceKind::Leaf, Vec::new()),
            _ => {
                let mut acc = tops.remove(0);
                for t in tops {
                    acc = b.push(bags[x].clone(), NiceKind::Join, vec![acc, t]);
                }
                acc
            }
        };
    }
    let nice = NiceTreeDecomposition {
        nodes: b.nodes,
        root: top[0],
    };
    debug_assert!(nice.validate(g).is_ok());
    Ok(nice)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;
    use crate::treewidth::heuristic_decomposition;

    #[test]
    fn small_shapes() {
        let k3 = complete(3);
        let one = TreeDecomposition {
            bags: vec![vec![0, 1, 2]],
            tree: Vec::new(),
        };
        let nice = make_nice(&one, &k3).unwrap();
        nice.validate(&k3).unwrap();
        assert!(nice.nodes.len() <= 12);
        let p4 = path(4);
        let nice = make_nice(&heuristic_decomposition(&p4), &p4).unwrap();
        nice.validate(&p4).unwrap();
        assert_eq!(nice.width(), 1);
    }

    #[test]
    fn random_inputs_keep_width() {
        let mut rng = rng_from_seed(8);
        for i in 0..100 {
            let g = erdos_renyi_with(3 + i % 12, 0.3, &mut rng);
            let td = heuristic_decomposition(&g);
            let nice = make_nice(&td, &g).unwrap();
            nice.validate(&g).unwrap();
            assert_eq!(nice.width(), td.width());
            assert!(nice.nodes.len() <= 4 * g.n().max(1), "{} nodes for n = {}", nice.nodes.len(), g.n());
        }
    }
}
