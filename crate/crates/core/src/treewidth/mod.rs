//! Tree decompositions: a min-fill heuristic, validation, PACE `.td` files,
//! nice decompositions, and dynamic programs for `α₁`, `ω₁`, `χ₁`, `θ₁`.

mod dp;
mod nice;

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use dp::{dp_robust, dp_selection, DpStats};
pub use nice::{make_nice, NiceKind, NiceNode, NiceTreeDecomposition};

/// Bags on the nodes of a tree, given by its edge list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub tree: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "violation")]
pub enum Violation {
    NotATree,
    VertexOutOfRange { node: usize, v: usize },
    /// Condition (i): the vertex is in no bag.
    Uncovered { v: usize },
    /// Condition (ii): no bag holds both endpoints.
    EdgeUncovered { u: usize, v: usize },
    /// Condition (iii): the bags holding the vertex are not connected.
    Disconnected { v: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotATree => write!(f, "host graph is not a tree"),
            Violation::VertexOutOfRange { node, v } => write!(f, "bag {node} names vertex {v}"),
            Violation::Uncovered { v } => write!(f, "vertex {v} is in no bag"),
            Violation::EdgeUncovered { u, v } => write!(f, "no bag contains edge {u}-{v}"),
            Violation::Disconnected { v } => write!(f, "bags containing {v} are not connected"),
        }
    }
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.tree {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Checks the three decomposition conditions; the witness names the
    /// first one that fails.
    pub fn check(&self, g: &Graph) -> std::result::Result<(), Violation> {
        let k = self.bags.len();
        if k == 0 || self.tree.len() != k - 1 || self.tree.iter().any(|&(a, b)| a >= k || b >= k || a == b) {
            return Err(Violation::NotATree);
        }
        let adj = self.adjacency();
        let mut seen = vec![false; k];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if seen.contains(&false) {
            return Err(Violation::NotATree);
        }
        let n = g.n();
        let mut holders = vec![Vec::new(); n];
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= n {
                    return Err(Violation::VertexOutOfRange { node: i, v });
                }
                holders[v].push(i);
            }
        }
        if let Some(v) = (0..n).find(|&v| holders[v].is_empty()) {
            return Err(Violation::Uncovered { v });
        }
        for &(u, v) in g.edges() {
            if !holders[u].iter().any(|x| self.bags[*x].contains(&v)) {
                return Err(Violation::EdgeUncovered { u, v });
            }
        }
        // the holders of v induce a subtree iff they span |holders| - 1 tree
        // edges
        let mut inside = vec![0; n];
        for &(a, b) in &self.tree {
            for &v in &self.bags[a] {
                if self.bags[b].contains(&v) {
                    inside[v] += 1;
                }
            }
        }
        if let Some(v) = (0..n).find(|&v| inside[v] + 1 != holders[v].len()) {
            return Err(Violation::Disconnected { v });
        }
        Ok(())
    }
}

pub fn validate_decomposition(td: &TreeDecomposition, g: &Graph) -> Result<()> {
    td.check(g).map_err(|v| Error::InvalidDecomposition(v.to_string()))
}

/// Elimination by minimum fill-in, ties broken by degree and then id. Each
/// eliminated vertex gives the bag of itself and its remaining neighbours,
/// hung below the bag of the neighbour eliminated next.
pub fn heuristic_decomposition(g: &Graph) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition {
            bags: vec![Vec::new()],
            tree: Vec::new(),
        };
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    let mut bags = Vec::with_capacity(n);
    for _ in 0..n {
        let fill = |v: usize| {
            let nb: Vec<usize> = adj[v].iter().copied().collect();
            let mut missing = 0;
            for (i, &a) in nb.iter().enumerate() {
                missing += nb[i + 1..].iter().filter(|&&b| !adj[a].contains(&b)).count();
            }
            missing
        };
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (fill(v), adj[v].len(), v))
            .unwrap();
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
            adj[a].remove(&v);
        }
        let mut bag = nb;
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        alive[v] = false;
        order.push(v);
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let last = n - 1;
    let tree = (0..n - 1)
        .map(|i| {
            let v = order[i];
            let parent = bags[i]
                .iter()
                .filter(|&&w| w != v)
                .map(|&w| pos[w])
                .min()
                .unwrap_or(last);
            (i, parent)
        })
        .collect();
    TreeDecomposition { bags, tree }
}

/// PACE `.td` text: `s td <bags> <max bag> <n>`, one `b` line per bag and
/// one line per tree edge, all 1-based.
pub fn write_td(td: &TreeDecomposition, n: usize) -> String {
    let mut s = String::new();
    writeln!(s, "s td {} {} {}", td.bags.len(), td.width() + 1, n).unwrap();
    for (i, bag) in td.bags.iter().enumerate() {
        write!(s, "b {}", i + 1).unwrap();
        for v in bag {
            write!(s, " {}", v + 1).unwrap();
        }
        s.push('\n');
    }
    for &(a, b) in &td.tree {
        writeln!(s, "{} {}", a + 1, b + 1).unwrap();
    }
    s
}

/// Parses PACE `.td` text; returns the decomposition and the vertex count.
pub fn parse_td(text: &str) -> Result<(TreeDecomposition, usize)> {
    let bad = |line: usize, msg: &str| Error::Parse {
        line,
        message: msg.to_string(),
    };
    let mut header = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut tree = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        if toks.is_empty() || toks[0] == "c" {
            continue;
        }
        let nums = |from: usize| -> Result<Vec<usize>> {
            toks[from..]
                .iter()
                .map(|t| t.parse::<usize>().map_err(|_| bad(line, "expected a number")))
                .collect()
        };
        match toks[0] {
            "s" => {
                if toks.get(1) != Some(&"td") || toks.len() != 5 || header.is_some() {
                    return Err(bad(line, "expected 's td <bags> <max bag> <n>'"));
                }
                let h = nums(2)?;
                bags = vec![None; h[0]];
                header = Some((h[0], h[2]));
            }
            "b" => {
                let Some((k, n)) = header else {
                    return Err(bad(line, "bag before header"));
                };
                let vals = nums(1)?;
                let id = *vals.first().ok_or_else(|| bad(line, "missing bag id"))?;
                if id == 0 || id > k || bags[id - 1].is_some() {
                    return Err(bad(line, "bag id out of range or repeated"));
                }
                let mut bag = Vec::new();
                for &v in &vals[1..] {
                    if v == 0 || v > n {
                        return Err(bad(line, "vertex out of range"));
                    }
                    bag.push(v - 1);
                }
                bag.sort_unstable();
                bag.dedup();
                bags[id - 1] = Some(bag);
            }
            _ => {
                let Some((k, _)) = header else {
                    return Err(bad(line, "edge before header"));
                };
                let vals = nums(0)?;
                if vals.len() != 2 || vals.iter().any(|&x| x == 0 || x > k) {
                    return Err(bad(line, "expected a tree edge 'i j'"));
                }
                tree.push((vals[0] - 1, vals[1] - 1));
            }
        }
    }
    let (_, n) = header.ok_or_else(|| bad(0, "missing 's td' header"))?;
    let bags = bags
        .into_iter()
        .map(|b| b.ok_or_else(|| bad(0, "a declared bag is missing")))
        .collect::<Result<Vec<_>>>()?;
    Ok((TreeDecomposition { bags, tree }, n))
}
