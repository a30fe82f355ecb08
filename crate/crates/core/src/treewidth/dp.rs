//! Dynamic programs for `α₁`, `ω₁`, `χ₁` and `θ₁` over a nice tree
//! decomposition.
//!
//! Every edge is decided exactly once, at the forget node of whichever
//! endpoint is forgotten first; the other endpoint is still in the bag
//! there. A removed edge is charged to one of its endpoints and each vertex
//! can be charged once, so the selection part of a state is a single bit per
//! bag vertex saying whether that vertex has spent its edge. Each parameter
//! adds its own payload:
//! - `α₁`: which bag vertices are in the independent set;
//! - `χ₁`: the bag coloring up to renaming (a decision for fixed `k`);
//! - `ω₁`: for every clique `K` of the bag, the largest number of forgotten
//!   vertices that still extend it;
//! - `θ₁`: for every partition of the bag into groups, each flagged when it
//!   already holds a forgotten vertex, the fewest closed groups.

use std::collections::HashMap;
use std::hash::Hash;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{NiceKind, NiceNode, NiceTreeDecomposition};
use crate::error::{cap_check, Error, Result};
use crate::exact::robust::certify;
use crate::exact::{Caps, ParameterResult, Robust, Stats};
use crate::graph::{norm, Edge, Graph};

type Mask = u32;

fn insert_bit(m: Mask, pos: usize, bit: bool) -> Mask {
    let low = m & ((1 << pos) - 1);
    let high = (m >> pos) << (pos + 1);
    low | high | (Mask::from(bit) << pos)
}

fn remove_bit(m: Mask, pos: usize) -> Mask {
    let low = m & ((1 << pos) - 1);
    let high = (m >> (pos + 1)) << pos;
    low | high
}

/// Relabels by first appearance.
fn canonical(labels: &mut [u8]) -> Vec<u8> {
    let mut map = Vec::new();
    for x in labels.iter_mut() {
        let i = match map.iter().position(|&y| y == *x) {
            Some(i) => i,
            None => {
                map.push(*x);
                map.len() - 1
            }
        };
        *x = i as u8;
    }
    // map[new] = old
    map
}

trait Problem {
    type P: Clone + Eq + Hash;
    const MAXIMIZE: bool;

    fn leaf(&self) -> Self::P;
    /// `bag` already contains the new vertex at `pos`.
    fn introduce(&self, p: &Self::P, bag: &[usize], pos: usize) -> Vec<Self::P>;
    /// `(must, may)` masks of bag neighbours of `bag[pos]` whose edge to it
    /// must or may be removed.
    fn removal(&self, p: &Self::P, pos: usize, nbrs: Mask) -> (Mask, Mask);
    /// `bag` still contains the forgotten vertex; `kept` are the neighbours
    /// whose edge survives. Returns the payload and a gain.
    fn forget(&self, p: &Self::P, bag: &[usize], pos: usize, kept: Mask) -> Option<(Self::P, i64)>;
    /// Returns the payload and a gain added to the summed values.
    fn join(&self, a: &Self::P, b: &Self::P) -> Option<(Self::P, i64)>;
    /// Objective at the empty root bag.
    fn score(&self, p: &Self::P, value: i64) -> i64;
}

#[derive(Clone, Debug)]
enum Back {
    Leaf,
    Unary(usize, Vec<(usize, usize)>),
    Join(usize, usize),
}

struct Entry<P> {
    status: Mask,
    payload: P,
    value: i64,
    back: Back,
}

struct Table<P: Eq + Hash> {
    entries: Vec<Entry<P>>,
    index: HashMap<(Mask, P), usize>,
}

impl<P: Clone + Eq + Hash> Table<P> {
    fn new() -> Self {
        Table {
            entries: Vec::new(),
            index: HashMap::new(),
        }
    }

    fn offer(&mut self, status: Mask, payload: P, value: i64, back: Back) {
        match self.index.get(&(status, payload.clone())) {
            Some(&i) => {
                if value > self.entries[i].value {
                    self.entries[i].value = value;
                    self.entries[i].back = back;
                }
            }
            None => {
                self.index.insert((status, payload.clone()), self.entries.len());
                self.entries.push(Entry {
                    status,
                    payload,
                    value,
                    back,
                });
            }
        }
    }
}

/// Table sizes seen during a run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DpStats {
    pub nodes: usize,
    pub max_states: usize,
    pub total_states: usize,
}

/// Same tree with empty leaf and root bags, so the engine only sees
/// introduce, forget and join steps above empty leaves.
fn expand(t: &NiceTreeDecomposition) -> (Vec<NiceNode>, usize) {
    let mut nodes: Vec<NiceNode> = Vec::with_capacity(t.nodes.len());
    let mut map = vec![0; t.nodes.len()];
    for x in t.postorder() {
        let node = &t.nodes[x];
        let id = if node.kind == NiceKind::Leaf {
            nodes.push(NiceNode {
                bag: Vec::new(),
                kind: NiceKind::Leaf,
                children: Vec::new(),
            });
            let mut bag = Vec::new();
            for &v in &node.bag {
                bag.push(v);
                nodes.push(NiceNode {
                    bag: bag.clone(),
                    kind: NiceKind::Introduce(v),
                    children: vec![nodes.len() - 1],
                });
            }
            nodes.len() - 1
        } else {
            nodes.push(NiceNode {
                bag: node.bag.clone(),
                kind: node.kind,
                children: node.children.iter().map(|&c| map[c]).collect(),
            });
            nodes.len() - 1
        };
        map[x] = id;
    }
    let mut root = map[t.root];
    let mut bag = t.nodes[t.root].bag.clone();
    while let Some(v) = bag.pop() {
        nodes.push(NiceNode {
            bag: bag.clone(),
            kind: NiceKind::Forget(v),
            children: vec![root],
        });
        root = nodes.len() - 1;
    }
    (nodes, root)
}

struct Outcome {
    /// Objective value, `None` when no state reaches the root.
    score: Option<i64>,
    pairs: Vec<(usize, usize)>,
    stats: DpStats,
}

fn run<Q: Problem>(g: &Graph, t: &NiceTreeDecomposition, q: &Q) -> Outcome {
    let (nodes, root) = expand(t);
    let mut tables: Vec<Option<Table<Q::P>>> = (0..nodes.len()).map(|_| None).collect();
    let mut stats = DpStats {
        nodes: nodes.len(),
        ..DpStats::default()
    };
    // expanded nodes are already in postorder
    for (x, node) in nodes.iter().enumerate() {
        let mut out = Table::new();
        match node.kind {
            NiceKind::Leaf => out.offer(0, q.leaf(), 0, Back::Leaf),
            NiceKind::Introduce(v) => {
                let child = tables[node.children[0]].as_ref().unwrap();
                let pos = node.bag.iter().position(|&w| w == v).unwrap();
                for (i, e) in child.entries.iter().enumerate() {
                    let status = insert_bit(e.status, pos, false);
                    for p in q.introduce(&e.payload, &node.bag, pos) {
                        out.offer(status, p, e.value, Back::Unary(i, Vec::new()));
                    }
                }
            }
            NiceKind::Forget(v) => {
                let c = node.children[0];
                let bag = &nodes[c].bag;
                let child = tables[c].as_ref().unwrap();
                let pos = bag.iter().position(|&w| w == v).unwrap();
                let nbrs = (0..bag.len())
                    .filter(|&j| g.has_edge(v, bag[j]))
                    .fold(0, |m, j| m | 1 << j);
                for (i, e) in child.entries.iter().enumerate() {
                    forget_entry(q, bag, pos, nbrs, i, e, &mut out);
                }
            }
            NiceKind::Join => {
                let a = tables[node.children[0]].as_ref().unwrap();
                let b = tables[node.children[1]].as_ref().unwrap();
                for (i, ea) in a.entries.iter().enumerate() {
                    for (j, eb) in b.entries.iter().enumerate() {
                        if ea.status & eb.status != 0 {
                            continue;
                        }
                        if let Some((p, gain)) = q.join(&ea.payload, &eb.payload) {
                            let value = ea.value + eb.value + gain;
                            out.offer(ea.status | eb.status, p, value, Back::Join(i, j));
                        }
                    }
                }
            }
        }
        stats.max_states = stats.max_states.max(out.entries.len());
        stats.total_states += out.entries.len();
        tables[x] = Some(out);
    }
    let top = tables[root].as_ref().unwrap();
    let best = top
        .entries
        .iter()
        .enumerate()
        .map(|(i, e)| (q.score(&e.payload, e.value), i))
        .reduce(|a, b| {
            let better = if Q::MAXIMIZE { b.0 > a.0 } else { b.0 < a.0 };
            if better {
                b
            } else {
                a
            }
        });
    let Some((score, idx)) = best else {
        return Outcome {
            score: None,
            pairs: Vec::new(),
            stats,
        };
    };
    let mut pairs = Vec::new();
    let mut stack = vec![(root, idx)];
    while let Some((x, i)) = stack.pop() {
        let e = &tables[x].as_ref().unwrap().entries[i];
        match &e.back {
            Back::Leaf => {}
            Back::Unary(c, ps) => {
                pairs.extend_from_slice(ps);
                stack.push((nodes[x].children[0], *c));
            }
            Back::Join(a, b) => {
                stack.push((nodes[x].children[0], *a));
                stack.push((nodes[x].children[1], *b));
            }
        }
    }
    Outcome {
        score: Some(score),
        pairs,
        stats,
    }
}

/// Every way to decide the edges from `bag[pos]` to its bag neighbours.
fn forget_entry<Q: Problem>(
    q: &Q,
    bag: &[usize],
    pos: usize,
    nbrs: Mask,
    i: usize,
    e: &Entry<Q::P>,
    out: &mut Table<Q::P>,
) {
    let v = bag[pos];
    let (must, may) = q.removal(&e.payload, pos, nbrs);
    let spare = may & !must;
    let v_free = e.status >> pos & 1 == 0;
    let mut sub = spare;
    loop {
        let removed = must | sub;
        if let Some((p, gain)) = q.forget(&e.payload, bag, pos, nbrs & !removed) {
            // the removed edge charged to v, if any; the rest go to the
            // other endpoint
            let mut owners = vec![None];
            if v_free {
                owners.extend((0..bag.len()).filter(|&j| removed >> j & 1 == 1).map(Some));
            }
            for own in owners {
                let others = removed & !own.map_or(0, |j| 1 << j);
                if others & e.status != 0 {
                    continue;
                }
                let status = remove_bit(e.status | others, pos);
                let mut pairs: Vec<(usize, usize)> = (0..bag.len())
                    .filter(|&j| others >> j & 1 == 1)
                    .map(|j| (bag[j], v))
                    .collect();
                if let Some(j) = own {
                    pairs.push((v, bag[j]));
                }
                out.offer(status, p.clone(), e.value + gain, Back::Unary(i, pairs));
            }
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & spare;
    }
}

struct Alpha;

impl Problem for Alpha {
    type P = Mask;
    const MAXIMIZE: bool = true;

    fn leaf(&self) -> Mask {
        0
    }

    fn introduce(&self, p: &Mask, _: &[usize], pos: usize) -> Vec<Mask> {
        vec![insert_bit(*p, pos, false), insert_bit(*p, pos, true)]
    }

    fn removal(&self, p: &Mask, pos: usize, nbrs: Mask) -> (Mask, Mask) {
        // only edges inside the set need to go
        let m = if p >> pos & 1 == 1 { nbrs & p } else { 0 };
        (m, m)
    }

    fn forget(&self, p: &Mask, _: &[usize], pos: usize, _: Mask) -> Option<(Mask, i64)> {
        Some((remove_bit(*p, pos), i64::from(p >> pos & 1)))
    }

    fn join(&self, a: &Mask, b: &Mask) -> Option<(Mask, i64)> {
        (a == b).then_some((*a, 0))
    }

    fn score(&self, _: &Mask, value: i64) -> i64 {
        value
    }
}

struct Chi {
    k: usize,
}

impl Problem for Chi {
    type P = Vec<u8>;
    const MAXIMIZE: bool = true;

    fn leaf(&self) -> Vec<u8> {
        Vec::new()
    }

    fn introduce(&self, p: &Vec<u8>, _: &[usize], pos: usize) -> Vec<Vec<u8>> {
        let used = p.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        (0..=used.min(self.k - 1))
            .map(|c| {
                let mut q = p.clone();
                q.insert(pos, c as u8);
                canonical(&mut q);
                q
            })
            .collect()
    }

    fn removal(&self, p: &Vec<u8>, pos: usize, nbrs: Mask) -> (Mask, Mask) {
        let same = (0..p.len())
            .filter(|&j| j != pos && p[j] == p[pos])
            .fold(0, |m, j| m | 1 << j);
        (same & nbrs, same & nbrs)
    }

    fn forget(&self, p: &Vec<u8>, _: &[usize], pos: usize, _: Mask) -> Option<(Vec<u8>, i64)> {
        let mut q = p.clone();
        q.remove(pos);
        canonical(&mut q);
        Some((q, 0))
    }

    fn join(&self, a: &Vec<u8>, b: &Vec<u8>) -> Option<(Vec<u8>, i64)> {
        (a == b).then(|| (a.clone(), 0))
    }

    fn score(&self, _: &Vec<u8>, _: i64) -> i64 {
        0
    }
}

const NONE: u8 = u8::MAX;

struct Omega<'a> {
    g: &'a Graph,
}

fn best(a: u8, b: u8) -> u8 {
    match (a, b) {
        (NONE, x) | (x, NONE) => x,
        (x, y) => x.max(y),
    }
}

impl Problem for Omega<'_> {
    type P = Vec<u8>;
    const MAXIMIZE: bool = false;

    fn leaf(&self) -> Vec<u8> {
        vec![0]
    }

    fn introduce(&self, p: &Vec<u8>, bag: &[usize], pos: usize) -> Vec<Vec<u8>> {
        let v = bag[pos];
        let q = (0..1 << bag.len())
            .map(|k: usize| {
                let old = remove_bit(k as Mask, pos) as usize;
                if k >> pos & 1 == 0 {
                    p[old]
                } else {
                    // nothing forgotten is adjacent to a new vertex
                    let clique = (0..bag.len()).all(|j| k >> j & 1 == 0 || j == pos || self.g.has_edge(v, bag[j]))
                        && p[old] != NONE;
                    if clique {
                        0
                    } else {
                        NONE
                    }
                }
            })
            .collect();
        vec![q]
    }

    fn removal(&self, _: &Vec<u8>, _: usize, nbrs: Mask) -> (Mask, Mask) {
        (0, nbrs)
    }

    fn forget(&self, p: &Vec<u8>, bag: &[usize], pos: usize, kept: Mask) -> Option<(Vec<u8>, i64)> {
        let q = (0..1 << (bag.len() - 1))
            .map(|k: usize| {
                let wide = insert_bit(k as Mask, pos, false);
                let mut w = p[wide as usize];
                if wide & !kept == 0 {
                    let with_v = p[(wide | 1 << pos) as usize];
                    if with_v != NONE {
                        w = best(w, with_v + 1);
                    }
                }
                w
            })
            .collect();
        Some((q, 0))
    }

    fn join(&self, a: &Vec<u8>, b: &Vec<u8>) -> Option<(Vec<u8>, i64)> {
        Some((a.iter().zip(b).map(|(&x, &y)| best(x, y)).collect(), 0))
    }

    fn score(&self, p: &Vec<u8>, _: i64) -> i64 {
        i64::from(p[0])
    }
}

/// `(group labels, flags, closed groups)`, kept sorted and free of
/// dominated entries. Counts are relative to the smallest one, which lives
/// in the table value; absolute counts would make payloads grow with `n`.
type Profile = Vec<(Vec<u8>, u8, u16)>;

struct Theta<'a> {
    g: &'a Graph,
}

/// Canonical labels with flags carried along; `flags` is indexed by the
/// labels before relabelling.
fn relabel(mut labels: Vec<u8>, flags: u8) -> (Vec<u8>, u8) {
    let map = canonical(&mut labels);
    let f = map
        .iter()
        .enumerate()
        .fold(0u8, |acc, (new, &old)| acc | ((flags >> old & 1) << new));
    (labels, f)
}

fn tidy(mut p: Profile) -> (Profile, i64) {
    let base = p.iter().map(|e| e.2).min().unwrap_or(0);
    for e in &mut p {
        e.2 -= base;
    }
    p.sort_unstable();
    let mut out: Profile = Vec::with_capacity(p.len());
    for (i, e) in p.iter().enumerate() {
        // fewer flags and no more closed groups is at least as good
        let dominated = p.iter().enumerate().any(|(j, o)| {
            j != i && o.0 == e.0 && o.1 & !e.1 == 0 && o.2 <= e.2 && (o.1 != e.1 || o.2 < e.2 || j < i)
        });
        if !dominated {
            out.push(e.clone());
        }
    }
    (out, i64::from(base))
}

impl Problem for Theta<'_> {
    type P = Profile;
    const MAXIMIZE: bool = true;

    fn leaf(&self) -> Profile {
        vec![(Vec::new(), 0, 0)]
    }

    fn introduce(&self, p: &Profile, bag: &[usize], pos: usize) -> Vec<Profile> {
        let v = bag[pos];
        let mut q = Vec::new();
        for (labels, flags, count) in p {
            let groups = labels.iter().map(|&l| l + 1).max().unwrap_or(0);
            for grp in 0..=groups {
                if grp < groups {
                    if flags >> grp & 1 == 1 {
                        continue;
                    }
                    // old position j sits at j or j + 1 in the new bag
                    let fits = labels.iter().enumerate().all(|(j, &l)| {
                        let w = bag[if j < pos { j } else { j + 1 }];
                        l != grp || self.g.has_edge(v, w)
                    });
                    if !fits {
                        continue;
                    }
                }
                let mut nl = labels.clone();
                nl.insert(pos, grp);
                let (nl, nf) = relabel(nl, *flags);
                q.push((nl, nf, *count));
            }
        }
        // the all-new-groups extension keeps the minimum at zero
        let (q, base) = tidy(q);
        debug_assert_eq!(base, 0);
        vec![q]
    }

    fn removal(&self, _: &Profile, _: usize, nbrs: Mask) -> (Mask, Mask) {
        (0, nbrs)
    }

    fn forget(&self, p: &Profile, _: &[usize], pos: usize, kept: Mask) -> Option<(Profile, i64)> {
        let mut q = Vec::new();
        for (labels, flags, count) in p {
            let grp = labels[pos];
            let mates: Vec<usize> = (0..labels.len()).filter(|&j| j != pos && labels[j] == grp).collect();
            if mates.iter().any(|&j| kept >> j & 1 == 0) {
                continue;
            }
            let mut nl = labels.clone();
            nl.remove(pos);
            if mates.is_empty() {
                let (nl, nf) = relabel(nl, flags & !(1 << grp));
                q.push((nl, nf, count + 1));
            } else {
                let (nl, nf) = relabel(nl, flags | 1 << grp);
                q.push((nl, nf, *count));
            }
        }
        (!q.is_empty()).then(|| tidy(q))
    }

    fn join(&self, a: &Profile, b: &Profile) -> Option<(Profile, i64)> {
        let mut q = Vec::new();
        for (la, fa, ca) in a {
            for (lb, fb, cb) in b {
                // forgotten vertices on different sides are never adjacent
                if la == lb && fa & fb == 0 {
                    q.push((la.clone(), fa | fb, ca + cb));
                }
            }
        }
        (!q.is_empty()).then(|| tidy(q))
    }

    fn score(&self, p: &Profile, value: i64) -> i64 {
        value + i64::from(p[0].2)
    }
}

/// Value of `α₁`, `ω₁`, `χ₁` or `θ₁` together with the removed edges of an
/// optimal selection, straight from the tables.
pub fn dp_selection(
    g: &Graph,
    t: &NiceTreeDecomposition,
    which: Robust,
    caps: &Caps,
) -> Result<(usize, Vec<Edge>, DpStats)> {
    cap_check("decomposition width", t.width(), caps.dp_width.min(30))?;
    t.validate(g)?;
    let out = match which {
        Robust::Alpha => run(g, t, &Alpha),
        Robust::Omega => run(g, t, &Omega { g }),
        Robust::Theta => run(g, t, &Theta { g }),
        Robust::Chi if g.n() == 0 => run(g, t, &Alpha),
        Robust::Chi => {
            // chi <= width + 1 guarantees termination
            let mut states = 0;
            let mut k = 1;
            loop {
                let mut o = run(g, t, &Chi { k });
                states += o.stats.total_states;
                if o.score.is_some() {
                    o.stats.total_states = states;
                    o.score = Some(k as i64);
                    break o;
                }
                k += 1;
            }
        }
        Robust::ChiPrime => {
            return Err(Error::InvalidArgument(
                "the decomposition program covers chi1, omega1, alpha1 and theta1".into(),
            ))
        }
    };
    let value = out.score.expect("every program has a root state") as usize;
    let mut removed: Vec<Edge> = out.pairs.iter().map(|&(a, b)| norm(a, b)).collect();
    removed.sort_unstable();
    Ok((value, removed, out.stats))
}

/// [`dp_selection`] with a certificate rebuilt from the selection. The
/// certificate step solves the classical problem on `G - F` exactly, so it
/// is the expensive part on large inputs.
pub fn dp_robust(
    g: &Graph,
    t: &NiceTreeDecomposition,
    which: Robust,
    caps: &Caps,
) -> Result<(ParameterResult, DpStats)> {
    let start = Instant::now();
    let (value, removed, stats) = dp_selection(g, t, which, caps)?;
    let (checked, certificate, _) = certify(g, &removed, 1, which);
    if checked != value {
        return Err(Error::Certificate(format!(
            "program value {value} but its selection gives {checked}"
        )));
    }
    let result = ParameterResult {
        parameter: which.parameter(),
        s: 1,
        value,
        certificate,
        stats: Stats {
            nodes: stats.total_states as u64,
            elapsed_ms: Some(start.elapsed().as_secs_f64() * 1e3),
        },
    };
    Ok((result, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;
    use crate::treewidth::{heuristic_decomposition, make_nice};

    fn dp(g: &Graph, w: Robust) -> usize {
        let t = make_nice(&heuristic_decomposition(g), g).unwrap();
        dp_robust(g, &t, w, &Caps::default()).unwrap().0.value
    }

    #[test]
    fn bit_helpers() {
        assert_eq!(insert_bit(0b101, 1, true), 0b1011);
        assert_eq!(remove_bit(0b1011, 1), 0b101);
        let mut l = vec![3, 1, 3, 0];
        canonical(&mut l);
        assert_eq!(l, vec![0, 1, 0, 2]);
    }

    #[test]
    fn named_values() {
        let k4 = complete(4);
        assert_eq!(dp(&k4, Robust::Chi), 2);
        assert_eq!(dp(&k4, Robust::Omega), 2);
        assert_eq!(dp(&k4, Robust::Alpha), 3);
        assert_eq!(dp(&k4, Robust::Theta), 3);
        assert_eq!(dp(&path(7), Robust::Chi), 1);
        assert_eq!(dp(&Graph::empty(3), Robust::Theta), 3);
        assert_eq!(dp(&Graph::empty(0), Robust::Chi), 0);
    }
}
