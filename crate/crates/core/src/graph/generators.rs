//! Named graph families and the constructions used as tightness witnesses.
//!
//! Randomized generators draw from `ChaCha8Rng::seed_from_u64(seed)`, which is
//! portable across platforms, so a `(params, seed)` pair always yields the
//! same graph.

use std::collections::BTreeSet;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{norm, Edge, Graph};
use crate::error::{Error, Result};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, edges).unwrap()
}

/// The cycle `C_n`; panics for `n < 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

/// The path on `n` vertices.
pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

/// The star `K_{1,m}` with center 0.
pub fn star(m: usize) -> Graph {
    Graph::from_edges(m + 1, (1..=m).map(|i| (0, i))).unwrap()
}

/// Complete multipartite graph; parts are consecutive id ranges.
pub fn complete_multipartite(sizes: &[usize]) -> Result<Graph> {
    if sizes.is_empty() {
        return Err(Error::InvalidArgument("empty size list".into()));
    }
    if sizes.contains(&0) {
        return Err(Error::InvalidArgument("part sizes must be positive".into()));
    }
    let part = part_labels(sizes);
    let n = part.len();
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, edges.filter(|&(u, v)| part[u] != part[v]).collect::<Vec<_>>())
}

fn part_labels(sizes: &[usize]) -> Vec<usize> {
    sizes
        .iter()
        .enumerate()
        .flat_map(|(i, &s)| std::iter::repeat_n(i, s))
        .collect()
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("probability {p} outside [0, 1]")))
    }
}

/// `r` parts of size `m`; every cross-part pair joined independently with
/// probability `p`.
pub fn random_multipartite(m: usize, r: usize, p: f64, seed: u64) -> Result<Graph> {
    check_p(p)?;
    if m == 0 || r == 0 {
        return Err(Error::InvalidArgument("part count and size must be positive".into()));
    }
    let part = part_labels(&vec![m; r]);
    let n = m * r;
    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if part[u] != part[v] && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    check_p(p)?;
    let mut rng = rng_from_seed(seed);
    Ok(erdos_renyi_with(n, p, &mut rng))
}

/// `G(n, p)` drawn from a caller-supplied generator.
pub fn erdos_renyi_with<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Random bipartite graph with sides `0..a` and `a..a+b`.
pub fn random_bipartite(a: usize, b: usize, p: f64, seed: u64) -> Result<Graph> {
    check_p(p)?;
    let mut rng = rng_from_seed(seed);
    Ok(random_bipartite_with(a, b, p, &mut rng))
}

pub fn random_bipartite_with<R: Rng>(a: usize, b: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in a..a + b {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(a + b, edges).unwrap()
}

/// Uniform-attachment random tree: vertex `i` joins a random earlier vertex.
pub fn random_tree_with<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let edges: Vec<Edge> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    Graph::from_edges(n, edges).unwrap()
}

/// Random triangulated polygon on `n >= 3` vertices (maximal outerplanar).
pub fn random_maximal_outerplanar<R: Rng>(n: usize, rng: &mut R) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidArgument("outerplanar triangulation needs n >= 3".into()));
    }
    let mut edges: BTreeSet<Edge> = (0..n).map(|i| norm(i, (i + 1) % n)).collect();
    let mut stack = vec![(0..n).collect::<Vec<usize>>()];
    while let Some(poly) = stack.pop() {
        if poly.len() < 4 {
            continue;
        }
        // triangle on the chord poly[0]-poly[last] with a random apex
        let last = poly.len() - 1;
        let apex = rng.gen_range(1..last);
        edges.insert(norm(poly[0], poly[apex]));
        edges.insert(norm(poly[apex], poly[last]));
        stack.push(poly[..=apex].to_vec());
        stack.push(poly[apex..].to_vec());
    }
    Graph::from_edges(n, edges)
}

/// Random maximal planar graph: stacked insertions into random faces
/// followed by `flips` random edge flips (each flip keeps a triangulation).
pub fn random_maximal_planar<R: Rng>(n: usize, flips: usize, rng: &mut R) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidArgument("planar triangulation needs n >= 3".into()));
    }
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 1, 2]];
    let mut edges: BTreeSet<Edge> = [(0, 1), (1, 2), (0, 2)].into_iter().collect();
    for v in 3..n {
        let i = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(i);
        faces.extend([[a, b, v], [b, c, v], [c, a, v]]);
        edges.extend([norm(a, v), norm(b, v), norm(c, v)]);
    }
    let mut degree = vec![0usize; n];
    for &(u, v) in &edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    for _ in 0..flips {
        if n < 5 {
            break;
        }
        let list: Vec<Edge> = edges.iter().copied().collect();
        let &(u, w) = list.choose(rng).unwrap();
        if degree[u] <= 3 || degree[w] <= 3 {
            continue;
        }
        let holding: Vec<usize> = (0..faces.len())
            .filter(|&i| faces[i].contains(&u) && faces[i].contains(&w))
            .collect();
        if holding.len() != 2 {
            continue;
        }
        let apex = |f: [usize; 3]| *f.iter().find(|&&x| x != u && x != w).unwrap();
        let (x, y) = (apex(faces[holding[0]]), apex(faces[holding[1]]));
        if x == y || edges.contains(&norm(x, y)) {
            continue;
        }
        edges.remove(&norm(u, w));
        edges.insert(norm(x, y));
        degree[u] -= 1;
        degree[w] -= 1;
        degree[x] += 1;
        degree[y] += 1;
        faces[holding[0]] = [u, x, y];
        faces[holding[1]] = [w, x, y];
    }
    Graph::from_edges(n, edges)
}

/// Walecki's decomposition of `K_{2k+1}` into `k` Hamiltonian cycles.
/// Vertices `0..2k` sit on a circle and `2k` is the hub.
pub fn walecki_cycles(k: usize) -> Result<Vec<Graph>> {
    if k == 0 {
        return Err(Error::InvalidArgument("walecki needs k >= 1".into()));
    }
    let ring = 2 * k;
    let hub = ring;
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let seq: Vec<usize> = (0..ring)
            .map(|j| {
                let step = j.div_ceil(2);
                if j % 2 == 1 {
                    (i + step) % ring
                } else {
                    (i + ring - step % ring) % ring
                }
            })
            .collect();
        let mut edges = vec![(hub, seq[0]), (seq[ring - 1], hub)];
        edges.extend(seq.windows(2).map(|w| (w[0], w[1])));
        out.push(Graph::from_edges(ring + 1, edges)?);
    }
    Ok(out)
}

/// `k` parts of `3k` vertices, complete bipartite between parts and `k`
/// disjoint triangles inside each part.
pub fn arboricity_gadget(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidArgument("gadget needs k >= 1".into()));
    }
    let size = 3 * k;
    let n = k * size;
    let part = |v: usize| v / size;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let cross = part(u) != part(v);
            // triangles are consecutive triples inside a part
            let same_triangle = !cross && (u % size) / 3 == (v % size) / 3;
            if cross || same_triangle {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

pub const DEFAULT_GADGET_ORDER_CAP: usize = 100_000;

fn binomial(n: usize, k: usize) -> Option<usize> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return None;
        }
    }
    Some(acc as usize)
}

/// Layer sizes of the degeneracy tightness graph `H_k`, starting with the
/// base clique on `2k` vertices.
pub fn degeneracy_gadget_layers(k: usize) -> Option<Vec<usize>> {
    let layers = (2 * k + 1).div_ceil(3);
    let mut sizes = vec![2 * k];
    let mut total = 2 * k;
    for _ in 0..layers {
        let s = binomial(total, 2 * k)?.checked_mul(k + 1)?;
        total = total.checked_add(s)?;
        sizes.push(s);
    }
    Some(sizes)
}

/// The `2k`-degenerate graph `H_k`: a `2k`-clique followed by independent
/// layers in which every `2k`-subset of earlier vertices receives exactly
/// `k + 1` common neighbours.
pub fn degeneracy_gadget(k: usize, order_cap: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidArgument("gadget needs k >= 1".into()));
    }
    let sizes = degeneracy_gadget_layers(k).ok_or(Error::CapExceeded {
        what: "degeneracy gadget order".into(),
        size: usize::MAX,
        cap: order_cap,
    })?;
    let order: usize = sizes.iter().sum();
    crate::error::cap_check("degeneracy gadget order", order, order_cap)?;
    let d = 2 * k;
    let mut edges: Vec<Edge> = (0..d).flat_map(|u| (u + 1..d).map(move |v| (u, v))).collect();
    let mut next = d;
    for _ in 1..sizes.len() {
        let earlier = next;
        let mut subset: Vec<usize> = (0..d).collect();
        loop {
            for _ in 0..=k {
                edges.extend(subset.iter().map(|&u| (u, next)));
                next += 1;
            }
            if !next_combination(&mut subset, earlier) {
                break;
            }
        }
    }
    debug_assert_eq!(next, order);
    Graph::from_edges(order, edges)
}

/// Advances `c` to the next `|c|`-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Textual generator specification `name:arg1,arg2,...`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GenSpec {
    Empty { n: usize },
    Complete { n: usize },
    Cycle { n: usize },
    Path { n: usize },
    Star { m: usize },
    CompleteMultipartite { sizes: Vec<usize> },
    RandomMultipartite { m: usize, r: usize, p: f64 },
    ErdosRenyi { n: usize, p: f64 },
    RandomBipartite { a: usize, b: usize, p: f64 },
    RandomTree { n: usize },
    Outerplanar { n: usize },
    Planar { n: usize, flips: usize },
    WaleckiUnion { k: usize },
    ArboricityGadget { k: usize },
    DegeneracyGadget { k: usize },
    BlowUp { inner: Box<GenSpec> },
}

impl GenSpec {
    pub fn is_random(&self) -> bool {
        match self {
            GenSpec::RandomMultipartite { .. }
            | GenSpec::ErdosRenyi { .. }
            | GenSpec::RandomBipartite { .. }
            | GenSpec::RandomTree { .. }
            | GenSpec::Outerplanar { .. }
            | GenSpec::Planar { .. } => true,
            GenSpec::BlowUp { inner } => inner.is_random(),
            _ => false,
        }
    }

    /// Builds the graph; randomized families require a seed.
    pub fn build(&self, seed: Option<u64>) -> Result<Graph> {
        let need_seed = || {
            seed.ok_or_else(|| Error::InvalidArgument("randomized generator needs --seed".into()))
        };
        match self {
            GenSpec::Empty { n } => Ok(Graph::empty(*n)),
            GenSpec::Complete { n } => Ok(complete(*n)),
            GenSpec::Cycle { n } if *n >= 3 => Ok(cycle(*n)),
            GenSpec::Cycle { .. } => Err(Error::InvalidArgument("cycle needs n >= 3".into())),
            GenSpec::Path { n } => Ok(path(*n)),
            GenSpec::Star { m } => Ok(star(*m)),
            GenSpec::CompleteMultipartite { sizes } => complete_multipartite(sizes),
            GenSpec::RandomMultipartite { m, r, p } => random_multipartite(*m, *r, *p, need_seed()?),
            GenSpec::ErdosRenyi { n, p } => erdos_renyi(*n, *p, need_seed()?),
            GenSpec::RandomBipartite { a, b, p } => random_bipartite(*a, *b, *p, need_seed()?),
            GenSpec::RandomTree { n } => Ok(random_tree_with(*n, &mut rng_from_seed(need_seed()?))),
            GenSpec::Outerplanar { n } => {
                random_maximal_outerplanar(*n, &mut rng_from_seed(need_seed()?))
            }
            GenSpec::Planar { n, flips } => {
                random_maximal_planar(*n, *flips, &mut rng_from_seed(need_seed()?))
            }
            GenSpec::WaleckiUnion { k } => super::ops::union_graphs(&walecki_cycles(*k)?),
            GenSpec::ArboricityGadget { k } => arboricity_gadget(*k),
            GenSpec::DegeneracyGadget { k } => degeneracy_gadget(*k, DEFAULT_GADGET_ORDER_CAP),
            GenSpec::BlowUp { inner } => Ok(super::ops::blow_up(&inner.build(seed)?)?.graph),
        }
    }
}

impl FromStr for GenSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("blow-up:") {
            return Ok(GenSpec::BlowUp {
                inner: Box::new(rest.parse()?),
            });
        }
        let (name, args) = s.split_once(':').unwrap_or((s, ""));
        let raw: Vec<&str> = if args.is_empty() {
            Vec::new()
        } else {
            args.split(',').map(str::trim).collect()
        };
        let bad = |why: &str| Error::InvalidArgument(format!("generator '{s}': {why}"));
        let int = |i: usize| -> Result<usize> {
            raw.get(i)
                .ok_or_else(|| bad("missing argument"))?
                .parse()
                .map_err(|_| bad("expected a non-negative integer"))
        };
        let float = |i: usize| -> Result<f64> {
            raw.get(i)
                .ok_or_else(|| bad("missing argument"))?
                .parse()
                .map_err(|_| bad("expected a probability"))
        };
        let arity = |k: usize| {
            if raw.len() == k {
                Ok(())
            } else {
                Err(bad(&format!("expected {k} argument(s)")))
            }
        };
        let spec = match name {
            "empty" => {
                arity(1)?;
                GenSpec::Empty { n: int(0)? }
            }
            "complete" => {
                arity(1)?;
                GenSpec::Complete { n: int(0)? }
            }
            "cycle" => {
                arity(1)?;
                GenSpec::Cycle { n: int(0)? }
            }
            "path" => {
                arity(1)?;
                GenSpec::Path { n: int(0)? }
            }
            "star" => {
                arity(1)?;
                GenSpec::Star { m: int(0)? }
            }
            "complete-multipartite" => GenSpec::CompleteMultipartite {
                sizes: (0..raw.len()).map(int).collect::<Result<_>>()?,
            },
            "random-multipartite" => {
                arity(3)?;
                GenSpec::RandomMultipartite {
                    m: int(0)?,
                    r: int(1)?,
                    p: float(2)?,
                }
            }
            "erdos-renyi" | "gnp" => {
                arity(2)?;
                GenSpec::ErdosRenyi {
                    n: int(0)?,
                    p: float(1)?,
                }
            }
            "random-bipartite" => {
                arity(3)?;
                GenSpec::RandomBipartite {
                    a: int(0)?,
                    b: int(1)?,
                    p: float(2)?,
                }
            }
            "random-tree" => {
                arity(1)?;
                GenSpec::RandomTree { n: int(0)? }
            }
            "outerplanar" => {
                arity(1)?;
                GenSpec::Outerplanar { n: int(0)? }
            }
            "planar" => {
                if raw.len() == 1 {
                    GenSpec::Planar {
                        n: int(0)?,
                        flips: 0,
                    }
                } else {
                    arity(2)?;
                    GenSpec::Planar {
                        n: int(0)?,
                        flips: int(1)?,
                    }
                }
            }
            "walecki-union" => {
                arity(1)?;
                GenSpec::WaleckiUnion { k: int(0)? }
            }
            "arboricity-gadget" => {
                arity(1)?;
                GenSpec::ArboricityGadget { k: int(0)? }
            }
            "degeneracy-gadget" => {
                arity(1)?;
                GenSpec::DegeneracyGadget { k: int(0)? }
            }
            _ => return Err(bad("unknown generator")),
        };
        if let GenSpec::CompleteMultipartite { sizes } = &spec {
            if sizes.is_empty() {
                return Err(bad("empty size list"));
            }
        }
        Ok(spec)
    }
}
