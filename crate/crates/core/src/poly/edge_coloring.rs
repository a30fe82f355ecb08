//! Misra–Gries edge coloring and the reduction that deletes two colors.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exact::classical::k_coloring_limited;
use crate::graph::ops::line_graph;
use crate::graph::{Edge, Graph};
use crate::selection::{selection_from_edge_set, SSelection};

struct Mg<'a> {
    g: &'a Graph,
    ecol: Vec<Option<usize>>,
    // at[v * width + c] = neighbour joined to v by an edge of color c
    at: Vec<Option<usize>>,
    width: usize,
}

impl Mg<'_> {
    fn color(&self, u: usize, v: usize) -> Option<usize> {
        self.ecol[self.g.edge_index(u, v).unwrap()]
    }

    fn is_free(&self, v: usize, c: usize) -> bool {
        self.at[v * self.width + c].is_none()
    }

    fn free(&self, v: usize) -> usize {
        (0..self.width).find(|&c| self.is_free(v, c)).unwrap()
    }

    fn set(&mut self, u: usize, v: usize, c: usize) {
        let i = self.g.edge_index(u, v).unwrap();
        debug_assert!(self.ecol[i].is_none() && self.is_free(u, c) && self.is_free(v, c));
        self.ecol[i] = Some(c);
        self.at[u * self.width + c] = Some(v);
        self.at[v * self.width + c] = Some(u);
    }

    fn clear(&mut self, u: usize, v: usize) -> Option<usize> {
        let i = self.g.edge_index(u, v).unwrap();
        let c = self.ecol[i].take()?;
        self.at[u * self.width + c] = None;
        self.at[v * self.width + c] = None;
        Some(c)
    }

    fn insert(&mut self, u: usize, v: usize) {
        // maximal fan of u starting at v
        let mut fan = vec![v];
        loop {
            let last = *fan.last().unwrap();
            let next = self.g.neighbors(u).iter().copied().find(|&x| {
                !fan.contains(&x) && self.color(u, x).is_some_and(|c| self.is_free(last, c))
            });
            match next {
                Some(x) => fan.push(x),
                None => break,
            }
        }
        let c = self.free(u);
        let d = self.free(*fan.last().unwrap());
        // invert the cd path starting at u
        let mut path = Vec::new();
        let (mut x, mut want) = (u, d);
        while let Some(y) = self.at[x * self.width + want] {
            path.push((x, y));
            x = y;
            want = if want == c { d } else { c };
        }
        let old: Vec<usize> = path.iter().map(|&(a, b)| self.clear(a, b).unwrap()).collect();
        for (&(a, b), &col) in path.iter().zip(&old) {
            self.set(a, b, if col == c { d } else { c });
        }
        // first fan vertex with d free whose prefix is still a fan
        let mut w = None;
        for i in 0..fan.len() {
            if i > 0 {
                let ok = self.color(u, fan[i]).is_some_and(|col| self.is_free(fan[i - 1], col));
                if !ok {
                    break;
                }
            }
            if self.is_free(fan[i], d) {
                w = Some(i);
                break;
            }
        }
        let w = w.expect("Misra-Gries fan lemma");
        for j in 0..w {
            let col = self.clear(u, fan[j + 1]).unwrap();
            self.set(u, fan[j], col);
        }
        self.set(u, fan[w], d);
    }
}

/// Proper edge coloring with at most `Δ + 1` colors, one color per edge in
/// edge order.
pub fn misra_gries(g: &Graph) -> Vec<usize> {
    let width = g.max_degree() + 1;
    let mut mg = Mg {
        g,
        ecol: vec![None; g.m()],
        at: vec![None; g.n() * width],
        width,
    };
    for &(u, v) in g.edges() {
        mg.insert(u, v);
    }
    mg.ecol.into_iter().map(Option::unwrap).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeColorReduction {
    pub selection: SSelection,
    /// Color of each kept edge, `None` for removed edges.
    pub edge_colors: Vec<Option<usize>>,
    /// Colors of the full coloring before two classes were dropped.
    pub colors_before: usize,
    pub colors_used: usize,
    /// `Δ <= 1`: the whole edge set is removable.
    pub degenerate: bool,
}

// line graphs this small are tried for a Δ-coloring before dropping classes
const EXACT_EDGE_LIMIT: usize = 40;

/// Edge coloring with two color classes removed. Two classes of a proper
/// edge coloring form paths and cycles, so they are the image of a
/// 1-selection; the remaining colors certify `χ₁′ <= χ′ - 2`.
pub fn edge_color_reduction(g: &Graph) -> Result<EdgeColorReduction> {
    let delta = g.max_degree();
    if delta <= 1 {
        let selection = selection_from_edge_set(g.edges(), g, 1)?;
        return Ok(EdgeColorReduction {
            selection,
            edge_colors: vec![None; g.m()],
            colors_before: delta,
            colors_used: 0,
            degenerate: true,
        });
    }
    let mut colors = misra_gries(g);
    let mut c = colors.iter().max().map_or(0, |&x| x + 1);
    if c > delta && g.m() <= EXACT_EDGE_LIMIT {
        if let Some(Some(better)) = k_coloring_limited(&line_graph(g), delta, 200_000) {
            colors = better;
            c = delta;
        }
    }
    let mut size = vec![0usize; c];
    for &x in &colors {
        size[x] += 1;
    }
    // drop the two largest classes
    let mut rank: Vec<usize> = (0..c).collect();
    rank.sort_by_key(|&x| (std::cmp::Reverse(size[x]), x));
    let dropped = [rank[0], rank[1]];
    let mut relabel = vec![None; c];
    let mut next = 0;
    for (x, slot) in relabel.iter_mut().enumerate() {
        if !dropped.contains(&x) {
            *slot = Some(next);
            next += 1;
        }
    }
    let removed: Vec<Edge> = g
        .edges()
        .iter()
        .zip(&colors)
        .filter(|(_, x)| dropped.contains(x))
        .map(|(&e, _)| e)
        .collect();
    let selection = selection_from_edge_set(&removed, g, 1)?;
    Ok(EdgeColorReduction {
        selection,
        edge_colors: colors.iter().map(|&x| relabel[x]).collect(),
        colors_before: c,
        colors_used: c - 2,
        degenerate: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    fn proper(g: &Graph, colors: &[usize]) -> bool {
        g.edges().iter().enumerate().all(|(i, &(u, v))| {
            g.edges()
                .iter()
                .enumerate()
                .all(|(j, &(a, b))| i == j || colors[i] != colors[j] || (a != u && a != v && b != u && b != v))
        })
    }

    #[test]
    fn misra_gries_bound() {
        let mut rng = rng_from_seed(5);
        for _ in 0..30 {
            let g = erdos_renyi_with(25, 0.4, &mut rng);
            let c = misra_gries(&g);
            assert!(proper(&g, &c));
            assert!(c.iter().all(|&x| x <= g.max_degree()));
        }
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(edge_color_reduction(&complete(4)).unwrap().colors_used, 1);
        assert!(edge_color_reduction(&complete(5)).unwrap().colors_used <= 3);
        assert_eq!(edge_color_reduction(&cycle(6)).unwrap().colors_used, 0);
        let r = edge_color_reduction(&path(2)).unwrap();
        assert!(r.degenerate);
    }
}
