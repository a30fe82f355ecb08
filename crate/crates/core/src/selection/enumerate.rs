use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::tracker::{EdgeTracker, Tracker};
use crate::error::{cap_check, Result};
use crate::graph::{Edge, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnumMode {
    /// Every removable set exactly once.
    All,
    /// Inclusion-maximal removable sets only.
    Maximal,
}

/// Streams removable sets at budget `s` to `visit` in a fixed order
/// (include-before-exclude over the sorted edge list). Graphs with more than
/// `edge_cap` edges are refused.
pub fn for_each_removable<F>(
    g: &Graph,
    s: usize,
    mode: EnumMode,
    edge_cap: usize,
    mut visit: F,
) -> Result<()>
where
    F: FnMut(&[Edge]) -> ControlFlow<()>,
{
    cap_check("removable-set enumeration edges", g.m(), edge_cap)?;
    let mut st = Walk {
        edges: g.edges(),
        tracker: Tracker::new(g.n(), s),
        chosen: Vec::new(),
        skipped: Vec::new(),
        mode,
    };
    let _ = st.rec(0, &mut visit);
    Ok(())
}

pub fn enumerate_removable_sets(
    g: &Graph,
    s: usize,
    mode: EnumMode,
    edge_cap: usize,
) -> Result<Vec<Vec<Edge>>> {
    let mut out = Vec::new();
    for_each_removable(g, s, mode, edge_cap, |f| {
        out.push(f.to_vec());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

struct Walk<'a> {
    edges: &'a [Edge],
    tracker: Tracker,
    chosen: Vec<Edge>,
    skipped: Vec<Edge>,
    mode: EnumMode,
}

impl Walk<'_> {
    fn rec<F>(&mut self, i: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[Edge]) -> ControlFlow<()>,
    {
        if i == self.edges.len() {
            if self.mode == EnumMode::Maximal && !self.blocked() {
                return ControlFlow::Continue(());
            }
            return visit(&self.chosen);
        }
        let (u, v) = self.edges[i];
        let cp = self.tracker.checkpoint();
        if self.tracker.try_add(u, v) {
            self.chosen.push((u, v));
            let r = self.rec(i + 1, visit);
            self.chosen.pop();
            self.tracker.rollback(cp);
            r?;
        } else if self.mode == EnumMode::Maximal {
            // infeasible now means infeasible for every superset too
            return self.rec(i + 1, visit);
        }
        self.skipped.push((u, v));
        let r = self.rec(i + 1, visit);
        self.skipped.pop();
        r
    }

    /// Every skipped edge is infeasible on top of the chosen set.
    fn blocked(&mut self) -> bool {
        for j in 0..self.skipped.len() {
            let (u, v) = self.skipped[j];
            let cp = self.tracker.checkpoint();
            let ok = self.tracker.try_add(u, v);
            self.tracker.rollback(cp);
            if ok {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;
    use crate::selection::is_quasi_unicyclic;

    #[test]
    fn all_mode_small_cases() {
        let sets = enumerate_removable_sets(&complete(2), 1, EnumMode::All, 20).unwrap();
        assert_eq!(sets.len(), 2);
        let sets = enumerate_removable_sets(&complete(3), 1, EnumMode::All, 20).unwrap();
        assert_eq!(sets.len(), 8);
    }

    #[test]
    fn maximal_mode_matches_filter_on_k4() {
        let k4 = complete(4);
        let all = enumerate_removable_sets(&k4, 1, EnumMode::All, 20).unwrap();
        let maximal: Vec<&Vec<Edge>> = all
            .iter()
            .filter(|f| {
                !all.iter()
                    .any(|h| h.len() > f.len() && f.iter().all(|e| h.contains(e)))
            })
            .collect();
        let got = enumerate_removable_sets(&k4, 1, EnumMode::Maximal, 20).unwrap();
        assert_eq!(got.len(), maximal.len());
        for f in &got {
            assert_eq!(f.len(), 4);
            assert!(maximal.contains(&f));
            let h = Graph::from_edges(4, f.iter().copied()).unwrap();
            assert!(h.is_connected() && is_quasi_unicyclic(&h));
        }
        // 3 four-cycles, 4 triangles with a pendant edge each at 3 spots
        assert_eq!(got.len(), 15);
    }

    #[test]
    fn guard_and_early_stop() {
        assert!(enumerate_removable_sets(&complete(7), 1, EnumMode::All, 20).is_err());
        let mut seen = 0;
        for_each_removable(&complete(4), 1, EnumMode::All, 20, |_| {
            seen += 1;
            if seen == 3 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })
        .unwrap();
        assert_eq!(seen, 3);
    }
}
