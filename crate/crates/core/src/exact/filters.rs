//! Necessary conditions for a non-edgeless graph to satisfy `θ₁ = θ`.
//!
//! A graph failing any applicable condition is certainly not exact, which
//! lets the explorer skip the expensive `θ₁` computation. The connectivity
//! condition only holds for a counterexample of minimum order, so it is
//! applied only when the caller says the graph is in that position.

use serde::{Deserialize, Serialize};

use super::classical::{clique_cover, max_independent_set};
use super::{robust, Caps};
use crate::error::{cap_check, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict", content = "witness")]
pub enum Verdict {
    Pass,
    Fail(String),
    NotApplicable,
}

impl Verdict {
    pub fn failed(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }

    fn check(ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail(witness())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conclusion {
    CannotBeExact,
    Candidate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterReport {
    pub theta: usize,
    pub alpha: usize,
    pub iota: usize,
    pub critical: Verdict,
    pub theta_gt_alpha: Verdict,
    pub theta_ge_4: Verdict,
    pub iota_le_theta: Verdict,
    pub two_triangles: Verdict,
    pub dominating_edge_ok: Verdict,
    pub connected_and_co_connected: Verdict,
    pub conclusion: Conclusion,
}

impl FilterReport {
    /// `(name, verdict)` pairs in a fixed order.
    pub fn verdicts(&self) -> [(&'static str, &Verdict); 7] {
        [
            ("critical", &self.critical),
            ("theta_gt_alpha", &self.theta_gt_alpha),
            ("theta_ge_4", &self.theta_ge_4),
            ("iota_le_theta", &self.iota_le_theta),
            ("two_triangles", &self.two_triangles),
            ("dominating_edge_ok", &self.dominating_edge_ok),
            ("connected_and_co_connected", &self.connected_and_co_connected),
        ]
    }

    /// Every applicable condition except `θ ≥ 4` holds.
    pub fn passes_all_but_theta_bound(&self) -> bool {
        self.verdicts()
            .iter()
            .all(|(name, v)| *name == "theta_ge_4" || !v.failed())
    }
}

pub fn exactness_filters(g: &Graph, minimal_context: bool, caps: &Caps) -> Result<FilterReport> {
    cap_check("filter vertices", g.n(), caps.theta.min(caps.iota))?;
    let n = g.n();
    let theta = clique_cover(g).0.len();
    let alpha = max_independent_set(g).0.len();
    let iota = robust::iota(g, caps)?.value;
    if g.is_edgeless() {
        // edgeless graphs are exact; the conditions are about the others
        return Ok(FilterReport {
            theta,
            alpha,
            iota,
            critical: Verdict::NotApplicable,
            theta_gt_alpha: Verdict::NotApplicable,
            theta_ge_4: Verdict::NotApplicable,
            iota_le_theta: Verdict::NotApplicable,
            two_triangles: Verdict::NotApplicable,
            dominating_edge_ok: Verdict::NotApplicable,
            connected_and_co_connected: Verdict::NotApplicable,
            conclusion: Conclusion::Candidate,
        });
    }

    let non_critical = (0..n).find(|&x| clique_cover(&g.remove_vertex(x)).0.len() != theta - 1);
    let critical = Verdict::check(non_critical.is_none(), || {
        format!("theta(G - {}) = theta(G)", non_critical.unwrap())
    });
    let theta_gt_alpha = Verdict::check(theta > alpha, || format!("theta = alpha = {alpha}"));
    let theta_ge_4 = Verdict::check(theta >= 4, || format!("theta = {theta}"));
    let iota_le_theta = Verdict::check(iota <= theta, || format!("iota = {iota} > theta = {theta}"));

    let thin = g.edges().iter().copied().find(|&(u, v)| {
        let common = g
            .neighbors(u)
            .iter()
            .filter(|&&w| g.has_edge(v, w))
            .count();
        common < 2
    });
    let two_triangles = Verdict::check(thin.is_none(), || {
        let (u, v) = thin.unwrap();
        format!("edge {u}-{v} lies in fewer than two triangles")
    });

    let dominating_edge_ok = if theta <= 4 {
        let dominating = g.edges().iter().any(|&(a, b)| {
            (0..n).all(|x| x == a || x == b || g.has_edge(a, x) || g.has_edge(b, x))
        });
        Verdict::check(dominating, || "no dominating edge".to_string())
    } else {
        Verdict::NotApplicable
    };

    let connected_and_co_connected = if minimal_context {
        let ok = g.is_connected() && g.complement().is_connected();
        Verdict::check(ok, || {
            if g.is_connected() {
                "complement is disconnected".into()
            } else {
                "graph is disconnected".into()
            }
        })
    } else {
        Verdict::NotApplicable
    };

    let mut report = FilterReport {
        theta,
        alpha,
        iota,
        critical,
        theta_gt_alpha,
        theta_ge_4,
        iota_le_theta,
        two_triangles,
        dominating_edge_ok,
        connected_and_co_connected,
        conclusion: Conclusion::Candidate,
    };
    if report.verdicts().iter().any(|(_, v)| v.failed()) {
        report.conclusion = Conclusion::CannotBeExact;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    fn report(g: &Graph) -> FilterReport {
        exactness_filters(g, false, &Caps::default()).unwrap()
    }

    #[test]
    fn five_cycle_has_small_cover() {
        let r = report(&cycle(5));
        assert!(r.theta_ge_4.failed());
        assert_eq!(r.conclusion, Conclusion::CannotBeExact);
    }

    #[test]
    fn k4_is_not_critical() {
        let r = report(&complete(4));
        assert!(!r.two_triangles.failed());
        assert!(r.critical.failed());
        assert_eq!(r.conclusion, Conclusion::CannotBeExact);
    }

    #[test]
    fn trees_have_theta_equal_alpha() {
        let r = report(&path(4));
        assert_eq!((r.theta, r.alpha), (2, 2));
        assert!(r.theta_gt_alpha.failed());
    }

    #[test]
    fn connectivity_only_in_minimal_context() {
        let g = crate::graph::ops::disjoint_union(&[complete(2), complete(2)]);
        assert_eq!(report(&g).connected_and_co_connected, Verdict::NotApplicable);
        let r = exactness_filters(&g, true, &Caps::default()).unwrap();
        assert!(r.connected_and_co_connected.failed());
    }
}
