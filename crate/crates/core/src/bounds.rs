//! Inequality suites relating robust and classical parameters.
//!
//! Every check is an integer relation `lhs <= rhs` or `lhs == rhs`; ratios
//! such as `n / α_s <= χ_s` are cross-multiplied first. Values come from the
//! exact solvers and every certificate is re-verified before use.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::verify::verify;
use crate::exact::{classical_parameter, robust_chromatic, robust_parameter, Caps, Parameter, Robust, Tier};
use crate::graph::generators::walecki_cycles;
use crate::graph::ops::{disjoint_union, lex_product, union_graphs};
use crate::graph::Graph;
use crate::poly::{degeneracy_greedy, max_degree_partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// `χ_s >= ω_s`, `χ_s α_s >= n`, `θ_s >= α_s`, `θ_s ω_s >= n`, and
    /// monotonicity in `s`.
    Generalized,
    /// Robust versus classical values, including vertex arboricity.
    Sandwich,
    /// Monotonicity, components, unions and lexicographic products.
    Operations,
    /// `χ₁ <= ⌈(Δ+1)/3⌉` and the local search behind it.
    Degree,
    /// `χ₁ <= ⌊d/2⌋ + 1` and the greedy behind it.
    Degeneracy,
    /// Robust chromatic index against `δ`, `Δ` and `χ'`.
    EdgeIndex,
    /// Unions of graphs on a shared vertex set.
    Union,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Generalized,
        Suite::Sandwich,
        Suite::Operations,
        Suite::Degree,
        Suite::Degeneracy,
        Suite::EdgeIndex,
        Suite::Union,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Generalized => "generalized",
            Suite::Sandwich => "sandwich",
            Suite::Operations => "operations",
            Suite::Degree => "degree",
            Suite::Degeneracy => "degeneracy",
            Suite::EdgeIndex => "edge-index",
            Suite::Union => "union",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Le,
    Eq,
}

/// One evaluated inequality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub suite: Suite,
    pub name: String,
    pub s: usize,
    pub lhs: u64,
    pub relation: Relation,
    pub rhs: u64,
    pub pass: bool,
}

/// Replaces one computed value, for checking that the suites notice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fault {
    pub which: Robust,
    pub s: usize,
    pub value: usize,
}

/// Exact values for one graph, computed on demand and cached.
pub struct Evaluator<'a> {
    g: &'a Graph,
    caps: &'a Caps,
    fault: Option<Fault>,
    robust: HashMap<(Robust, usize), usize>,
    classical: HashMap<Parameter, usize>,
}

impl<'a> Evaluator<'a> {
    pub fn new(g: &'a Graph, caps: &'a Caps) -> Self {
        Evaluator {
            g,
            caps,
            fault: None,
            robust: HashMap::new(),
            classical: HashMap::new(),
        }
    }

    pub fn with_fault(mut self, fault: Fault) -> Self {
        self.fault = Some(fault);
        self
    }

    pub fn graph(&self) -> &'a Graph {
        self.g
    }

    pub fn robust(&mut self, which: Robust, s: usize) -> Result<usize> {
        if let Some(f) = self.fault {
            if f.which == which && f.s == s {
                return Ok(f.value);
            }
        }
        if let Some(&v) = self.robust.get(&(which, s)) {
            return Ok(v);
        }
        let v = robust_of(self.g, which, s, self.caps)?;
        self.robust.insert((which, s), v);
        Ok(v)
    }

    pub fn classical(&mut self, p: Parameter) -> Result<usize> {
        if let Some(&v) = self.classical.get(&p) {
            return Ok(v);
        }
        let r = classical_parameter(self.g, p, self.caps)?;
        verify(self.g, &r)?;
        self.classical.insert(p, r.value);
        Ok(r.value)
    }
}

/// Verified robust value of any graph.
fn robust_of(g: &Graph, which: Robust, s: usize, caps: &Caps) -> Result<usize> {
    let r = if which == Robust::Chi && s == 1 {
        robust_chromatic(g, caps)?
    } else {
        robust_parameter(g, which, s, Tier::Solver, caps)?
    };
    verify(g, &r)?;
    Ok(r.value)
}

struct Sink {
    suite: Suite,
    s: usize,
    out: Vec<BoundCheck>,
}

impl Sink {
    fn le(&mut self, name: &str, lhs: usize, rhs: usize) {
        self.push(name, lhs, Relation::Le, rhs, lhs <= rhs);
    }

    fn eq(&mut self, name: &str, lhs: usize, rhs: usize) {
        self.push(name, lhs, Relation::Eq, rhs, lhs == rhs);
    }

    fn push(&mut self, name: &str, lhs: usize, relation: Relation, rhs: usize, pass: bool) {
        self.out.push(BoundCheck {
            suite: self.suite,
            name: name.to_string(),
            s: self.s,
            lhs: lhs as u64,
            relation,
            rhs: rhs as u64,
            pass,
        });
    }
}

/// Runs one suite at budget `s`. Suites tied to `s = 1` return no checks for
/// other budgets.
pub fn run_suite(ev: &mut Evaluator, suite: Suite, s: usize) -> Result<Vec<BoundCheck>> {
    let mut k = Sink {
        suite,
        s,
        out: Vec::new(),
    };
    match suite {
        Suite::Generalized => generalized(ev, s, &mut k)?,
        Suite::Sandwich => sandwich(ev, s, &mut k)?,
        Suite::Operations if s == 1 => operations(ev, &mut k)?,
        Suite::Degree if s == 1 => degree(ev, &mut k)?,
        Suite::Degeneracy if s == 1 => degeneracy(ev, &mut k)?,
        Suite::EdgeIndex if s == 1 => edge_index(ev, &mut k)?,
        Suite::Union if s == 1 => union(ev, &mut k)?,
        _ => {}
    }
    Ok(k.out)
}

fn generalized(ev: &mut Evaluator, s: usize, k: &mut Sink) -> Result<()> {
    let n = ev.graph().n();
    let chi = ev.robust(Robust::Chi, s)?;
    let omega = ev.robust(Robust::Omega, s)?;
    let alpha = ev.robust(Robust::Alpha, s)?;
    let theta = ev.robust(Robust::Theta, s)?;
    k.le("omega_s <= chi_s", omega, chi);
    k.le("n <= chi_s * alpha_s", n, chi * alpha);
    k.le("alpha_s <= theta_s", alpha, theta);
    k.le("n <= theta_s * omega_s", n, theta * omega);
    if s > 0 {
        k.le("chi_s <= chi_(s-1)", chi, ev.robust(Robust::Chi, s - 1)?);
        k.le("omega_s <= omega_(s-1)", omega, ev.robust(Robust::Omega, s - 1)?);
        k.le("alpha_(s-1) <= alpha_s", ev.robust(Robust::Alpha, s - 1)?, alpha);
        k.le("theta_(s-1) <= theta_s", ev.robust(Robust::Theta, s - 1)?, theta);
    }
    Ok(())
}

/// A removable set at budget `s` induces a `2s`-degenerate graph, so the
/// `s = 1` factor 3 becomes `2s + 1` in general.
fn sandwich(ev: &mut Evaluator, s: usize, k: &mut Sink) -> Result<()> {
    let f = 2 * s + 1;
    let chi = ev.classical(Parameter::Chi)?;
    let omega = ev.classical(Parameter::Omega)?;
    let theta = ev.classical(Parameter::Theta)?;
    let chi_s = ev.robust(Robust::Chi, s)?;
    let omega_s = ev.robust(Robust::Omega, s)?;
    let theta_s = ev.robust(Robust::Theta, s)?;
    k.le("chi <= (2s+1) * chi_s", chi, f * chi_s);
    k.le("chi_s <= chi", chi_s, chi);
    k.le("omega <= (2s+1) * omega_s", omega, f * omega_s);
    k.le("omega_s <= omega", omega_s, omega);
    k.le("theta <= theta_s", theta, theta_s);
    k.le("theta_s <= (2s+1) * theta", theta_s, f * theta);
    if s == 1 {
        let a = ev.classical(Parameter::Arboricity)?;
        k.le("a <= 2 * chi_1", a, 2 * chi_s);
        k.le("chi_1 <= a", chi_s, a);
    }
    Ok(())
}

fn degree(ev: &mut Evaluator, k: &mut Sink) -> Result<()> {
    let g = ev.graph();
    let delta = g.max_degree();
    let bound = (delta + 1).div_ceil(3).max(1);
    // the local search needs Δ < 3k
    let part = max_degree_partition(g, bound)?;
    part.coloring.validate(g)?;
    let moves = part.moves;
    let used = part.coloring.k;
    let m = g.m();
    let chi = ev.robust(Robust::Chi, 1)?;
    k.le("chi_1 <= ceil((Delta+1)/3)", chi, bound);
    k.le("local search classes <= ceil((Delta+1)/3)", used, bound);
    k.le("local search moves <= m", moves, m);
    Ok(())
}

fn degeneracy(ev: &mut Evaluator, k: &mut Sink) -> Result<()> {
    let g = ev.graph();
    let d = ev.classical(Parameter::Degeneracy)?;
    let greedy = degeneracy_greedy(g);
    greedy.validate(g)?;
    let chi = ev.robust(Robust::Chi, 1)?;
    k.le("chi_1 <= floor(d/2) + 1", chi, d / 2 + 1);
    k.le("greedy classes <= floor(d/2) + 1", greedy.k, d / 2 + 1);
    k.le("chi_1 <= greedy classes", chi, greedy.k);
    Ok(())
}

fn edge_index(ev: &mut Evaluator, k: &mut Sink) -> Result<()> {
    let g = ev.graph();
    let (delta, min_deg) = (g.max_degree(), g.min_degree());
    if delta <= 1 {
        return Ok(());
    }
    let cp = ev.classical(Parameter::ChiPrime)?;
    let cp1 = ev.robust(Robust::ChiPrime, 1)?;
    k.le("chi'_1 + 2 <= chi'", cp1 + 2, cp);
    k.le("delta <= chi'_1 + 2", min_deg, cp1 + 2);
    k.le("chi'_1 + 1 <= Delta", cp1 + 1, delta);
    Ok(())
}

/// Cyclic relabelling `v -> v + 1 mod n`, the second graph of the
/// constructed pairs.
pub fn shifted(g: &Graph) -> Graph {
    let n = g.n();
    Graph::from_edges(n, g.edges().iter().map(|&(u, v)| ((u + 1) % n, (v + 1) % n)))
        .expect("relabelling keeps the graph simple")
}

fn operations(ev: &mut Evaluator, k: &mut Sink) -> Result<()> {
    let g = ev.graph().clone();
    let caps = ev.caps;
    let chi = ev.robust(Robust::Chi, 1)?;
    let omega = ev.robust(Robust::Omega, 1)?;
    let alpha = ev.robust(Robust::Alpha, 1)?;
    let theta = ev.robust(Robust::Theta, 1)?;

    // spanning subgraph: drop the first edge; subgraph: drop vertex 0
    if let Some(&e) = g.edges().first() {
        let h = g.remove_edges(&[e]);
        k.le("alpha_1(G) <= alpha_1(G - e)", alpha, robust_of(&h, Robust::Alpha, 1, caps)?);
        k.le("theta_1(G) <= theta_1(G - e)", theta, robust_of(&h, Robust::Theta, 1, caps)?);
        k.le("omega_1(G - e) <= omega_1(G)", robust_of(&h, Robust::Omega, 1, caps)?, omega);
        k.le("chi_1(G - e) <= chi_1(G)", robust_of(&h, Robust::Chi, 1, caps)?, chi);
    }
    if g.n() > 0 {
        let h = g.remove_vertex(0);
        k.le("omega_1(G - v) <= omega_1(G)", robust_of(&h, Robust::Omega, 1, caps)?, omega);
        k.le("chi_1(G - v) <= chi_1(G)", robust_of(&h, Robust::Chi, 1, caps)?, chi);
    }

    // components
    let comps = g.components();
    if comps.len() > 1 {
        let parts: Vec<Graph> = comps.iter().map(|c| g.induced_subgraph(c)).collect();
        let mut per = Vec::new();
        for w in [Robust::Chi, Robust::Omega, Robust::Alpha, Robust::Theta] {
            let vals = parts
                .iter()
                .map(|p| robust_of(p, w, 1, caps))
                .collect::<Result<Vec<_>>>()?;
            per.push(vals);
        }
        let max = |v: &[usize]| v.iter().copied().max().unwrap_or(0);
        let sum = |v: &[usize]| v.iter().sum::<usize>();
        k.eq("chi_1(G) = max over components", chi, max(&per[0]));
        k.eq("omega_1(G) = max over components", omega, max(&per[1]));
        k.eq("alpha_1(G) = sum over components", alpha, sum(&per[2]));
        k.eq("theta_1(G) = sum over components", theta, sum(&per[3]));
        // and rebuilt side by side
        let again = disjoint_union(&parts);
        k.eq("chi_1(disjoint union) = chi_1(G)", robust_of(&again, Robust::Chi, 1, caps)?, chi);
    }

    // union with a relabelled copy
    let h = shifted(&g);
    let u = union_graphs(&[g.clone(), h.clone()])?;
    let chi_u = robust_of(&u, Robust::Chi, 1, caps)?;
    let chi_h = robust_of(&h, Robust::Chi, 1, caps)?;
    let classical_chi = ev.classical(Parameter::Chi)?;
    // the copy is isomorphic, so its chromatic number is the same
    let bound = (classical_chi * chi_h).min(chi * classical_chi);
    k.le("chi_1(G u H) <= min(chi(G) chi_1(H), chi_1(G) chi(H))", chi_u, bound);

    // lexicographic products with K2 on either side
    let k2 = crate::graph::generators::complete(2);
    if 2 * g.n() <= caps.robust_chi {
        let gk = lex_product(&g, &k2);
        let kg = lex_product(&k2, &g);
        k.le(
            "chi_1(G o K2) <= chi(G) chi_1(K2)",
            robust_of(&gk, Robust::Chi, 1, caps)?,
            classical_chi,
        );
        k.le(
            "chi_1(K2 o G) <= chi(K2) chi_1(G)",
            robust_of(&kg, Robust::Chi, 1, caps)?,
            2 * chi,
        );
    }
    Ok(())
}

fn union(ev: &mut Evaluator, k: &mut Sink) -> Result<()> {
    let g = ev.graph().clone();
    let h = shifted(&g);
    let u = union_graphs(&[g, h.clone()])?;
    let chi = ev.robust(Robust::Chi, 1)?;
    let chi_h = robust_of(&h, Robust::Chi, 1, ev.caps)?;
    let chi_u = robust_of(&u, Robust::Chi, 1, ev.caps)?;
    k.le("chi_1(G u H) <= 5 chi_1(G) chi_1(H)", chi_u, 5 * chi * chi_h);
    Ok(())
}

/// The union bound on the Hamiltonian cycles of `K_{2k+1}`, with the
/// matching lower bound `(2k+1)/3 * prod <= chi_1(union)` recorded as
/// `(2k+1) prod <= 3 chi_1(union)`.
pub fn walecki_union(k: usize, caps: &Caps) -> Result<Vec<BoundCheck>> {
    let cycles = walecki_cycles(k)?;
    let mut prod = 1;
    for c in &cycles {
        prod *= robust_of(c, Robust::Chi, 1, caps)?;
    }
    let u = union_graphs(&cycles)?;
    let chi_u = robust_of(&u, Robust::Chi, 1, caps)?;
    let mut sink = Sink {
        suite: Suite::Union,
        s: 1,
        out: Vec::new(),
    };
    sink.eq("edges of the union = (2k+1) k", u.m(), (2 * k + 1) * k);
    sink.le("chi_1(union) <= (2k+1) prod chi_1(C_i)", chi_u, (2 * k + 1) * prod);
    sink.le("(2k+1) prod chi_1(C_i) <= 3 chi_1(union)", (2 * k + 1) * prod, 3 * chi_u);
    Ok(sink.out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    fn all_pass(g: &Graph, s: usize) -> Vec<BoundCheck> {
        let caps = Caps::default();
        let mut ev = Evaluator::new(g, &caps);
        let mut out = Vec::new();
        for suite in Suite::ALL {
            out.extend(run_suite(&mut ev, suite, s).unwrap());
        }
        for c in &out {
            assert!(c.pass, "{c:?}");
        }
        out
    }

    #[test]
    fn suites_pass_on_small_graphs() {
        for g in [complete(5), cycle(5), path(4), disjoint_union(&[complete(3), path(3)])] {
            for s in 0..=2 {
                all_pass(&g, s);
            }
        }
        let checks = all_pass(&disjoint_union(&[complete(3), path(3)]), 1);
        assert!(checks.iter().any(|c| c.relation == Relation::Eq));
    }

    #[test]
    fn walecki_three() {
        let checks = walecki_union(3, &Caps::default()).unwrap();
        assert!(checks.iter().all(|c| c.pass));
        assert_eq!(checks[1].lhs, 3);
        assert_eq!(checks[1].rhs, 7);
    }

    #[test]
    fn fault_is_caught() {
        let g = complete(6);
        let caps = Caps::default();
        let mut ev = Evaluator::new(&g, &caps).with_fault(Fault {
            which: Robust::Chi,
            s: 1,
            value: 7,
        });
        let checks = run_suite(&mut ev, Suite::Sandwich, 1).unwrap();
        assert!(checks.iter().any(|c| !c.pass));
        assert_eq!("edge-index".parse::<Suite>().unwrap(), Suite::EdgeIndex);
    }
}
