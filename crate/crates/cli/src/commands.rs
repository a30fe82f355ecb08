use rand::Rng;
use rayon::prelude::*;
use robusta_core::bounds::{run_suite, walecki_union, BoundCheck, Evaluator, Fault, Suite};
use robusta_core::exact::explore::explore_with_progress;
use robusta_core::exact::oracle::max_subset_density;
use robusta_core::exact::verify::verify as check;
use robusta_core::exact::{
    classical_parameter, iota, robust_chromatic, robust_parameter, ParamRequest, ParameterResult, Robust, Tier,
};
use robusta_core::graph::generators::{erdos_renyi_with, random_multipartite, rng_from_seed};
use robusta_core::graph::io::{write_dot, write_graph};
use robusta_core::graph::ops::blow_up;
use robusta_core::poly::{
    degeneracy_greedy, edge_color_reduction, max_degree_partition, min_outdegree_orientation,
    quasi_unicyclic_edge_decomposition,
};
use robusta_core::selection::is_quasi_unicyclic;
use robusta_core::treewidth::{dp_robust, heuristic_decomposition, make_nice};
use robusta_core::{Error, Graph};
use serde_json::{json, Value};

use crate::{Ctx, Engine, RunReport, Source};

type Result<T> = std::result::Result<T, Error>;

fn value_of(ctx: &Ctx, mut r: ParameterResult) -> Value {
    if !ctx.timing {
        r.stats.elapsed_ms = None;
    }
    serde_json::to_value(r).expect("results serialize")
}

fn exact_result(ctx: &Ctx, g: &Graph, p: ParamRequest, s: usize, tier: Tier) -> Result<ParameterResult> {
    let r = match p {
        ParamRequest::Classical(c) => classical_parameter(g, c, &ctx.caps)?,
        ParamRequest::Iota => iota(g, &ctx.caps)?,
        ParamRequest::Robust(Robust::Chi) if s == 1 && tier == Tier::Solver => robust_chromatic(g, &ctx.caps)?,
        ParamRequest::Robust(w) => robust_parameter(g, w, s, tier, &ctx.caps)?,
    };
    check(g, &r)?;
    Ok(r)
}

pub fn compute(ctx: &Ctx, source: &Source, params: &[ParamRequest], s: usize, engine: Engine) -> Result<RunReport> {
    let (g, input) = source.load()?;
    let mut rep = RunReport::new("compute", input);
    for &p in params {
        match engine {
            Engine::Exact => rep.results.push(value_of(ctx, exact_result(ctx, &g, p, s, Tier::Solver)?)),
            Engine::Oracle => rep.results.push(value_of(ctx, exact_result(ctx, &g, p, s, Tier::Oracle)?)),
            Engine::Dp => {
                let ParamRequest::Robust(w) = p else {
                    return Err(Error::InvalidArgument("the dp engine computes robust parameters only".into()));
                };
                if s != 1 {
                    return Err(Error::InvalidArgument("the dp engine needs --s 1".into()));
                }
                let td = heuristic_decomposition(&g);
                let nice = make_nice(&td, &g)?;
                let (r, stats) = dp_robust(&g, &nice, w, &ctx.caps)?;
                check(&g, &r)?;
                let mut v = value_of(ctx, r);
                v["width"] = json!(nice.width());
                v["dp"] = serde_json::to_value(stats).unwrap();
                rep.results.push(v);
            }
            Engine::PolyBounds => rep.results.extend(poly_bounds(&g, p, s)?),
        }
    }
    Ok(rep)
}

fn bound(parameter: &str, side: &str, value: usize, method: &str, witness: Value) -> Value {
    json!({"parameter": parameter, "s": 1, "bound": side, "value": value, "method": method, "witness": witness})
}

/// Certified bounds from the polynomial algorithms.
fn poly_bounds(g: &Graph, p: ParamRequest, s: usize) -> Result<Vec<Value>> {
    let mut out = Vec::new();
    let robust_only = |w: &str| -> Result<()> {
        if s == 1 {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("polynomial bounds for {w} exist only for s = 1")))
        }
    };
    match p {
        ParamRequest::Robust(Robust::Chi) => {
            robust_only("chi1")?;
            let greedy = degeneracy_greedy(g);
            greedy.validate(g)?;
            out.push(bound("chi_s", "upper", greedy.k, "degeneracy-greedy", json!(greedy)));
            let k = g.max_degree().div_ceil(3).max(1);
            let k = if g.max_degree() < 3 * k { k } else { k + 1 };
            let part = max_degree_partition(g, k)?;
            part.coloring.validate(g)?;
            out.push(bound("chi_s", "upper", part.coloring.k, "max-degree-local-search", json!(part)));
            // a subset denser than its order is not quasi-unicyclic
            let o = min_outdegree_orientation(g);
            let dense = g.induced_edge_count(&o.witness) > o.witness.len();
            let lower = if g.n() == 0 {
                0
            } else if dense {
                2
            } else {
                1
            };
            out.push(bound("chi_s", "lower", lower, "dense-subset", json!(o.witness)));
        }
        ParamRequest::Robust(Robust::ChiPrime) => {
            robust_only("chi1prime")?;
            let r = edge_color_reduction(g)?;
            out.push(bound("chi_prime_s", "upper", r.colors_used, "edge-coloring-reduction", json!(r)));
            out.push(bound(
                "chi_prime_s",
                "lower",
                g.min_degree().saturating_sub(2),
                "min-degree",
                Value::Null,
            ));
        }
        ParamRequest::Classical(robusta_core::exact::Parameter::Degeneracy) => {
            let o = robusta_core::poly::degeneracy_order(g);
            out.push(json!({"parameter": "degeneracy", "bound": "exact", "value": o.d,
                "method": "min-degree-order", "witness": o}));
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "no polynomial bounds for {other:?}; use chi1, chi1prime or degeneracy"
            )))
        }
    }
    Ok(out)
}

pub fn generate(source: &Source, to: &str) -> Result<String> {
    let (g, _) = source.load()?;
    Ok(match to {
        "json" => serde_json::to_string(&g).unwrap() + "\n",
        "dot" => write_dot(&g, None),
        other => write_graph(&g, other.parse()?),
    })
}

pub fn decompose(source: &Source) -> Result<RunReport> {
    let (g, input) = source.load()?;
    let mut rep = RunReport::new("decompose", input);
    let d = quasi_unicyclic_edge_decomposition(&g);
    let mut all: Vec<_> = d.classes.iter().flatten().copied().collect();
    all.sort_unstable();
    let partitions = all == g.edges();
    let classes_ok = d
        .classes
        .iter()
        .all(|c| Graph::from_edges(g.n(), c.iter().copied()).is_ok_and(|h| is_quasi_unicyclic(&h)));
    let t = d.classes.len();
    let w = &d.witness;
    let density = if w.is_empty() { 0 } else { g.induced_edge_count(w).div_ceil(w.len()) };
    let brute = (g.n() <= 8).then(|| max_subset_density(&g));
    rep.violation = !partitions || !classes_ok || density != t || brute.is_some_and(|b| b != t);
    rep.results.push(json!({
        "classes_count": t,
        "witness": w,
        "witness_density": density,
        "brute_force_density": brute,
        "classes_partition_edges": partitions,
        "classes_quasi_unicyclic": classes_ok,
        "classes": d.classes,
        "orientation": d.orientation,
    }));
    Ok(rep)
}

pub enum VerifyMode {
    Single(Source),
    Corpus { count: usize, n_max: usize, seed: u64 },
    Walecki(usize),
}

fn check_graph(ctx: &Ctx, g: &Graph, suites: &[Suite], budgets: &[usize], fault: bool) -> Result<Vec<BoundCheck>> {
    let mut ev = Evaluator::new(g, &ctx.caps);
    if fault {
        ev = ev.with_fault(Fault {
            which: Robust::Chi,
            s: 1,
            value: g.n() + 1,
        });
    }
    let mut out = Vec::new();
    for &s in budgets {
        for &suite in suites {
            out.extend(run_suite(&mut ev, suite, s)?);
        }
    }
    Ok(out)
}

pub fn verify_corpus(count: usize, n_max: usize, seed: u64) -> Vec<Graph> {
    let mut rng = rng_from_seed(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=n_max.max(1));
            let p = rng.gen_range(0.1..0.9);
            erdos_renyi_with(n, p, &mut rng)
        })
        .collect()
}

pub fn verify(ctx: &Ctx, mode: VerifyMode, suites: &[Suite], budgets: &[usize], fault: bool) -> Result<RunReport> {
    match mode {
        VerifyMode::Single(source) => {
            let (g, input) = source.load()?;
            let mut rep = RunReport::new("verify", input);
            rep.bounds = check_graph(ctx, &g, suites, budgets, fault)?;
            rep.violation = rep.bounds.iter().any(|c| !c.pass);
            if rep.violation {
                rep.results.push(json!({"offending_graph": g}));
            }
            Ok(rep)
        }
        VerifyMode::Corpus { count, n_max, seed } => {
            let graphs = verify_corpus(count, n_max, seed);
            let checked: Vec<Result<Vec<BoundCheck>>> = graphs
                .par_iter()
                .map(|g| check_graph(ctx, g, suites, budgets, fault))
                .collect();
            let mut rep = RunReport::new("verify", json!({"corpus": count, "n_max": n_max, "seed": seed}));
            let mut total = 0;
            let mut failing = 0;
            for (i, (g, checks)) in graphs.iter().zip(checked).enumerate() {
                let checks = checks?;
                total += checks.len();
                let failed: Vec<&BoundCheck> = checks.iter().filter(|c| !c.pass).collect();
                if !failed.is_empty() {
                    failing += 1;
                    rep.results.push(json!({"index": i, "offending_graph": g, "failed": failed}));
                }
            }
            rep.violation = failing > 0;
            rep.results.insert(0, json!({"graphs": count, "checks": total, "failing_graphs": failing}));
            Ok(rep)
        }
        VerifyMode::Walecki(k) => {
            let mut rep = RunReport::new("verify", json!({"walecki": k}));
            rep.bounds = walecki_union(k, &ctx.caps)?;
            rep.violation = rep.bounds.iter().any(|c| !c.pass);
            Ok(rep)
        }
    }
}

pub fn hardness_demo(ctx: &Ctx, source: &Source) -> Result<RunReport> {
    let (g, input) = source.load()?;
    let mut rep = RunReport::new("hardness-demo", input);
    let b = blow_up(&g)?;
    let plus = &b.graph;
    let chi = exact_result(ctx, &g, ParamRequest::Classical(robusta_core::exact::Parameter::Chi), 0, Tier::Solver)?;
    let colors = match &chi.certificate {
        robusta_core::exact::Certificate::Coloring { colors, .. } => colors.clone(),
        _ => unreachable!("chromatic number comes with a coloring"),
    };
    // color every copy like its original vertex
    let mut lifted = vec![0; plus.n()];
    for (v, set) in b.sets.iter().enumerate() {
        for &x in set {
            lifted[x] = colors[v];
        }
    }
    let lift_proper = plus.edges().iter().all(|&(u, v)| lifted[u] != lifted[v]);
    let reps: Vec<usize> = b.sets.iter().map(|s| s[0]).collect();
    let embeds = plus.induced_subgraph(&reps) == g;
    let mut result = json!({
        "n": g.n(),
        "blow_up_order": plus.n(),
        "blow_up_edges": plus.m(),
        "chi": chi.value,
        "lifted_coloring_proper": lift_proper,
        "contains_original": embeds,
    });
    let full = g.n() <= 3;
    let holds = if full {
        let chi_plus = exact_result(ctx, plus, ParamRequest::Classical(robusta_core::exact::Parameter::Chi), 0, Tier::Solver)?;
        let chi1_plus = exact_result(ctx, plus, ParamRequest::Robust(Robust::Chi), 1, Tier::Solver)?;
        result["mode"] = json!("full");
        result["chi_blow_up"] = json!(chi_plus.value);
        result["chi1_blow_up"] = json!(chi1_plus.value);
        rep.results.push(value_of(ctx, chi1_plus.clone()));
        chi_plus.value == chi.value && chi1_plus.value == chi.value
    } else {
        result["mode"] = json!("bounds");
        result["notice"] = json!(format!(
            "blow-up of order {} is too large for the exact robust solver; only chi1(G+) <= chi(G) = chi(G+) is checked",
            plus.n()
        ));
        result["chi_blow_up"] = json!(chi.value);
        result["chi1_blow_up_upper"] = json!(chi.value);
        true
    };
    let holds = holds && lift_proper && embeds;
    result["chain_holds"] = json!(holds);
    rep.results.insert(0, result);
    rep.violation = !holds;
    Ok(rep)
}

pub fn explore(ctx: &Ctx, n_max: usize, filters: bool) -> Result<RunReport> {
    let report = explore_with_progress(n_max, filters, &ctx.caps, |o| {
        eprintln!(
            "order {}: {} graphs, {} computed, {} skipped by filters, {} confirmed",
            o.n, o.graphs, o.computed, o.skipped_by_filters, o.confirmed
        );
    })?;
    for cx in &report.counterexamples {
        check(&cx.graph, &cx.theta)?;
        check(&cx.graph, &cx.theta1)?;
    }
    let mut rep = RunReport::new("explore", json!({"n_max": n_max, "filters": filters}));
    let mut v = serde_json::to_value(&report).unwrap();
    if !ctx.timing {
        strip_times(&mut v);
    }
    rep.results.push(v);
    Ok(rep)
}

fn strip_times(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("elapsed_ms");
            m.values_mut().for_each(strip_times);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_times),
        _ => {}
    }
}

pub fn random_experiment(ctx: &Ctx, m: usize, r: usize, p: f64, trials: usize, seed: u64) -> Result<RunReport> {
    if m * r > ctx.caps.robust_chi {
        return Err(Error::CapExceeded {
            what: "random experiment order".into(),
            size: m * r,
            cap: ctx.caps.robust_chi,
        });
    }
    let mut rng = rng_from_seed(seed);
    let seeds: Vec<u64> = (0..trials).map(|_| rng.gen()).collect();
    let samples: Vec<Result<Value>> = seeds
        .par_iter()
        .map(|&s| {
            let g = random_multipartite(m, r, p, s)?;
            let chi1 = robust_chromatic(&g, &ctx.caps)?;
            check(&g, &chi1)?;
            let chi = exact_result(ctx, &g, ParamRequest::Classical(robusta_core::exact::Parameter::Chi), 0, Tier::Solver)?;
            Ok(json!({"seed": s, "edges": g.m(), "chi1": chi1.value, "chi": chi.value}))
        })
        .collect();
    let samples = samples.into_iter().collect::<Result<Vec<_>>>()?;
    let hits = samples.iter().filter(|v| v["chi1"] == json!(r)).count();
    let frequency = if trials == 0 { 0.0 } else { hits as f64 / trials as f64 };
    let mut rep = RunReport::new("random-experiment", json!({"m": m, "r": r, "p": p, "trials": trials, "seed": seed}));
    rep.results.push(json!({"frequency_chi1_equals_r": frequency, "hits": hits, "samples": samples}));
    Ok(rep)
}
