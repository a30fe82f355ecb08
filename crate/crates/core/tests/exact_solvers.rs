use proptest::prelude::*;
use robusta_core::exact::oracle;
use robusta_core::exact::robust::{iota, robust_chromatic};
use robusta_core::exact::verify::verify;
use robusta_core::exact::{classical_parameter, robust_parameter, Caps, Robust, Tier};
use robusta_core::graph::generators::*;
use robusta_core::{Edge, Graph};

fn solve(g: &Graph, w: Robust, s: usize, tier: Tier) -> usize {
    let r = robust_parameter(g, w, s, tier, &Caps::default()).unwrap();
    verify(g, &r).unwrap();
    r.value
}

/// Robust values from scratch: every edge subset, Hakimi's subset
/// condition, and the naive classical routines.
fn brute(g: &Graph, s: usize) -> Vec<usize> {
    let m = g.m();
    let mut best: Vec<Option<usize>> = vec![None; 5];
    for mask in 0u32..1 << m {
        let f: Vec<Edge> = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| g.edges()[i]).collect();
        if !oracle::removable_by_subsets(g.n(), &f, s) {
            continue;
        }
        let h = g.remove_edges(&f);
        for (slot, w) in best.iter_mut().zip(Robust::ALL) {
            let v = oracle::classical(&h, w);
            *slot = Some(match *slot {
                None => v,
                Some(b) if w.minimizes() => b.min(v),
                Some(b) => b.max(v),
            });
        }
    }
    best.into_iter().map(Option::unwrap).collect()
}

#[test]
fn solver_matches_subset_brute_force() {
    let mut rng = rng_from_seed(2024);
    let mut done = 0;
    while done < 40 {
        let n = 3 + done % 4;
        let g = erdos_renyi_with(n, 0.6, &mut rng);
        if g.m() > 11 {
            continue;
        }
        for s in 0..=2 {
            let want = brute(&g, s);
            for (w, &v) in Robust::ALL.iter().zip(&want) {
                assert_eq!(solve(&g, *w, s, Tier::Solver), v, "{w:?} s={s} on {:?}", g.edges());
            }
        }
        done += 1;
    }
}

#[test]
fn tiers_agree() {
    let mut rng = rng_from_seed(77);
    for i in 0..60 {
        let g = erdos_renyi_with(4 + i % 4, 0.5, &mut rng);
        if g.m() > 14 {
            continue;
        }
        for s in 0..=2 {
            for w in Robust::ALL {
                let o = solve(&g, w, s, Tier::Oracle);
                assert_eq!(solve(&g, w, s, Tier::Maximal), o, "{w:?} s={s} {:?}", g.edges());
                assert_eq!(solve(&g, w, s, Tier::Solver), o, "{w:?} s={s} {:?}", g.edges());
            }
        }
    }
}

#[test]
fn robust_chi_formulations_agree() {
    let mut rng = rng_from_seed(5);
    for i in 0..100 {
        let g = erdos_renyi_with(4 + i % 8, 0.55, &mut rng);
        let a = robust_chromatic(&g, &Caps::default()).unwrap();
        verify(&g, &a).unwrap();
        assert_eq!(a.value, solve(&g, Robust::Chi, 1, Tier::Solver));
    }
}

#[test]
fn iota_matches_naive() {
    let mut rng = rng_from_seed(9);
    for i in 0..80 {
        let g = erdos_renyi_with(3 + i % 8, 0.5, &mut rng);
        let r = iota(&g, &Caps::default()).unwrap();
        verify(&g, &r).unwrap();
        assert_eq!(r.value, oracle::iota(&g));
    }
}

#[test]
fn classical_matches_naive() {
    let mut rng = rng_from_seed(13);
    for i in 0..80 {
        let g = erdos_renyi_with(2 + i % 9, 0.5, &mut rng);
        for w in Robust::ALL {
            // the naive edge coloring is too slow beyond this
            if w == Robust::ChiPrime && g.m() > 16 {
                continue;
            }
            let r = classical_parameter(&g, w.classical(), &Caps::default()).unwrap();
            verify(&g, &r).unwrap();
            assert_eq!(r.value, oracle::classical(&g, w), "{w:?} {:?}", g.edges());
        }
    }
}

#[test]
fn named_values() {
    let k = |n| complete(n);
    for n in 3..=8 {
        assert_eq!(solve(&k(n), Robust::Chi, 1, Tier::Solver), n.div_ceil(3));
        assert_eq!(solve(&k(n), Robust::Omega, 1, Tier::Solver), n.div_ceil(3));
    }
    // the whole star is a removable set
    assert_eq!(solve(&star(9), Robust::ChiPrime, 1, Tier::Oracle), 0);
    assert_eq!(solve(&k(5), Robust::ChiPrime, 1, Tier::Solver), 3);
    assert_eq!(solve(&k(4), Robust::ChiPrime, 1, Tier::Solver), 1);
    let k234 = complete_multipartite(&[2, 3, 4]).unwrap();
    assert_eq!(solve(&k234, Robust::Chi, 1, Tier::Solver), 2);
}

fn small_graph() -> impl Strategy<Value = Graph> {
    (2usize..=8).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn larger_budget_never_hurts(g in small_graph()) {
        for w in Robust::ALL {
            let v: Vec<usize> = (0..=2).map(|s| solve(&g, w, s, Tier::Solver)).collect();
            if w.minimizes() {
                prop_assert!(v[0] >= v[1] && v[1] >= v[2], "{w:?} {v:?}");
            } else {
                prop_assert!(v[0] <= v[1] && v[1] <= v[2], "{w:?} {v:?}");
            }
        }
    }

    #[test]
    fn budget_zero_is_classical(g in small_graph()) {
        for w in Robust::ALL {
            prop_assert_eq!(solve(&g, w, 0, Tier::Solver), oracle::classical(&g, w));
        }
    }
}
