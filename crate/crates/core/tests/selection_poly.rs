use proptest::prelude::*;
use robusta_core::exact::canonical::canonical_form;
use robusta_core::exact::oracle;
use robusta_core::graph::generators::{complete, cycle};
use robusta_core::poly::{
    degeneracy_order, edge_color_reduction, min_outdegree_orientation, misra_gries,
    quasi_unicyclic_edge_decomposition,
};
use robusta_core::selection::{
    apply_selection, enumerate_removable_sets, is_quasi_unicyclic, is_removable, selection_from_edge_set, EnumMode,
};
use robusta_core::{Edge, Graph};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1usize..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<Edge> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn subset_of(edges: &[Edge], mask: u64) -> Vec<Edge> {
    edges.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect()
}

fn subset(g: &Graph, mask: u64) -> Vec<Edge> {
    subset_of(g.edges(), mask)
}

#[test]
fn maximal_connected_on_five_vertices() {
    let pairs: Vec<Edge> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
    let mut found = std::collections::BTreeSet::new();
    for mask in 0u64..1 << pairs.len() {
        let g = Graph::from_edges(5, subset_of(&pairs, mask)).unwrap();
        if !g.is_connected() || !is_quasi_unicyclic(&g) {
            continue;
        }
        let maximal = pairs.iter().filter(|e| !g.edges().contains(e)).all(|&e| {
            let mut more = g.edges().to_vec();
            more.push(e);
            !is_quasi_unicyclic(&Graph::from_edges(5, more).unwrap())
        });
        if maximal {
            found.insert(canonical_form(&g).unwrap());
        }
    }
    let tri = |extra: &[Edge]| {
        let mut e = complete(3).edges().to_vec();
        e.extend_from_slice(extra);
        Graph::from_edges(5, e).unwrap()
    };
    let mut c4_leaf = cycle(4).edges().to_vec();
    c4_leaf.push((0, 4));
    let expected = [
        cycle(5),
        Graph::from_edges(5, c4_leaf).unwrap(),
        tri(&[(0, 3), (1, 4)]),
        tri(&[(0, 3), (0, 4)]),
        tri(&[(0, 3), (3, 4)]),
    ];
    let want: std::collections::BTreeSet<_> = expected.iter().map(|g| canonical_form(g).unwrap()).collect();
    assert_eq!(want.len(), 5);
    assert_eq!(found, want);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn removability_matches_subset_condition(g in graph(7), mask in any::<u64>(), s in 0usize..3) {
        let f = subset(&g, mask);
        let got = is_removable(&f, &g, s).unwrap();
        prop_assert_eq!(got.is_some(), oracle::removable_by_subsets(g.n(), &f, s));
        if let Some(o) = got {
            prop_assert!(o.out_degrees(g.n()).iter().all(|&d| d <= s));
            let sel = selection_from_edge_set(&f, &g, s).unwrap();
            sel.validate(&g).unwrap();
            let r = apply_selection(&g, &sel).unwrap();
            prop_assert_eq!(r.result.m() + f.len(), g.m());
        }
    }

    #[test]
    fn pseudoforests_are_the_one_removable_sets(g in graph(8)) {
        let sparse = g.components().iter().all(|c| g.induced_edge_count(c) <= c.len());
        prop_assert_eq!(is_quasi_unicyclic(&g), sparse);
        prop_assert_eq!(is_removable(g.edges(), &g, 1).unwrap().is_some(), sparse);
    }

    #[test]
    fn enumeration_is_exact(g in graph(6), s in 0usize..3) {
        let all = enumerate_removable_sets(&g, s, EnumMode::All, 20).unwrap();
        let want = (0u64..1 << g.m())
            .filter(|&m| oracle::removable_by_subsets(g.n(), &subset(&g, m), s))
            .count();
        prop_assert_eq!(all.len(), want);
        for f in enumerate_removable_sets(&g, s, EnumMode::Maximal, 20).unwrap() {
            for &e in g.edges().iter().filter(|e| !f.contains(e)) {
                let mut h = f.clone();
                h.push(e);
                prop_assert!(!oracle::removable_by_subsets(g.n(), &h, s));
            }
        }
    }

    #[test]
    fn orientation_is_optimal(g in graph(9)) {
        let o = min_outdegree_orientation(&g);
        prop_assert_eq!(o.orientation.arcs.len(), g.m());
        prop_assert_eq!(o.orientation.max_outdegree, oracle::max_subset_density(&g));
        if g.m() > 0 {
            let w = g.induced_edge_count(&o.witness);
            prop_assert_eq!(w.div_ceil(o.witness.len()), o.orientation.max_outdegree);
        }
        let d = quasi_unicyclic_edge_decomposition(&g);
        prop_assert_eq!(d.classes.len(), o.orientation.max_outdegree);
    }

    #[test]
    fn degeneracy_order_is_sound(g in graph(12)) {
        let d = degeneracy_order(&g);
        let mut pos = vec![0; g.n()];
        for (i, &v) in d.order.iter().enumerate() {
            pos[v] = i;
        }
        for v in 0..g.n() {
            prop_assert!(g.neighbors(v).iter().filter(|&&w| pos[w] < pos[v]).count() <= d.d);
        }
        if d.d > 0 {
            let core = g.induced_subgraph(&d.core);
            prop_assert_eq!(core.min_degree(), d.d);
        }
    }

    #[test]
    fn edge_colorings_are_proper(g in graph(9)) {
        let c = misra_gries(&g);
        let delta = g.max_degree();
        prop_assert!(c.iter().all(|&x| x <= delta));
        for (i, &(a, b)) in g.edges().iter().enumerate() {
            for (j, &(x, y)) in g.edges().iter().enumerate().skip(i + 1) {
                if a == x || a == y || b == x || b == y {
                    prop_assert_ne!(c[i], c[j]);
                }
            }
        }
        let r = edge_color_reduction(&g).unwrap();
        r.selection.validate(&g).unwrap();
        prop_assert!(r.colors_used + 2 <= r.colors_before.max(2) || r.degenerate);
        prop_assert!(r.colors_used <= delta.saturating_sub(1));
    }
}
