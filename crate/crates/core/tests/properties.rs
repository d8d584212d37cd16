mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rcaudit_core::construct::{
    audit_construction, construct_coloring, Case, CaseCPolicy, ConstructOptions,
};
use rcaudit_core::exact::{rc_exact, ExactOptions, ExactStatus};
use rcaudit_core::generators::{
    counterexample_inequalities, gen_counterexample, gen_random_connected, CounterexampleParams,
};
use rcaudit_core::graph::{parse_graph6, to_graph6, Graph};
use rcaudit_core::verify::{is_rainbow_connected, passes, verify_certificate, EdgeColoring};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
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

fn connected_strategy(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n, 0.2f64..0.9, any::<u64>())
        .prop_map(|(n, p, seed)| gen_random_connected(n, p, seed).unwrap())
}

fn colored(min_n: usize, max_n: usize, max_q: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    connected_strategy(min_n, max_n).prop_flat_map(move |g| {
        let m = g.m();
        (Just(g), proptest::collection::vec(0..max_q, m))
    })
}

fn union_find_components(n: usize, edges: &[(usize, usize)]) -> BTreeSet<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        parent[a] = b;
    }
    let mut blocks = std::collections::BTreeMap::<usize, Vec<usize>>::new();
    for v in 0..n {
        let r = find(&mut parent, v);
        blocks.entry(r).or_default().push(v);
    }
    blocks.into_values().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn graph6_round_trip(g in graph_strategy(30)) {
        prop_assert_eq!(parse_graph6(&to_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn degree_sum_is_twice_edge_count(g in graph_strategy(20)) {
        let sum: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(sum, 2 * g.m());
    }

    #[test]
    fn deletion_components_match_union_find(g in graph_strategy(14), mask in any::<u16>()) {
        let removed: Vec<usize> = (0..g.n()).filter(|v| mask >> v & 1 == 1).collect();
        let (rest, back) = g.delete_vertices(&removed).unwrap();
        let mine: BTreeSet<Vec<usize>> = rest
            .components()
            .blocks
            .iter()
            .map(|b| b.iter().map(|&v| back[v]).collect())
            .collect();
        let kept: Vec<usize> = (0..g.n()).filter(|v| !removed.contains(v)).collect();
        let kept_edges: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .filter(|(u, v)| kept.contains(u) && kept.contains(v))
            .copied()
            .collect();
        let reference: BTreeSet<Vec<usize>> = union_find_components(g.n(), &kept_edges)
            .into_iter()
            .filter(|b| kept.contains(&b[0]))
            .collect();
        prop_assert_eq!(mine, reference);
    }

    #[test]
    fn contraction_is_simple(g in connected_strategy(2, 12), start in any::<usize>(), size in 1usize..5) {
        // grow a connected set by breadth-first search from a random vertex
        let start = start % g.n();
        let order: Vec<usize> = {
            let d = g.bfs_distances(start);
            let mut vs: Vec<usize> = (0..g.n()).collect();
            vs.sort_by_key(|&v| (d[v], v));
            vs
        };
        let mut set: Vec<usize> = order.into_iter().take(size.min(g.n())).collect();
        set.sort_unstable();
        let c = g.contract_set(&set).unwrap();
        prop_assert_eq!(c.graph.n(), g.n() - set.len() + 1);
        let edges = c.graph.edges();
        prop_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(edges.iter().all(|&(u, v)| u < v));
        // outside edges survive, edges into the set merge
        for &(u, v) in g.edges() {
            let (a, b) = (c.origin_map[u], c.origin_map[v]);
            if a != b {
                prop_assert!(c.graph.has_edge(a, b));
            } else {
                prop_assert!(set.contains(&u) && set.contains(&v));
            }
        }
        prop_assert!(c.graph.is_connected());
    }

    #[test]
    fn rc_of_connected_graph_is_one_iff_complete(g in connected_strategy(2, 7)) {
        let rc = rc_exact(&g, &ExactOptions::default()).unwrap();
        prop_assert_eq!(rc.status, ExactStatus::Exact);
        prop_assert_eq!(rc.value == 1, g.is_complete());
    }

    #[test]
    fn pruning_does_not_change_rc(g in connected_strategy(2, 7)) {
        let on = rc_exact(&g, &ExactOptions::default()).unwrap();
        let off = rc_exact(&g, &ExactOptions { geodesic_pruning: false, ..ExactOptions::default() }).unwrap();
        prop_assert_eq!(on.value, off.value);
        prop_assert!(on.stats.nodes <= off.stats.nodes);
    }

    #[test]
    fn adding_an_edge_never_raises_rc(g in connected_strategy(3, 7), pick in any::<usize>()) {
        let missing: Vec<(usize, usize)> = (0..g.n())
            .flat_map(|u| (u + 1..g.n()).map(move |v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        prop_assume!(!missing.is_empty());
        let mut edges = g.edges().to_vec();
        edges.push(missing[pick % missing.len()]);
        let h = Graph::from_edges(g.n(), edges).unwrap();
        let opts = ExactOptions::default();
        prop_assert!(rc_exact(&h, &opts).unwrap().value <= rc_exact(&g, &opts).unwrap().value);
    }

    #[test]
    fn generator_is_deterministic(n in 1usize..30, p in 0.1f64..1.0, seed in any::<u64>()) {
        let a = gen_random_connected(n, p.max(2.0 / n as f64).min(1.0), seed);
        let b = gen_random_connected(n, p.max(2.0 / n as f64).min(1.0), seed);
        prop_assert_eq!(a, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn verifier_matches_simple_path_oracle((g, colors) in colored(2, 7, 4)) {
        let c = EdgeColoring::new(&g, colors.clone()).unwrap();
        let outcome = is_rainbow_connected(&g, &c).unwrap();
        prop_assert_eq!(outcome.is_connected(), common::oracle_rainbow_connected(&g, &colors));
        match outcome {
            rcaudit_core::verify::RainbowOutcome::Connected(cert) => {
                prop_assert!(verify_certificate(&g, &c, &cert).is_ok());
            }
            rcaudit_core::verify::RainbowOutcome::Failing(p) => {
                prop_assert!(rcaudit_core::verify::rainbow_path(&g, &c, p.u, p.v).unwrap().is_none());
                // every lexicographically earlier pair is connected
                for u in 0..=p.u {
                    for v in u + 1..g.n() {
                        if (u, v) < (p.u, p.v) {
                            prop_assert!(rcaudit_core::verify::rainbow_path(&g, &c, u, v).unwrap().is_some());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn refining_a_passing_coloring_keeps_it_passing((g, colors) in colored(2, 9, 3), pick in any::<usize>()) {
        let c = EdgeColoring::new(&g, colors.clone()).unwrap();
        prop_assume!(passes(&g, &c));
        let mut refined = colors;
        let fresh = c.q();
        let e = pick % refined.len();
        refined[e] = fresh;
        prop_assert!(passes(&g, &EdgeColoring::new(&g, refined).unwrap()));
    }

    #[test]
    fn construction_respects_budget((g, _) in colored(1, 14, 1)) {
        let built = construct_coloring(&g).unwrap();
        prop_assert!(built.colors_used() <= g.n() - g.min_degree());
        prop_assert_eq!(built.coloring.distinct(), built.colors_used());
        prop_assert!(passes(&g, &built.coloring));
        prop_assert!(built.trace.violations().is_empty());
    }
}

/// Colors at each node are the children's palettes plus the fresh ones, and
/// every case of the induction is exercised.
#[test]
fn construction_cases_on_gadgets() {
    let mut seen = BTreeSet::new();
    for seed in 0..3000 {
        let g = common::clique_gadget(seed);
        let built = construct_coloring(&g).unwrap();
        let g6 = to_graph6(&g);
        assert!(built.trace.violations().is_empty(), "{g6}");
        assert!(passes(&g, &built.coloring), "{g6}");
        assert_eq!(built.coloring.distinct(), built.colors_used(), "{g6}");
        for node in built.trace.nodes() {
            seen.insert(node.case);
            assert!(node.colors_used <= node.budget, "{g6}");
            let children: usize = node.children.iter().map(|c| c.colors_used).sum();
            match node.case {
                Case::A | Case::B | Case::C => {
                    assert_eq!(node.colors_used, children + node.fresh_colors, "{g6}");
                    assert_eq!(
                        node.fresh_colors,
                        node.children.len() + usize::from(node.case == Case::B),
                        "{g6}"
                    );
                }
                Case::D => assert_eq!(node.colors_used, children + 1, "{g6}"),
                Case::Base => assert!(node.colors_used <= 1, "{g6}"),
            }
        }
    }
    let all: BTreeSet<Case> = [Case::Base, Case::A, Case::B, Case::C, Case::D].into();
    assert_eq!(seen, all);
}

/// Reusing the first cross color on the whole clique fails at every case C
/// node, and the split rule fixes each of them.
#[test]
fn first_cross_fails_exactly_where_case_c_occurs() {
    let first_cross = ConstructOptions {
        case_c: CaseCPolicy::FirstCross,
        ..ConstructOptions::default()
    };
    let mut case_c_roots = 0;
    for seed in 0..3000 {
        let g = common::clique_gadget(seed);
        let split = construct_coloring(&g).unwrap();
        let has_c = split.trace.count_cases(Case::C) > 0;
        let audit = audit_construction(&g, &first_cross).unwrap();
        assert_eq!(audit.is_pass(), !has_c, "{}", to_graph6(&g));
        case_c_roots += usize::from(split.trace.case == Case::C);
    }
    assert!(case_c_roots > 0);
}

#[test]
fn counterexample_family_facts_for_small_delta() {
    for delta in 2..=8 {
        for t in 1..=delta / 2 {
            for seed in [None, Some(delta as u64 * 31 + t as u64)] {
                let params = CounterexampleParams {
                    seed,
                    ..CounterexampleParams::new(delta, t)
                };
                let (g, facts) = gen_counterexample(&params).unwrap();
                assert_eq!(g.n(), params.n());
                assert_eq!(g.degree_stats().sigma2, Some(2 * (delta + 1)));
                assert_eq!(g.min_degree(), delta);
                let r = counterexample_inequalities(&g, &facts).unwrap();
                assert!(r.refuted_claim_violated && r.corrected_claim_tight);
                let again = gen_counterexample(&params).unwrap();
                assert_eq!(again.0, g);
            }
        }
    }
}
