use cliquekit::ip::{bnb_solve_binary, emit_lp_text, export_edge_formulation, parse_lp_text};
use cliquekit::solver::{
    bpso_max_weight_clique, enumerate_maximal_cliques, exact_max_weight_clique, greedy_max_weight_clique,
    max_weight_independent_set, BpsoParams,
};
use cliquekit::{Error, Graph};
use proptest::prelude::*;

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (1usize..=11).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (
            prop::collection::vec(any::<bool>(), pairs),
            prop::collection::vec(1u8..=9, n),
        )
            .prop_map(move |(mask, weights)| {
                let mut edges = Vec::new();
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if mask[k] {
                            edges.push((i, j));
                        }
                        k += 1;
                    }
                }
                Graph::new(n, &edges, weights.into_iter().map(f64::from).collect()).unwrap()
            })
    })
}

/// Heaviest clique with at least `k` vertices by scanning every subset.
fn scan(g: &Graph, k: usize) -> Option<f64> {
    let n = g.n();
    (0u32..1 << n)
        .filter(|mask| mask.count_ones() as usize >= k)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|s| s.iter().all(|&a| s.iter().all(|&b| a == b || g.has_edge(a, b))))
        .map(|s| s.iter().map(|&v| g.weight(v)).sum::<f64>())
        .reduce(f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exact_matches_subset_scan(g in graph_strategy(), k in 0usize..5) {
        let min = (k > 0).then_some(k);
        match (exact_max_weight_clique(&g, min), scan(&g, k)) {
            (Ok(r), Some(w)) => {
                prop_assert_eq!(r.weight, w);
                prop_assert!(g.is_clique(r.members()).unwrap());
                prop_assert!(r.members().len() >= k);
            }
            (Err(Error::Infeasible(_)), None) => {}
            (got, want) => prop_assert!(false, "solver {:?} vs scan {:?}", got, want),
        }
    }

    #[test]
    fn greedy_returns_a_maximal_clique(g in graph_strategy()) {
        let r = greedy_max_weight_clique(&g);
        prop_assert!(g.is_maximal_clique(r.members()).unwrap());
        prop_assert!(r.weight <= scan(&g, 0).unwrap());
    }

    #[test]
    fn bpso_returns_a_feasible_clique(g in graph_strategy(), seed in any::<u64>()) {
        let params = BpsoParams { particles: 6, iterations: 15, seed, ..BpsoParams::default() };
        let r = bpso_max_weight_clique(&g, &params).unwrap();
        prop_assert!(g.is_clique(r.members()).unwrap());
        prop_assert!(r.weight >= greedy_max_weight_clique(&g).weight);
        prop_assert!(r.weight <= exact_max_weight_clique(&g, None).unwrap().weight);
    }

    #[test]
    fn oracle_lists_exactly_the_maximal_cliques(g in graph_strategy()) {
        for c in enumerate_maximal_cliques(&g, 20).unwrap() {
            prop_assert!(g.is_maximal_clique(c.members()).unwrap());
        }
        let best = enumerate_maximal_cliques(&g, 20).unwrap().iter().map(|c| c.weight()).fold(0.0, f64::max);
        prop_assert_eq!(best, scan(&g, 0).unwrap());
    }

    #[test]
    fn independent_set_is_clique_of_complement(g in graph_strategy()) {
        let mis = max_weight_independent_set(&g, None).unwrap();
        prop_assert!(g.is_independent_set(mis.members()).unwrap());
        prop_assert_eq!(mis.weight, scan(&g.complement(), 0).unwrap());
    }

    #[test]
    fn edge_formulation_agrees_after_text_round_trip(g in graph_strategy(), k in 0usize..4) {
        let min = (k > 0).then_some(k);
        let program = parse_lp_text(&emit_lp_text(&export_edge_formulation(&g, min))).unwrap();
        match (bnb_solve_binary(&program), scan(&g, k)) {
            (Ok(s), Some(w)) => prop_assert_eq!(s.objective, w),
            (Err(Error::Infeasible(_)), None) => {}
            (got, want) => prop_assert!(false, "ip {:?} vs scan {:?}", got, want),
        }
    }
}
