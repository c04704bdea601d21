use std::time::Instant;

use super::{tol, Algorithm, SolveResult, SolveStats};
use crate::bitset::BitSet;
use crate::graph::{Graph, VertexSet};

/// Neighbour-weight greedy heuristic.
///
/// Each round scores every remaining candidate by the summed weight of its
/// neighbours inside the candidate subgraph, takes the best (lowest id on
/// ties), and shrinks the candidates to that vertex's neighbourhood. The
/// result is always a maximal clique. Candidate sets shrink with every round,
/// so the total work stays quadratic in `n` on graphs of bounded density.
pub fn greedy_max_weight_clique(g: &Graph) -> SolveResult {
    let start = Instant::now();
    let mut candidates = BitSet::full(g.n());
    let mut clique = BitSet::new(g.n());
    let mut rounds = 0u64;

    while !candidates.is_empty() {
        rounds += 1;
        let mut chosen = None;
        let mut best = f64::NEG_INFINITY;
        for v in candidates.iter() {
            let score: f64 = g
                .neighbors(v)
                .iter_and(&candidates)
                .map(|u| g.weight(u))
                .sum();
            if chosen.is_none() || score > best + tol(best) {
                chosen = Some(v);
                best = score;
            }
        }
        let v = chosen.expect("candidates are non-empty");
        clique.insert(v);
        candidates.intersect_with(g.neighbors(v));
    }

    SolveResult::new(
        VertexSet::from_bits(g, &clique),
        Algorithm::Greedy,
        SolveStats {
            iterations: rounds,
            wall_time: start.elapsed(),
            ..Default::default()
        },
    )
}
