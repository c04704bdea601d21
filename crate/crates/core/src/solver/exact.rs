use std::cmp::Ordering;
use std::time::Instant;

use super::{check_min_size, greedy_max_weight_clique, tol, Algorithm, SolveResult, SolveStats};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Exact maximum weight clique by branch and bound, optionally restricted to
/// cliques with at least `min_size` vertices.
///
/// Vertices are ranked once at the root by non-increasing `w(v) * (1 + deg(v))`
/// (lowest id first on ties). A node holds the current clique and the
/// candidates ranked after its last vertex; it is cut when the clique weight
/// plus the total candidate weight falls below the incumbent, or when the
/// candidates can no longer reach `min_size`. The incumbent starts from the
/// greedy heuristic. Equal-weight optima resolve to the lexicographically
/// smallest sorted vertex list, so the answer does not depend on the ranking.
pub fn exact_max_weight_clique(g: &Graph, min_size: Option<usize>) -> Result<SolveResult> {
    check_min_size(min_size)?;
    let start = Instant::now();
    let n = g.n();

    let mut order: Vec<usize> = (0..n).collect();
    let key = |v: usize| g.weight(v) * (1.0 + g.degree(v) as f64);
    order.sort_by(|&a, &b| key(b).partial_cmp(&key(a)).unwrap_or(Ordering::Equal).then(a.cmp(&b)));
    let mut rank = vec![0; n];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }
    let adjacency: Vec<BitSet> = order
        .iter()
        .map(|&v| BitSet::from_ids(n, g.neighbors(v).iter().map(|u| rank[u])))
        .collect();
    let weights: Vec<f64> = order.iter().map(|&v| g.weight(v)).collect();

    let required = min_size.unwrap_or(0);
    let greedy = greedy_max_weight_clique(g);
    let incumbent = (greedy.clique.len() >= required.max(1) || n == 0 && required == 0)
        .then(|| (greedy.members().to_vec(), greedy.weight));

    let mut search = Search {
        adjacency: &adjacency,
        weights: &weights,
        order: &order,
        required,
        best: incumbent,
        nodes: 0,
        clique: Vec::new(),
    };
    search.expand(0.0, BitSet::full(n));

    let nodes = search.nodes;
    let (members, _) = search
        .best
        .ok_or_else(|| Error::Infeasible(format!("no clique with at least {required} vertices")))?;
    Ok(SolveResult::new(
        VertexSet::new(g, members)?,
        Algorithm::Exact,
        SolveStats {
            nodes_explored: nodes,
            wall_time: start.elapsed(),
            ..Default::default()
        },
    ))
}

struct Search<'a> {
    adjacency: &'a [BitSet],
    weights: &'a [f64],
    order: &'a [usize],
    required: usize,
    /// Sorted original ids and weight of the best clique so far.
    best: Option<(Vec<usize>, f64)>,
    nodes: u64,
    /// Current clique, as ranks.
    clique: Vec<usize>,
}

impl Search<'_> {
    fn best_weight(&self) -> f64 {
        self.best.as_ref().map_or(f64::NEG_INFINITY, |b| b.1)
    }

    fn expand(&mut self, weight: f64, mut candidates: BitSet) {
        self.nodes += 1;
        if candidates.is_empty() {
            self.offer(weight);
            return;
        }
        let mut remaining_weight: f64 = candidates.iter().map(|v| self.weights[v]).sum();
        let mut remaining = candidates.count();
        while let Some(v) = candidates.first() {
            let best = self.best_weight();
            if weight + remaining_weight < best - tol(best)
                || self.clique.len() + remaining < self.required
            {
                return;
            }
            candidates.remove(v);
            remaining -= 1;
            remaining_weight -= self.weights[v];
            self.clique.push(v);
            self.expand(weight + self.weights[v], candidates.intersection(&self.adjacency[v]));
            self.clique.pop();
        }
    }

    fn offer(&mut self, weight: f64) {
        if self.clique.len() < self.required.max(1) && !(self.clique.is_empty() && self.required == 0) {
            return;
        }
        let best = self.best_weight();
        if weight < best - tol(best) {
            return;
        }
        let mut members: Vec<usize> = self.clique.iter().map(|&r| self.order[r]).collect();
        members.sort_unstable();
        let better = match &self.best {
            None => true,
            Some((current, w)) => weight > w + tol(*w) || members < *current,
        };
        if better {
            self.best = Some((members, weight));
        }
    }
}
