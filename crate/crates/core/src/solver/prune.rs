use crate::graph::Graph;

/// Drops every vertex whose closed-neighbourhood weight
/// `w(v) + sum of w(u) over neighbours u` is below `lower_bound`; such a
/// vertex lies in no clique of weight `lower_bound` or more. Returns the
/// induced subgraph and, for each of its vertices, the original id.
///
/// A single pass over the original neighbourhoods is made.
pub fn prune_dominated(g: &Graph, lower_bound: f64) -> (Graph, Vec<usize>) {
    let slack = 1e-9 * lower_bound.abs();
    let kept: Vec<usize> = (0..g.n())
        .filter(|&v| {
            let closed = g.weight(v) + g.neighbors(v).iter().map(|u| g.weight(u)).sum::<f64>();
            closed >= lower_bound - slack
        })
        .collect();
    (g.induced(&kept), kept)
}
