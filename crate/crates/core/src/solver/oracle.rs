use std::time::Instant;

use super::{check_min_size, tol, Algorithm, SolveResult, SolveStats};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Default vertex-count guard for exhaustive enumeration.
pub const DEFAULT_ORACLE_LIMIT: usize = 20;

/// Every maximal clique of `g` (Bron–Kerbosch with Tomita pivoting), sorted
/// lexicographically by member list. Refuses graphs above `limit` vertices.
pub fn enumerate_maximal_cliques(g: &Graph, limit: usize) -> Result<Vec<VertexSet>> {
    Ok(enumerate(g, limit)?.0)
}

fn enumerate(g: &Graph, limit: usize) -> Result<(Vec<VertexSet>, u64)> {
    if g.n() > limit {
        return Err(Error::GuardExceeded { size: g.n(), limit });
    }
    let mut out = Vec::new();
    let mut calls = 0;
    let mut current = Vec::new();
    bron_kerbosch(g, &mut current, BitSet::full(g.n()), BitSet::new(g.n()), &mut out, &mut calls);
    let mut sets: Vec<VertexSet> = out
        .into_iter()
        .map(|members| VertexSet::new(g, members))
        .collect::<Result<_>>()?;
    sets.sort_by(|a, b| a.members().cmp(b.members()));
    Ok((sets, calls))
}

fn bron_kerbosch(
    g: &Graph,
    current: &mut Vec<usize>,
    mut candidates: BitSet,
    mut excluded: BitSet,
    out: &mut Vec<Vec<usize>>,
    calls: &mut u64,
) {
    *calls += 1;
    if candidates.is_empty() {
        if excluded.is_empty() {
            out.push(current.clone());
        }
        return;
    }
    let pivot = candidates
        .iter()
        .chain(excluded.iter())
        .max_by_key(|&u| (candidates.intersection_count(g.neighbors(u)), std::cmp::Reverse(u)))
        .expect("candidates are non-empty");
    let mut branch = candidates.clone();
    branch.difference_with(g.neighbors(pivot));
    for v in branch.iter() {
        current.push(v);
        bron_kerbosch(
            g,
            current,
            candidates.intersection(g.neighbors(v)),
            excluded.intersection(g.neighbors(v)),
            out,
            calls,
        );
        current.pop();
        candidates.remove(v);
        excluded.insert(v);
    }
}

/// Best maximal clique by exhaustive enumeration. With non-negative weights a
/// maximal clique always dominates its subsets, so this is optimal; among
/// cliques with at least `min_size` vertices it is optimal too, since every
/// such clique extends to a maximal one of the same or larger size.
pub fn oracle_max_weight_clique(
    g: &Graph,
    min_size: Option<usize>,
    limit: usize,
) -> Result<SolveResult> {
    check_min_size(min_size)?;
    let start = Instant::now();
    let required = min_size.unwrap_or(0);
    let (cliques, calls) = enumerate(g, limit)?;
    let mut best: Option<&VertexSet> = None;
    for c in cliques.iter().filter(|c| c.len() >= required) {
        // Sorted input: the first of a tied group is the lexicographic minimum.
        if best.is_none_or(|b| c.weight() > b.weight() + tol(b.weight())) {
            best = Some(c);
        }
    }
    let best = best
        .ok_or_else(|| Error::Infeasible(format!("no clique with at least {required} vertices")))?;
    Ok(SolveResult::new(
        best.clone(),
        Algorithm::Oracle,
        SolveStats {
            nodes_explored: calls,
            wall_time: start.elapsed(),
            ..Default::default()
        },
    ))
}
