//! Maximum weight clique solvers and their independent-set duals.
//!
//! Every solver returns a [`SolveResult`] whose vertex set has been checked to
//! be a clique of the input graph. Ties between equal-weight answers resolve to
//! the lowest vertex id (greedy, BPSO repair) or the lexicographically smallest
//! sorted vertex list (exact, oracle).

mod bpso;
mod exact;
mod greedy;
mod oracle;
mod prune;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

pub use bpso::{bpso_max_weight_clique, BpsoParams};
pub use exact::exact_max_weight_clique;
pub use greedy::greedy_max_weight_clique;
pub use oracle::{enumerate_maximal_cliques, oracle_max_weight_clique, DEFAULT_ORACLE_LIMIT};
pub use prune::prune_dominated;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Exact,
    Greedy,
    Bpso,
    Oracle,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Exact,
        Algorithm::Greedy,
        Algorithm::Bpso,
        Algorithm::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Exact => "exact",
            Algorithm::Greedy => "greedy",
            Algorithm::Bpso => "bpso",
            Algorithm::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown algorithm `{s}`")))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SolveStats {
    /// Branch-and-bound nodes (exact) or recursive calls (oracle).
    pub nodes_explored: u64,
    /// Selection rounds (greedy) or swarm iterations (BPSO).
    pub iterations: u64,
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveResult {
    pub clique: VertexSet,
    pub weight: f64,
    pub algorithm: Algorithm,
    pub stats: SolveStats,
}

impl SolveResult {
    fn new(clique: VertexSet, algorithm: Algorithm, stats: SolveStats) -> Self {
        SolveResult {
            weight: clique.weight(),
            clique,
            algorithm,
            stats,
        }
    }

    pub fn members(&self) -> &[usize] {
        self.clique.members()
    }
}

/// Knobs shared by the dispatching entry points.
#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub min_size: Option<usize>,
    pub bpso: BpsoParams,
    /// Largest graph the exhaustive oracle accepts.
    pub oracle_limit: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            min_size: None,
            bpso: BpsoParams::default(),
            oracle_limit: DEFAULT_ORACLE_LIMIT,
        }
    }
}

impl SolveOptions {
    pub fn with_min_size(mut self, k: Option<usize>) -> Self {
        self.min_size = k;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.bpso.seed = seed;
        self
    }
}

/// Relative tolerance under which two clique weights count as tied.
pub(crate) const TIE_TOLERANCE: f64 = 1e-10;

#[inline]
pub(crate) fn tol(reference: f64) -> f64 {
    TIE_TOLERANCE * reference.abs()
}

pub fn check_min_size(min_size: Option<usize>) -> Result<()> {
    if min_size == Some(0) {
        return Err(Error::InvalidParameter("min-size must be at least 1".into()));
    }
    Ok(())
}

/// Maximum weight clique with the chosen algorithm. Heuristics that land below
/// `min_size` report [`Error::MinSizeUnmet`]; only exact and oracle can prove
/// [`Error::Infeasible`].
pub fn solve(g: &Graph, algorithm: Algorithm, options: &SolveOptions) -> Result<SolveResult> {
    check_min_size(options.min_size)?;
    let result = match algorithm {
        Algorithm::Exact => exact_max_weight_clique(g, options.min_size)?,
        Algorithm::Oracle => oracle_max_weight_clique(g, options.min_size, options.oracle_limit)?,
        Algorithm::Greedy => greedy_max_weight_clique(g),
        Algorithm::Bpso => bpso_max_weight_clique(g, &options.bpso)?,
    };
    if let Some(k) = options.min_size {
        if result.clique.len() < k {
            return Err(Error::MinSizeUnmet {
                algorithm: algorithm.name(),
                found: result.clique.len(),
                required: k,
            });
        }
    }
    if !g.is_clique(result.members())? {
        return Err(Error::ConstraintViolation(format!(
            "{algorithm} returned a non-clique {:?}",
            result.members()
        )));
    }
    Ok(result)
}

/// Maximum weight independent set: a clique search on the complement,
/// re-verified on `g` itself.
pub fn solve_independent_set(
    g: &Graph,
    algorithm: Algorithm,
    options: &SolveOptions,
) -> Result<SolveResult> {
    let result = solve(&g.complement(), algorithm, options)?;
    if !g.is_independent_set(result.members())? {
        return Err(Error::ConstraintViolation(format!(
            "{algorithm} returned a set with an internal edge {:?}",
            result.members()
        )));
    }
    Ok(result)
}

pub fn max_weight_independent_set(g: &Graph, min_size: Option<usize>) -> Result<SolveResult> {
    solve_independent_set(g, Algorithm::Exact, &SolveOptions::default().with_min_size(min_size))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{complete, random_graph};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("tabu".parse::<Algorithm>().is_err());
    }

    #[test]
    fn mis_edgeless_takes_everything() {
        let g = Graph::unweighted(4, &[]).unwrap();
        let r = max_weight_independent_set(&g, None).unwrap();
        assert_eq!(r.members(), &[0, 1, 2, 3]);
    }

    #[test]
    fn mis_complete_takes_heaviest_vertex() {
        let g = complete(4);
        assert_eq!(max_weight_independent_set(&g, None).unwrap().members(), &[0]);
        let w = Graph::new(4, &complete(4).edges(), vec![1.0, 3.0, 2.0, 3.0]).unwrap();
        assert_eq!(max_weight_independent_set(&w, None).unwrap().members(), &[1]);
    }

    #[test]
    fn mis_matches_subset_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..10 {
            let density = rng.random_range(0.2..0.8);
            let g = random_graph(&mut rng, 12, density);
            let mut best = 0.0f64;
            for mask in 0u32..1 << 12 {
                let s: Vec<usize> = (0..12).filter(|i| mask >> i & 1 == 1).collect();
                if g.is_independent_set(&s).unwrap() {
                    best = best.max(s.iter().map(|&v| g.weight(v)).sum());
                }
            }
            let r = max_weight_independent_set(&g, None).unwrap();
            assert!((r.weight - best).abs() <= 1e-9 * best);
        }
    }

    #[test]
    fn heuristics_report_unmet_size() {
        // A heavy star (centre 0) lures greedy away from the light triangle 4-5-6.
        let g = Graph::new(
            7,
            &[(0, 1), (0, 2), (0, 3), (4, 5), (5, 6), (4, 6)],
            vec![1.0, 10.0, 10.0, 10.0, 0.1, 0.1, 0.1],
        )
        .unwrap();
        let opts = SolveOptions::default().with_min_size(Some(3));
        assert!(matches!(
            solve(&g, Algorithm::Greedy, &opts),
            Err(Error::MinSizeUnmet { found: 2, required: 3, .. })
        ));
        assert_eq!(solve(&g, Algorithm::Exact, &opts).unwrap().members(), &[4, 5, 6]);
        assert_eq!(solve(&g, Algorithm::Oracle, &opts).unwrap().members(), &[4, 5, 6]);
        assert!(matches!(
            solve(&g, Algorithm::Exact, &SolveOptions::default().with_min_size(Some(0))),
            Err(Error::InvalidParameter(_))
        ));
    }
}
