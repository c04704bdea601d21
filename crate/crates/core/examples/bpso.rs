//! Binary particle swarm on a random weighted graph, against the exact optimum.

use cliquekit::solver::{bpso_max_weight_clique, exact_max_weight_clique, BpsoParams};
use cliquekit::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> cliquekit::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let n = 120;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(0.6) {
                edges.push((i, j));
            }
        }
    }
    let weights = (0..n).map(|_| rng.random_range(1.0..10.0)).collect();
    let g = Graph::new(n, &edges, weights)?;

    let optimum = exact_max_weight_clique(&g, None)?.weight;
    println!("exact optimum {optimum:.4}");

    for particles in [5, 20, 50] {
        for greedy_start in [false, true] {
            let params = BpsoParams {
                particles,
                iterations: 30,
                seed: 11,
                greedy_start,
                ..BpsoParams::default()
            };
            let found = bpso_max_weight_clique(&g, &params)?;
            println!(
                "particles {particles:>2} greedy_start {greedy_start:<5} weight {:.4} ({:.1}% of optimum)",
                found.weight,
                100.0 * found.weight / optimum
            );
        }
    }
    Ok(())
}
