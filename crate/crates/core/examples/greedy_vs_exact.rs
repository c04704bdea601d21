//! Compare the greedy heuristic with the exact solver on random graphs.

use cliquekit::solver::{exact_max_weight_clique, greedy_max_weight_clique};
use cliquekit::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(rng: &mut impl Rng, n: usize, density: f64) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(density) {
                edges.push((i, j));
            }
        }
    }
    let weights = (0..n).map(|_| rng.random_range(1..=20) as f64).collect();
    Graph::new(n, &edges, weights).unwrap()
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    println!("{:>4} {:>8} {:>8} {:>8} {:>6}", "n", "density", "greedy", "exact", "gap");
    for &n in &[20, 40, 60] {
        for &density in &[0.3, 0.6, 0.9] {
            let g = random_graph(&mut rng, n, density);
            let greedy = greedy_max_weight_clique(&g).weight;
            let exact = exact_max_weight_clique(&g, None).unwrap().weight;
            let gap = 100.0 * (exact - greedy) / exact;
            println!("{n:>4} {density:>8.1} {greedy:>8} {exact:>8} {gap:>5.1}%");
        }
    }
}
