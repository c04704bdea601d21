//! Uplink NOMA user admission: most users admitted under per-user rate floors.

use cliquekit::apps::noma::{brute_force_max_access, build_noma_graph, solve_max_access, NomaScenario};
use cliquekit::{Algorithm, SolveOptions};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> cliquekit::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (users, channels) = (6, 3);
    let gains = (0..users)
        .map(|_| {
            (0..channels)
                .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect()
        })
        .collect();
    let s = NomaScenario {
        users,
        channels,
        gains,
        powers: vec![1.0; users],
        noise: 0.05,
        gap: 1.0,
        bandwidth: vec![vec![1.0; channels]; users],
        rate_min: vec![1.0; users],
    };

    let (graph, _) = build_noma_graph(&s)?;
    println!("{} feasible clusters, {} conflicts", graph.n(), graph.edge_count());

    for algo in [Algorithm::Greedy, Algorithm::Exact] {
        let sol = solve_max_access(&s, algo, &SolveOptions::default())?;
        println!("{algo}: {} admitted via {}", sol.assignment.admitted.len(), sol.vertex_labels.join(" "));
    }
    println!("brute force: {}", brute_force_max_access(&s)?);
    Ok(())
}
