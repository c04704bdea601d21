//! Cloud-RAN scheduling at fixed powers: one user per head and resource block.

use cliquekit::apps::cran::{brute_force_schedule, solve_schedule, CranScenario};
use cliquekit::{Algorithm, SolveOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> cliquekit::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let s = CranScenario::rayleigh(&mut rng, 4, 2, 2, 1.0, 1.0, 0.1);

    let sol = solve_schedule(&s, Algorithm::Exact, &SolveOptions::default())?;
    for row in sol.schedule.rows(&s) {
        println!(
            "head {} block {} -> user {} at {} W, rate {:.4}",
            row.rrh + 1,
            row.rrb + 1,
            row.user + 1,
            row.power,
            row.rate
        );
    }
    println!("sum rate {:.6}", sol.schedule.objective);
    if let Some(best) = brute_force_schedule(&s)? {
        println!("brute force {best:.6}");
    }
    Ok(())
}
