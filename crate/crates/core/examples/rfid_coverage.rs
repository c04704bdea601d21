//! Reader activation and radius selection for maximum tag coverage.

use cliquekit::apps::rfid::{brute_force_rccaa, solve_rccaa, RfidScenario};
use cliquekit::{Algorithm, SolveOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> cliquekit::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let s = RfidScenario::geometric(&mut rng, 5, 40, &[1.0, 2.0, 3.0], 10.0, 12);

    let sol = solve_rccaa(&s, Algorithm::Exact, &SolveOptions::default())?;
    println!("active: {}", sol.vertex_labels.join(" "));
    println!("covered {} of {} tags", sol.plan.covered.len(), s.tags);
    println!("brute force: {}", brute_force_rccaa(&s)?);
    Ok(())
}
