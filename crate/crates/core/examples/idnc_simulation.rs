//! Broadcast until every user is served, coded versus uncoded, over a few replicas.

use cliquekit::apps::coding::{initial_broadcast, simulate_broadcast, SimulationConfig};
use cliquekit::rng::derive_seed;

fn main() -> cliquekit::Result<()> {
    let (users, files, erasure) = (8, 12, 0.2);
    println!("replica  coded  uncoded  coded_delay");
    for replica in 0..5u64 {
        let seed = derive_seed(42, "replica", &[replica]);
        let initial = initial_broadcast(files, &vec![erasure; users], seed)?;
        let coded = simulate_broadcast(&initial, &SimulationConfig { seed, ..Default::default() })?;
        let plain = simulate_broadcast(
            &initial,
            &SimulationConfig {
                seed,
                coding: false,
                ..Default::default()
            },
        )?;
        println!(
            "{replica:>7} {:>6} {:>8} {:>12}",
            coded.completion_slots, plain.completion_slots, coded.total_delay
        );
    }
    Ok(())
}
