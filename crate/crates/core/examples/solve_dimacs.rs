//! Parse a DIMACS graph and solve it exactly.
//!
//! ```text
//! cargo run --example solve_dimacs
//! ```

use cliquekit::dimacs::parse_dimacs;
use cliquekit::{solver, Algorithm, SolveOptions};

const PENTAGON_WITH_CHORD: &str = "\
c five-cycle plus one chord, vertex 3 is heavy
p edge 5 6
e 1 2
e 2 3
e 3 4
e 4 5
e 5 1
e 1 3
n 3 4
";

fn main() -> cliquekit::Result<()> {
    let g = parse_dimacs(PENTAGON_WITH_CHORD)?;
    println!("{} vertices, {} edges", g.n(), g.edge_count());

    let best = solver::solve(&g, Algorithm::Exact, &SolveOptions::default())?;
    let labels: Vec<usize> = best.members().iter().map(|v| v + 1).collect();
    println!("clique {labels:?} weight {}", best.weight);
    println!("branch nodes: {}", best.stats.nodes_explored);
    Ok(())
}
