//! Maximum weight independent set through the complement graph.

use cliquekit::solver::max_weight_independent_set;
use cliquekit::Graph;

fn main() -> cliquekit::Result<()> {
    // Path 0-1-2-3-4 with a heavy middle vertex.
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4)];
    let g = Graph::new(5, &edges, vec![2.0, 1.0, 5.0, 1.0, 2.0])?;

    let best = max_weight_independent_set(&g, None)?;
    println!("independent set {:?} weight {}", best.members(), best.weight);
    assert!(g.is_independent_set(best.members())?);

    let sized = max_weight_independent_set(&g, Some(3))?;
    println!("at least 3 vertices: {:?} weight {}", sized.members(), sized.weight);
    Ok(())
}
