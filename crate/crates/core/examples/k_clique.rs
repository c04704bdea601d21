//! Cardinality-constrained cliques: the heaviest clique with at least k vertices.

use cliquekit::solver::exact_max_weight_clique;
use cliquekit::{Error, Graph};

fn main() -> cliquekit::Result<()> {
    // A heavy edge next to a light 4-clique.
    let mut edges = vec![(0, 1)];
    for a in 2..6 {
        for b in a + 1..6 {
            edges.push((a, b));
        }
    }
    edges.push((1, 2));
    let g = Graph::new(6, &edges, vec![10.0, 10.0, 1.0, 1.0, 1.0, 1.0])?;

    for k in 1..=5 {
        match exact_max_weight_clique(&g, Some(k)) {
            Ok(r) => println!("k = {k}: {:?} weight {}", r.members(), r.weight),
            Err(Error::Infeasible(msg)) => println!("k = {k}: infeasible ({msg})"),
            Err(e) => return Err(e),
        }
    }
    Ok(())
}
