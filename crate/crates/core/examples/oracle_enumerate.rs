//! List every maximal clique of a small graph and the heaviest one.

use cliquekit::solver::{enumerate_maximal_cliques, oracle_max_weight_clique, DEFAULT_ORACLE_LIMIT};
use cliquekit::{Error, Graph};

fn main() -> cliquekit::Result<()> {
    // Two triangles sharing vertex 2, plus a pendant edge.
    let edges = [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4), (4, 5)];
    let g = Graph::new(6, &edges, vec![1.0, 1.0, 2.0, 3.0, 1.0, 5.0])?;

    for clique in enumerate_maximal_cliques(&g, DEFAULT_ORACLE_LIMIT)? {
        println!("{:?} weight {}", clique.members(), clique.weight());
    }
    let best = oracle_max_weight_clique(&g, None, DEFAULT_ORACLE_LIMIT)?;
    println!("best {:?} weight {}", best.members(), best.weight);

    let big = Graph::unweighted(DEFAULT_ORACLE_LIMIT + 1, &[])?;
    match enumerate_maximal_cliques(&big, DEFAULT_ORACLE_LIMIT) {
        Err(Error::GuardExceeded { .. }) => println!("guard refuses n = {}", big.n()),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
