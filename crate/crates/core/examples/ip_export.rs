//! Edge formulation of a clique problem: LP text, round trip and binary BnB.

use cliquekit::ip::{bnb_solve_binary, emit_lp_text, export_edge_formulation, parse_lp_text};
use cliquekit::solver::exact_max_weight_clique;
use cliquekit::Graph;

fn main() -> cliquekit::Result<()> {
    let edges = [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)];
    let g = Graph::new(5, &edges, vec![3.0, 2.0, 2.0, 4.0, 4.0])?;

    let program = export_edge_formulation(&g, Some(2));
    let text = emit_lp_text(&program);
    print!("{text}");

    let reread = parse_lp_text(&text)?;
    let ip = bnb_solve_binary(&reread)?;
    let graph = exact_max_weight_clique(&g, Some(2))?;
    println!("\nip: x = {:?}, objective {} ({} nodes)", ip.selected(), ip.objective, ip.nodes_explored);
    println!("graph solver: {:?}, weight {}", graph.members(), graph.weight);
    Ok(())
}
