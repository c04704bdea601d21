//! Index coding and instantly decodable network coding on one side-information state.

use cliquekit::apps::coding::{ic_solve, idnc_solve, oracle_best_combination, SideInformation};
use cliquekit::{Algorithm, SolveOptions};

fn main() -> cliquekit::Result<()> {
    // Three users, four files; each row lists the files a user already holds.
    let has = vec![vec![0, 1, 3], vec![2, 3], vec![0, 3]];
    let perfect = SideInformation::from_has(4, has.clone(), vec![0.0; 3])?;

    let ic = ic_solve(&perfect, Algorithm::Exact, &SolveOptions::default())?;
    println!("ic: xor of {} decodable by every user", ic.vertex_labels.join(" + "));

    let lossy = SideInformation::from_has(4, has, vec![0.1, 0.2, 0.3])?;
    let idnc = idnc_solve(&lossy, Algorithm::Exact, &SolveOptions::default())?;
    println!("idnc: serve {} (expected deliveries {:.4})", idnc.vertex_labels.join(" "), idnc.objective);

    let (combination, value) = oracle_best_combination(&lossy, 20)?;
    let files: Vec<usize> = combination.files.iter().map(|f| f + 1).collect();
    println!("oracle: files {files:?} value {value:.4}");
    Ok(())
}
