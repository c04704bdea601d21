//! Scenario JSON: parse inline documents of each kind and report what they hold.

use cliquekit::scenario::{parse, Scenario};

const DOCS: &[&str] = &[
    r#"{"kind": "graph", "body": {"n": 3, "edges": [[0, 1], [1, 2]], "weights": [1, 2, 3]}}"#,
    r#"{"kind": "graph", "generator": {"n": 30, "density": 0.4, "seed": 1}}"#,
    r#"{"kind": "ic", "body": {"files": 4, "has": [[0, 1, 3], [2, 3], [0, 3]]}}"#,
    r#"{"kind": "idnc", "generator": {"users": 5, "files": 6, "erasure": 0.2, "seed": 3}}"#,
    "p edge 3 2\ne 1 2\ne 2 3\n",
];

fn main() {
    for doc in DOCS {
        match parse(doc) {
            Ok(Scenario::Graph(g)) => println!("graph: n={} m={}", g.n(), g.edge_count()),
            Ok(Scenario::Ic(si)) => println!("ic: {} users, {} wants", si.users(), si.total_wants()),
            Ok(Scenario::Idnc { state, .. }) => {
                println!("idnc: {} users, {} files, {} wants", state.users(), state.files(), state.total_wants())
            }
            Ok(other) => println!("{}", other.kind()),
            Err(e) => println!("error: {e}"),
        }
    }
}
