//! DIMACS ascii clique format.
//!
//! ```text
//! c optional comment
//! p edge <n> <m>
//! n <i> <weight>      (optional, 1-indexed, default weight 1.0)
//! e <i> <j>           (1-indexed)
//! ```

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::Graph;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_index(token: Option<&str>, n: usize, line: usize) -> Result<usize> {
    let token = token.ok_or_else(|| parse_err(line, "missing vertex index"))?;
    let i: usize = token
        .parse()
        .map_err(|_| parse_err(line, format!("bad vertex index `{token}`")))?;
    if i == 0 || i > n {
        return Err(parse_err(line, format!("vertex index {i} outside 1..={n}")));
    }
    Ok(i - 1)
}

pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut weights: Vec<Option<f64>> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        let mut tokens = line.split_whitespace();
        let Some(tag) = tokens.next() else { continue };
        match tag {
            "c" => continue,
            "p" => {
                if n.is_some() {
                    return Err(parse_err(line_no, "duplicate problem line"));
                }
                let format = tokens.next();
                if !matches!(format, Some("edge") | Some("col")) {
                    return Err(parse_err(line_no, "expected `p edge <n> <m>`"));
                }
                let count = tokens
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| parse_err(line_no, "bad vertex count"))?;
                tokens
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| parse_err(line_no, "bad edge count"))?;
                n = Some(count);
                weights = vec![None; count];
            }
            "e" | "n" => {
                let count = n.ok_or_else(|| parse_err(line_no, "data before problem line"))?;
                let i = parse_index(tokens.next(), count, line_no)?;
                if tag == "e" {
                    let j = parse_index(tokens.next(), count, line_no)?;
                    if i == j {
                        return Err(parse_err(line_no, format!("self-loop on vertex {}", i + 1)));
                    }
                    edges.push((i, j));
                } else {
                    let w = tokens
                        .next()
                        .and_then(|t| t.parse::<f64>().ok())
                        .ok_or_else(|| parse_err(line_no, "bad vertex weight"))?;
                    if weights[i].replace(w).is_some() {
                        return Err(parse_err(
                            line_no,
                            format!("duplicate weight line for vertex {}", i + 1),
                        ));
                    }
                }
            }
            other => return Err(parse_err(line_no, format!("unknown line type `{other}`"))),
        }
    }

    let n = n.ok_or_else(|| parse_err(0, "missing problem line"))?;
    let weights = weights.into_iter().map(|w| w.unwrap_or(1.0)).collect();
    Graph::new(n, &edges, weights)
}

/// Emits `g` with sorted edges. Weight lines are written only for vertices
/// whose weight is not 1.0, using the shortest decimal that round-trips.
pub fn emit_dimacs(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = String::new();
    writeln!(out, "p edge {} {}", g.n(), edges.len()).unwrap();
    for (v, &w) in g.weights().iter().enumerate() {
        if w != 1.0 {
            writeln!(out, "n {} {:?}", v + 1, w).unwrap();
        }
    }
    for (a, b) in edges {
        writeln!(out, "e {} {}", a + 1, b + 1).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::random_graph;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_edge() {
        let g = parse_dimacs("p edge 2 1\ne 1 2\n").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges(), vec![(0, 1)]);
        assert_eq!(g.weights(), &[1.0, 1.0]);
    }

    #[test]
    fn weight_line() {
        let g = parse_dimacs("c weighted\np edge 2 0\nn 1 2.5\n").unwrap();
        assert_eq!(g.weight(0), 2.5);
        assert_eq!(g.weight(1), 1.0);
    }

    #[test]
    fn errors() {
        for bad in [
            "e 1 2\n",
            "p edge x 1\n",
            "p graph 2 1\n",
            "p edge 2 1\ne 1 3\n",
            "p edge 2 1\nn 1 2\nn 1 3\n",
            "p edge 2 1\ne 1 1\n",
            "p edge 2 0\nn 1 -1\n",
            "",
        ] {
            assert!(parse_dimacs(bad).is_err(), "accepted {bad:?}");
        }
        match parse_dimacs("p edge 2 1\ne 1 3\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn round_trip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [0, 1, 7, 40] {
            let g = random_graph(&mut rng, n, 0.3);
            let text = emit_dimacs(&g);
            assert_eq!(parse_dimacs(&text).unwrap(), g);
        }
    }

    proptest! {
        #[test]
        fn reparse_is_stable(n in 1usize..12, pairs in prop::collection::vec((0usize..12, 0usize..12), 0..40)) {
            let mut text = format!("p edge {n} {}\n", pairs.len());
            for (a, b) in pairs.iter().filter(|(a, b)| a < b && *b < n) {
                text.push_str(&format!("e {} {}\n", a + 1, b + 1));
            }
            let g = parse_dimacs(&text).unwrap();
            prop_assert_eq!(parse_dimacs(&emit_dimacs(&g)).unwrap(), g);
        }
    }
}
