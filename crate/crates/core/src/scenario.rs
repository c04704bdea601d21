//! Scenario files: JSON documents tagged by `kind` carrying either an explicit
//! `body` or a seeded `generator` block.
//!
//! ```json
//! { "kind": "idnc", "body": { "files": 4, "wants": [[2], [0, 1], [1, 2]], "erasure": [0.1, 0.2, 0.3] } }
//! { "kind": "graph", "generator": { "n": 12, "density": 0.5, "seed": 7, "max_weight": 10.0 } }
//! ```

use std::path::Path;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::apps::coding::{initial_broadcast, SideInformation};
use crate::apps::cran::{rayleigh_gain, CranScenario};
use crate::apps::noma::NomaScenario;
use crate::apps::rfid::RfidScenario;
use crate::dimacs::parse_dimacs;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{derive_seed, stream};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ScenarioFile {
    Graph {
        body: Option<GraphBody>,
        generator: Option<GraphGenerator>,
    },
    Noma {
        body: Option<NomaScenario>,
        generator: Option<NomaGenerator>,
    },
    Ic {
        body: Option<CodingBody>,
        generator: Option<CodingGenerator>,
    },
    Idnc {
        body: Option<CodingBody>,
        generator: Option<CodingGenerator>,
    },
    Rfid {
        body: Option<RfidScenario>,
        generator: Option<RfidGenerator>,
    },
    Cran {
        body: Option<CranScenario>,
        generator: Option<CranGenerator>,
        /// Grid size for joint power control; absent means fixed powers.
        #[serde(default)]
        power_levels: Option<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphBody {
    pub n: usize,
    #[serde(default)]
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub weights: Option<Vec<f64>>,
}

/// Erdős–Rényi graph; weights uniform in `(0, max_weight]`, or 1 when absent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphGenerator {
    pub n: usize,
    pub density: f64,
    pub seed: u64,
    #[serde(default)]
    pub max_weight: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Erasure {
    Uniform(f64),
    PerUser(Vec<f64>),
}

impl Default for Erasure {
    fn default() -> Self {
        Erasure::Uniform(0.0)
    }
}

impl Erasure {
    pub fn expand(&self, users: usize) -> Result<Vec<f64>> {
        match self {
            Erasure::Uniform(e) => Ok(vec![*e; users]),
            Erasure::PerUser(v) if v.len() == users => Ok(v.clone()),
            Erasure::PerUser(v) => Err(Error::Scenario(format!(
                "{} erasure probabilities for {users} users",
                v.len()
            ))),
        }
    }
}

/// Side information given as Has sets or Wants sets (exactly one).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodingBody {
    pub files: usize,
    #[serde(default)]
    pub has: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub wants: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub erasure: Erasure,
}

/// Side information left by one erasure-prone broadcast of every file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodingGenerator {
    pub users: usize,
    pub files: usize,
    pub erasure: Erasure,
    pub seed: u64,
}

fn one() -> f64 {
    1.0
}

/// Rayleigh-faded NOMA uplink with uniform parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NomaGenerator {
    pub users: usize,
    pub channels: usize,
    pub seed: u64,
    #[serde(default = "one")]
    pub path_loss: f64,
    #[serde(default = "one")]
    pub power: f64,
    #[serde(default = "one")]
    pub noise: f64,
    #[serde(default = "one")]
    pub gap: f64,
    #[serde(default = "one")]
    pub bandwidth: f64,
    #[serde(default = "one")]
    pub rate_min: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RfidGenerator {
    pub readers: usize,
    pub tags: usize,
    /// Radius length per level, ascending.
    pub radii: Vec<f64>,
    pub side: f64,
    pub capacity: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CranGenerator {
    pub users: usize,
    pub rrhs: usize,
    pub rrbs: usize,
    pub seed: u64,
    #[serde(default = "one")]
    pub path_loss: f64,
    #[serde(default = "one")]
    pub power_max: f64,
    #[serde(default = "one")]
    pub noise: f64,
}

/// A resolved scenario.
#[derive(Clone, Debug)]
pub enum Scenario {
    Graph(Graph),
    Noma(NomaScenario),
    Ic(SideInformation),
    Idnc {
        state: SideInformation,
        /// Present when the state came from a generator, so the simulator
        /// can redraw it per replica.
        generator: Option<CodingGenerator>,
    },
    Rfid(RfidScenario),
    Cran {
        scenario: CranScenario,
        power_levels: Option<usize>,
    },
}

impl Scenario {
    pub fn kind(&self) -> &'static str {
        match self {
            Scenario::Graph(_) => "graph",
            Scenario::Noma(_) => "noma",
            Scenario::Ic(_) => "ic",
            Scenario::Idnc { .. } => "idnc",
            Scenario::Rfid(_) => "rfid",
            Scenario::Cran { .. } => "cran",
        }
    }
}

fn pick<B, G>(kind: &str, body: Option<B>, generator: Option<G>) -> Result<std::result::Result<B, G>> {
    match (body, generator) {
        (Some(b), None) => Ok(Ok(b)),
        (None, Some(g)) => Ok(Err(g)),
        _ => Err(Error::Scenario(format!(
            "{kind} scenario needs exactly one of `body` and `generator`"
        ))),
    }
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn resolve(self) -> Result<Scenario> {
        Ok(match self {
            ScenarioFile::Graph { body, generator } => Scenario::Graph(match pick("graph", body, generator)? {
                Ok(b) => {
                    let edges: Vec<(usize, usize)> = b.edges.iter().map(|e| (e[0], e[1])).collect();
                    Graph::new(b.n, &edges, b.weights.unwrap_or_else(|| vec![1.0; b.n]))?
                }
                Err(g) => g.generate()?,
            }),
            ScenarioFile::Noma { body, generator } => {
                let s = match pick("noma", body, generator)? {
                    Ok(b) => b,
                    Err(g) => g.generate(),
                };
                s.validate()?;
                Scenario::Noma(s)
            }
            ScenarioFile::Ic { body, generator } => Scenario::Ic(match pick("ic", body, generator)? {
                Ok(b) => b.side_information()?,
                Err(g) => g.generate(0)?,
            }),
            ScenarioFile::Idnc { body, generator } => match pick("idnc", body, generator)? {
                Ok(b) => Scenario::Idnc {
                    state: b.side_information()?,
                    generator: None,
                },
                Err(g) => Scenario::Idnc {
                    state: g.generate(0)?,
                    generator: Some(g),
                },
            },
            ScenarioFile::Rfid { body, generator } => {
                let s = match pick("rfid", body, generator)? {
                    Ok(b) => b,
                    Err(g) => g.generate(),
                };
                s.validate()?;
                Scenario::Rfid(s)
            }
            ScenarioFile::Cran {
                body,
                generator,
                power_levels,
            } => {
                let scenario = match pick("cran", body, generator)? {
                    Ok(b) => b,
                    Err(g) => g.generate(),
                };
                scenario.validate()?;
                Scenario::Cran {
                    scenario,
                    power_levels,
                }
            }
        })
    }
}

impl GraphGenerator {
    pub fn generate(&self) -> Result<Graph> {
        if !(0.0..=1.0).contains(&self.density) {
            return Err(Error::Scenario(format!("density {} outside [0, 1]", self.density)));
        }
        let mut rng = stream(self.seed, "generator.graph", &[]);
        let mut edges = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if rng.random_bool(self.density) {
                    edges.push((i, j));
                }
            }
        }
        let weights = match self.max_weight {
            None => vec![1.0; self.n],
            Some(m) if m > 0.0 && m.is_finite() => (0..self.n).map(|_| m * (1.0 - rng.random::<f64>())).collect(),
            Some(m) => return Err(Error::Scenario(format!("max_weight {m} must be positive"))),
        };
        Graph::new(self.n, &edges, weights)
    }
}

impl CodingBody {
    pub fn side_information(&self) -> Result<SideInformation> {
        match (&self.has, &self.wants) {
            (Some(has), None) => {
                SideInformation::from_has(self.files, has.clone(), self.erasure.expand(has.len())?)
            }
            (None, Some(wants)) => {
                SideInformation::from_wants(self.files, wants.clone(), self.erasure.expand(wants.len())?)
            }
            _ => Err(Error::Scenario("side information needs exactly one of `has` and `wants`".into())),
        }
    }
}

impl CodingGenerator {
    /// The state after the initial broadcast for replica `replica`.
    pub fn generate(&self, replica: u64) -> Result<SideInformation> {
        let erasure = self.erasure.expand(self.users)?;
        initial_broadcast(self.files, &erasure, derive_seed(self.seed, "initial", &[replica]))
    }
}

impl NomaGenerator {
    pub fn generate(&self) -> NomaScenario {
        let mut rng = stream(self.seed, "generator.noma", &[]);
        let scale = self.path_loss.sqrt();
        let gains: Vec<Vec<Complex64>> = (0..self.users)
            .map(|_| (0..self.channels).map(|_| rayleigh_gain(&mut rng, scale)).collect())
            .collect();
        NomaScenario {
            users: self.users,
            channels: self.channels,
            gains,
            powers: vec![self.power; self.users],
            noise: self.noise,
            gap: self.gap,
            bandwidth: vec![vec![self.bandwidth; self.channels]; self.users],
            rate_min: vec![self.rate_min; self.users],
        }
    }
}

impl RfidGenerator {
    pub fn generate(&self) -> RfidScenario {
        let mut rng = stream(self.seed, "generator.rfid", &[]);
        RfidScenario::geometric(&mut rng, self.readers, self.tags, &self.radii, self.side, self.capacity)
    }
}

impl CranGenerator {
    pub fn generate(&self) -> CranScenario {
        let mut rng = stream(self.seed, "generator.cran", &[]);
        CranScenario::rayleigh(
            &mut rng,
            self.users,
            self.rrhs,
            self.rrbs,
            self.path_loss,
            self.power_max,
            self.noise,
        )
    }
}

/// Reads a scenario file. Input that does not start with `{` is taken as a
/// DIMACS graph.
pub fn load(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path)?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<Scenario> {
    if text.trim_start().starts_with('{') {
        ScenarioFile::parse(text)?.resolve()
    } else {
        Ok(Scenario::Graph(parse_dimacs(text)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_body() {
        let s = parse(r#"{"kind":"graph","body":{"n":4,"edges":[[0,2],[0,3],[1,3],[2,3]]}}"#).unwrap();
        let Scenario::Graph(g) = s else { panic!() };
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.weights(), &[1.0; 4]);
    }

    #[test]
    fn dimacs_fallback() {
        let Scenario::Graph(g) = parse("p edge 3 1\ne 1 2\n").unwrap() else { panic!() };
        assert_eq!(g.edges(), vec![(0, 1)]);
    }

    #[test]
    fn body_xor_generator() {
        assert!(parse(r#"{"kind":"graph"}"#).is_err());
        let both = r#"{"kind":"graph","body":{"n":1},"generator":{"n":3,"density":0.5,"seed":1}}"#;
        assert!(matches!(parse(both), Err(Error::Scenario(_))));
        assert!(parse(r#"{"kind":"circuit","body":{}}"#).is_err());
    }

    #[test]
    fn generators_are_seeded() {
        for text in [
            r#"{"kind":"graph","generator":{"n":12,"density":0.5,"seed":3,"max_weight":10}}"#,
            r#"{"kind":"noma","generator":{"users":4,"channels":2,"seed":3}}"#,
            r#"{"kind":"idnc","generator":{"users":5,"files":5,"erasure":0.3,"seed":3}}"#,
            r#"{"kind":"rfid","generator":{"readers":3,"tags":8,"radii":[1,2],"side":5,"capacity":3,"seed":3}}"#,
            r#"{"kind":"cran","generator":{"users":3,"rrhs":2,"rrbs":2,"seed":3},"power_levels":2}"#,
        ] {
            let a = format!("{:?}", parse(text).unwrap());
            let b = format!("{:?}", parse(text).unwrap());
            assert_eq!(a, b);
            let other = text.replace("\"seed\":3", "\"seed\":4");
            assert_ne!(a, format!("{:?}", parse(&other).unwrap()));
        }
    }

    #[test]
    fn coding_bodies() {
        let has = r#"{"kind":"ic","body":{"files":4,"has":[[0,1,3],[2,3],[0,3]]}}"#;
        let wants = r#"{"kind":"ic","body":{"files":4,"wants":[[2],[0,1],[1,2]]}}"#;
        let (Scenario::Ic(a), Scenario::Ic(b)) = (parse(has).unwrap(), parse(wants).unwrap()) else { panic!() };
        assert_eq!(a, b);
        let per_user = r#"{"kind":"idnc","body":{"files":4,"wants":[[2],[0,1],[1,2]],"erasure":[0.1,0.2,0.3]}}"#;
        let Scenario::Idnc { state, .. } = parse(per_user).unwrap() else { panic!() };
        assert_eq!(state.erasure(2), 0.3);
        let short = r#"{"kind":"idnc","body":{"files":4,"wants":[[2]],"erasure":[0.1,0.2]}}"#;
        assert!(parse(short).is_err());
    }

    #[test]
    fn complex_gains_round_trip() {
        let s = NomaGenerator {
            users: 2,
            channels: 1,
            seed: 0,
            path_loss: 1.0,
            power: 1.0,
            noise: 1.0,
            gap: 1.0,
            bandwidth: 1.0,
            rate_min: 0.5,
        }
        .generate();
        let file = ScenarioFile::Noma {
            body: Some(s.clone()),
            generator: None,
        };
        let text = serde_json::to_string(&file).unwrap();
        assert!(text.contains("\"gains\":[[["));
        let Scenario::Noma(back) = parse(&text).unwrap() else { panic!() };
        assert_eq!(back, s);
    }
}
