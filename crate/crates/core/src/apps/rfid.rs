//! RFID reader activation: choose one interrogation radius (or none) per
//! reader so that the covered tag sets are disjoint and within the per-reader
//! tag capacity, maximising the number of covered tags.
//!
//! Each admissible `(reader, radius)` pair is a vertex weighted by the tags it
//! covers. Edges mark incompatible pairs, so plans are independent sets.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::mapping::ScenarioMapping;
use crate::solver::{solve_independent_set, Algorithm, SolveOptions, SolveResult};

/// Reader positions and the physical length of each radius level, used for
/// the reader-to-reader separation rule.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RfidGeometry {
    pub readers: Vec<[f64; 2]>,
    /// Radius length per level, meters.
    pub radii: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RfidScenario {
    pub tags: usize,
    /// Most tags a single active reader may cover.
    pub capacity: usize,
    /// `coverage[r][d]`: tags reader `r` reaches at radius level `d`, nested
    /// in `d`.
    pub coverage: Vec<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometry: Option<RfidGeometry>,
}

impl RfidScenario {
    pub fn readers(&self) -> usize {
        self.coverage.len()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Scenario(format!("rfid: {m}")));
        if self.capacity == 0 {
            return bad("tag capacity must be at least 1".into());
        }
        for (r, levels) in self.coverage.iter().enumerate() {
            for (d, tags) in levels.iter().enumerate() {
                if let Some(t) = tags.iter().find(|&&t| t >= self.tags) {
                    return bad(format!("reader {r} level {d} covers tag {t} of {}", self.tags));
                }
                if d > 0 && levels[d - 1].iter().any(|t| !tags.contains(t)) {
                    return bad(format!("reader {r}: level {} is not contained in level {d}", d - 1));
                }
            }
        }
        if let Some(geo) = &self.geometry {
            if geo.readers.len() != self.readers() {
                return bad("one position per reader required".into());
            }
            let levels = self.coverage.iter().map(Vec::len).max().unwrap_or(0);
            if geo.radii.len() < levels {
                return bad(format!("{levels} radius levels but {} radius lengths", geo.radii.len()));
            }
            if geo.radii.iter().chain(geo.readers.iter().flatten()).any(|x| !x.is_finite()) {
                return bad("geometry must be finite".into());
            }
        }
        Ok(())
    }

    /// Distinct tags covered by `reader` at `level`.
    pub fn covered(&self, reader: usize, level: usize) -> Vec<usize> {
        let mut tags = self.coverage[reader][level].clone();
        tags.sort_unstable();
        tags.dedup();
        tags
    }

    /// Whether two activations violate the separation rule: either reader
    /// sits inside the other's interrogation range.
    fn too_close(&self, a: RfidVertex, b: RfidVertex) -> bool {
        let Some(geo) = &self.geometry else {
            return false;
        };
        let (p, q) = (geo.readers[a.reader], geo.readers[b.reader]);
        let dist = (p[0] - q[0]).hypot(p[1] - q[1]);
        dist <= geo.radii[a.level] || dist <= geo.radii[b.level]
    }

    /// Reader positions and tags uniform on a `side` x `side` square; a reader
    /// covers the tags within each radius length.
    pub fn geometric(
        rng: &mut impl Rng,
        readers: usize,
        tags: usize,
        radii: &[f64],
        side: f64,
        capacity: usize,
    ) -> RfidScenario {
        let mut point = || [rng.random_range(0.0..side), rng.random_range(0.0..side)];
        let positions: Vec<[f64; 2]> = (0..readers).map(|_| point()).collect();
        let tag_positions: Vec<[f64; 2]> = (0..tags).map(|_| point()).collect();
        let coverage = positions
            .iter()
            .map(|p| {
                radii
                    .iter()
                    .map(|&radius| {
                        (0..tags)
                            .filter(|&t| {
                                let q = tag_positions[t];
                                (p[0] - q[0]).hypot(p[1] - q[1]) <= radius
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        RfidScenario {
            tags,
            capacity,
            coverage,
            geometry: Some(RfidGeometry {
                readers: positions,
                radii: radii.to_vec(),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RfidVertex {
    pub reader: usize,
    pub level: usize,
}

impl fmt::Display for RfidVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r{}d{}", self.reader + 1, self.level + 1)
    }
}

/// Conflict graph. Activations covering no tag are left out since they add
/// nothing to any plan. Vertices run reader by reader, widest radius first, so
/// equal-coverage ties favour wider radii on lower-numbered readers.
pub fn build_rfid_conflict_graph(s: &RfidScenario) -> Result<(Graph, ScenarioMapping<RfidVertex>)> {
    s.validate()?;
    let mut vertices = Vec::new();
    let mut sets = Vec::new();
    for reader in 0..s.readers() {
        for level in (0..s.coverage[reader].len()).rev() {
            let tags = s.covered(reader, level);
            if !tags.is_empty() && tags.len() <= s.capacity {
                vertices.push(RfidVertex { reader, level });
                sets.push(tags);
            }
        }
    }
    let weights = sets.iter().map(|t| t.len() as f64).collect();
    let graph = Graph::from_predicate(weights, false, |i, j| {
        let (a, b) = (vertices[i], vertices[j]);
        a.reader == b.reader || sets[i].iter().any(|t| sets[j].binary_search(t).is_ok()) || s.too_close(a, b)
    })?;
    Ok((graph, ScenarioMapping::new(vertices)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RfidPlan {
    /// Active readers with their radius level, ascending by reader.
    pub activation: Vec<RfidVertex>,
    /// Covered tags, ascending.
    pub covered: Vec<usize>,
}

impl RfidPlan {
    pub fn new(s: &RfidScenario, mut activation: Vec<RfidVertex>) -> Self {
        activation.sort();
        let mut covered: Vec<usize> = activation.iter().flat_map(|v| s.covered(v.reader, v.level)).collect();
        covered.sort_unstable();
        covered.dedup();
        RfidPlan { activation, covered }
    }

    /// Checks one radius per reader, capacity, disjoint coverage and reader
    /// separation directly on the scenario.
    pub fn check(&self, s: &RfidScenario) -> Result<()> {
        let violation = |m: String| Err(Error::ConstraintViolation(format!("rfid: {m}")));
        let mut owner = vec![None; s.tags];
        for (i, v) in self.activation.iter().enumerate() {
            if v.reader >= s.readers() || v.level >= s.coverage[v.reader].len() {
                return violation(format!("unknown activation {v}"));
            }
            if self.activation[..i].iter().any(|w| w.reader == v.reader) {
                return violation(format!("reader {} activated twice", v.reader));
            }
            let tags = s.covered(v.reader, v.level);
            if tags.len() > s.capacity {
                return violation(format!("{v} covers {} tags, capacity {}", tags.len(), s.capacity));
            }
            for t in tags {
                if let Some(other) = owner[t].replace(v.reader) {
                    return violation(format!("tag {t} read by readers {other} and {}", v.reader));
                }
            }
            if let Some(geo) = &s.geometry {
                for w in &self.activation[..i] {
                    let (p, q) = (geo.readers[v.reader], geo.readers[w.reader]);
                    let dist = ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt();
                    if dist <= geo.radii[v.level] || dist <= geo.radii[w.level] {
                        return violation(format!("readers {} and {} are within range", w.reader, v.reader));
                    }
                }
            }
        }
        let count = owner.iter().filter(|o| o.is_some()).count();
        if count != self.covered.len() {
            return violation(format!("plan reports {} tags, covers {count}", self.covered.len()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RfidSolution {
    pub plan: RfidPlan,
    pub vertex_labels: Vec<String>,
    pub raw: SolveResult,
}

/// Most tags covered, via a maximum weight independent set of the conflict
/// graph. The plan is re-checked with [`RfidPlan::check`].
pub fn solve_rccaa(s: &RfidScenario, algorithm: Algorithm, options: &SolveOptions) -> Result<RfidSolution> {
    let (graph, mapping) = build_rfid_conflict_graph(s)?;
    let raw = solve_independent_set(&graph, algorithm, options)?;
    let plan = RfidPlan::new(s, mapping.decode(raw.members()));
    plan.check(s)?;
    if plan.covered.len() as f64 != raw.weight {
        return Err(Error::ConstraintViolation(format!(
            "rfid: {} tags covered but set weight {}",
            plan.covered.len(),
            raw.weight
        )));
    }
    Ok(RfidSolution {
        vertex_labels: mapping.display(raw.members()),
        plan,
        raw,
    })
}

/// Exhaustive scan over every reader's choice of radius or off.
pub fn brute_force_rccaa(s: &RfidScenario) -> Result<usize> {
    s.validate()?;
    let choices: Vec<usize> = s.coverage.iter().map(|l| l.len() + 1).collect();
    let total: u64 = choices.iter().try_fold(1u64, |acc, &c| acc.checked_mul(c as u64)).unwrap_or(u64::MAX);
    if total > 1 << 24 {
        return Err(Error::GuardExceeded {
            size: s.readers(),
            limit: 24,
        });
    }
    let mut best = 0;
    for code in 0..total {
        let mut c = code;
        let mut activation = Vec::new();
        for (reader, &n) in choices.iter().enumerate() {
            let pick = (c % n as u64) as usize;
            c /= n as u64;
            if pick > 0 {
                activation.push(RfidVertex { reader, level: pick - 1 });
            }
        }
        let plan = RfidPlan::new(s, activation);
        if plan.covered.len() > best && plan.check(s).is_ok() {
            best = plan.covered.len();
        }
    }
    Ok(best)
}
