//! Binary particle swarm optimisation over vertex-inclusion bit vectors.
//!
//! A particle's velocity is squashed through a sigmoid and sampled into a 0/1
//! position. Raw positions are rarely cliques, so each sample is repaired:
//! selected vertices are scanned in decreasing neighbour-weight order and kept
//! only when adjacent to everything kept so far, then the clique is extended
//! greedily until maximal. The repaired position replaces the sample.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{greedy_max_weight_clique, Algorithm, SolveResult, SolveStats};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BpsoParams {
    pub particles: usize,
    pub iterations: usize,
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
    pub max_velocity: f64,
    pub seed: u64,
    /// Start one particle at the greedy heuristic's clique.
    pub greedy_start: bool,
}

impl Default for BpsoParams {
    fn default() -> Self {
        BpsoParams {
            particles: 20,
            iterations: 100,
            inertia: 0.7,
            cognitive: 1.4,
            social: 1.4,
            max_velocity: 4.0,
            seed: 0,
            greedy_start: true,
        }
    }
}

impl BpsoParams {
    pub fn validate(&self) -> Result<()> {
        if self.particles == 0 || self.iterations == 0 {
            return Err(Error::InvalidParameter(
                "BPSO needs at least one particle and one iteration".into(),
            ));
        }
        if !(self.max_velocity > 0.0 && self.max_velocity.is_finite()) {
            return Err(Error::InvalidParameter("BPSO velocity clamp must be positive".into()));
        }
        for (name, c) in [
            ("inertia", self.inertia),
            ("cognitive", self.cognitive),
            ("social", self.social),
        ] {
            if !c.is_finite() {
                return Err(Error::InvalidParameter(format!("BPSO {name} must be finite")));
            }
        }
        Ok(())
    }
}

struct Particle {
    velocity: Vec<f64>,
    position: BitSet,
    best: BitSet,
    best_weight: f64,
}

fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

struct Repair<'a> {
    g: &'a Graph,
    /// Vertices by decreasing neighbour weight, lowest id first on ties.
    order: Vec<usize>,
}

impl<'a> Repair<'a> {
    fn new(g: &'a Graph) -> Self {
        let score: Vec<f64> = (0..g.n())
            .map(|v| g.neighbors(v).iter().map(|u| g.weight(u)).sum())
            .collect();
        let mut order: Vec<usize> = (0..g.n()).collect();
        order.sort_by(|&a, &b| score[b].total_cmp(&score[a]).then(a.cmp(&b)));
        Repair { g, order }
    }

    fn apply(&self, selected: &BitSet) -> BitSet {
        let n = self.g.n();
        let mut kept = BitSet::new(n);
        let mut common = BitSet::full(n);
        for pass in [true, false] {
            for &v in &self.order {
                // First pass keeps compatible selected vertices, second extends.
                if selected.contains(v) == pass && common.contains(v) {
                    kept.insert(v);
                    common.intersect_with(self.g.neighbors(v));
                }
            }
        }
        kept
    }
}

pub fn bpso_max_weight_clique(g: &Graph, params: &BpsoParams) -> Result<SolveResult> {
    params.validate()?;
    let start = Instant::now();
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let repair = Repair::new(g);
    let vmax = params.max_velocity;

    let sample = |velocity: &[f64], rng: &mut ChaCha8Rng| {
        let mut bits = BitSet::new(n);
        for (d, &v) in velocity.iter().enumerate() {
            if rng.random::<f64>() < sigmoid(v) {
                bits.insert(d);
            }
        }
        bits
    };

    let mut swarm: Vec<Particle> = (0..params.particles)
        .map(|i| {
            let velocity: Vec<f64> = (0..n).map(|_| rng.random_range(-vmax..=vmax)).collect();
            let raw = if i == 0 && params.greedy_start {
                BitSet::from_ids(n, greedy_max_weight_clique(g).members().iter().copied())
            } else {
                sample(&velocity, &mut rng)
            };
            let position = repair.apply(&raw);
            let weight = g.set_weight(&position);
            Particle {
                velocity,
                best: position.clone(),
                position,
                best_weight: weight,
            }
        })
        .collect();

    let mut global = 0;
    for (i, p) in swarm.iter().enumerate() {
        if p.best_weight > swarm[global].best_weight {
            global = i;
        }
    }
    let mut global_best = swarm[global].best.clone();
    let mut global_weight = swarm[global].best_weight;

    for _ in 0..params.iterations {
        for p in swarm.iter_mut() {
            for d in 0..n {
                let x = f64::from(u8::from(p.position.contains(d)));
                let own = f64::from(u8::from(p.best.contains(d)));
                let swarm_best = f64::from(u8::from(global_best.contains(d)));
                let r1: f64 = rng.random();
                let r2: f64 = rng.random();
                let v = params.inertia * p.velocity[d]
                    + params.cognitive * r1 * (own - x)
                    + params.social * r2 * (swarm_best - x);
                p.velocity[d] = v.clamp(-vmax, vmax);
            }
            p.position = repair.apply(&sample(&p.velocity, &mut rng));
            let weight = g.set_weight(&p.position);
            if weight > p.best_weight {
                p.best_weight = weight;
                p.best = p.position.clone();
            }
            if weight > global_weight {
                global_weight = weight;
                global_best = p.position.clone();
            }
        }
    }

    Ok(SolveResult::new(
        VertexSet::from_bits(g, &global_best),
        Algorithm::Bpso,
        SolveStats {
            iterations: params.iterations as u64,
            wall_time: start.elapsed(),
            ..Default::default()
        },
    ))
}
