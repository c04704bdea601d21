//! Coordinated scheduling in a cloud radio access network: every resource
//! block `r` of every remote radio head `b` serves exactly one user, and each
//! user is served by at most one head. Interference on block `r` comes only
//! from the same block at the other heads.
//!
//! With fixed powers, feasible schedules are the `R*B`-cliques of the
//! scheduling graph. The joint variant also picks per-block powers from a grid
//! and searches for an `R`-clique over per-block local graphs.

use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::mapping::ScenarioMapping;
use crate::solver::{solve, Algorithm, SolveOptions, SolveResult};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CranScenario {
    pub users: usize,
    pub rrhs: usize,
    pub rrbs: usize,
    /// `gains[b][r][u]`.
    pub gains: Vec<Vec<Vec<Complex64>>>,
    /// `powers[b][r]`, watts.
    pub powers: Vec<Vec<f64>>,
    /// `power_max[b][r]`, watts.
    pub power_max: Vec<Vec<f64>>,
    pub noise: f64,
    pub gap: f64,
    /// `weights[u][b][r]`, default 1. Zero bars a link from contributing.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<Vec<Vec<f64>>>>,
}

impl CranScenario {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Scenario(format!("cran: {m}")));
        let (u, b, r) = (self.users, self.rrhs, self.rrbs);
        if u == 0 || b == 0 || r == 0 {
            return bad("users, RRHs and RRBs must all be at least 1");
        }
        let grid_ok = |m: &Vec<Vec<f64>>| m.len() == b && m.iter().all(|row| row.len() == r);
        if self.gains.len() != b
            || self.gains.iter().any(|rows| rows.len() != r || rows.iter().any(|g| g.len() != u))
            || !grid_ok(&self.powers)
            || !grid_ok(&self.power_max)
        {
            return bad("array dimensions do not match RRHs x RRBs x users");
        }
        if let Some(w) = &self.weights {
            if w.len() != u || w.iter().any(|m| !grid_ok(m)) {
                return bad("weights must be users x RRHs x RRBs");
            }
            if w.iter().flatten().flatten().any(|x| !(*x >= 0.0 && x.is_finite())) {
                return bad("weights must be non-negative");
            }
        }
        if !(self.noise > 0.0 && self.noise.is_finite()) {
            return bad("noise variance must be positive");
        }
        if !(self.gap >= 1.0 && self.gap.is_finite()) {
            return bad("SINR gap must be at least 1");
        }
        for (p, cap) in self.powers.iter().flatten().zip(self.power_max.iter().flatten()) {
            if !(*p >= 0.0 && p <= cap && cap.is_finite()) {
                return bad("powers must lie in [0, cap] with finite caps");
            }
        }
        if self.gains.iter().flatten().flatten().any(|h| !h.re.is_finite() || !h.im.is_finite()) {
            return bad("gains must be finite");
        }
        Ok(())
    }

    pub fn weight(&self, u: usize, b: usize, r: usize) -> f64 {
        self.weights.as_ref().map_or(1.0, |w| w[u][b][r])
    }

    /// Rayleigh fading: each gain is `sqrt(path_loss) * (x + iy)` with `x`,
    /// `y` standard normal. Powers start at the caps.
    pub fn rayleigh(
        rng: &mut impl Rng,
        users: usize,
        rrhs: usize,
        rrbs: usize,
        path_loss: f64,
        power_max: f64,
        noise: f64,
    ) -> CranScenario {
        let scale = path_loss.sqrt();
        let gains = (0..rrhs)
            .map(|_| {
                (0..rrbs)
                    .map(|_| (0..users).map(|_| rayleigh_gain(rng, scale)).collect())
                    .collect()
            })
            .collect();
        CranScenario {
            users,
            rrhs,
            rrbs,
            gains,
            powers: vec![vec![power_max; rrbs]; rrhs],
            power_max: vec![vec![power_max; rrbs]; rrhs],
            noise,
            gap: 1.0,
            weights: None,
        }
    }
}

pub(crate) fn rayleigh_gain(rng: &mut impl Rng, scale: f64) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(scale * re, scale * im)
}

/// Linear SINR of user `u` on block `r` of head `b` under `powers[b][r]`.
pub fn cran_sinr(s: &CranScenario, u: usize, b: usize, r: usize, powers: &[Vec<f64>]) -> f64 {
    let interference: f64 = (0..s.rrhs)
        .filter(|&o| o != b)
        .map(|o| powers[o][r] * s.gains[o][r][u].norm_sqr())
        .sum();
    powers[b][r] * s.gains[b][r][u].norm_sqr() / (s.gap * (s.noise + interference))
}

/// Spectral efficiency in bits/s/Hz.
pub fn cran_rate(s: &CranScenario, u: usize, b: usize, r: usize, powers: &[Vec<f64>]) -> f64 {
    (1.0 + cran_sinr(s, u, b, r, powers)).log2()
}

/// Scheduling-graph vertex: user `user` on block `rrb` of head `rrh`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Association {
    pub user: usize,
    pub rrh: usize,
    pub rrb: usize,
}

impl fmt::Display for Association {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u{}b{}r{}", self.user + 1, self.rrh + 1, self.rrb + 1)
    }
}

fn compatible(a: Association, b: Association) -> bool {
    let one_head_per_user = a.user != b.user || a.rrh == b.rrh;
    let one_user_per_block = (a.rrh, a.rrb) != (b.rrh, b.rrb);
    one_head_per_user && one_user_per_block
}

/// One vertex per association, vertex `((u * B) + b) * R + r`, weighted by
/// the weighted rate under the scenario's fixed powers. Two associations are
/// adjacent when they use different blocks and do not put one user on two
/// heads.
pub fn build_scheduling_graph(s: &CranScenario) -> Result<(Graph, ScenarioMapping<Association>)> {
    s.validate()?;
    let mut vertices = Vec::with_capacity(s.users * s.rrhs * s.rrbs);
    for user in 0..s.users {
        for rrh in 0..s.rrhs {
            for rrb in 0..s.rrbs {
                vertices.push(Association { user, rrh, rrb });
            }
        }
    }
    let weights = vertices
        .iter()
        .map(|a| s.weight(a.user, a.rrh, a.rrb) * cran_rate(s, a.user, a.rrh, a.rrb, &s.powers))
        .collect();
    let graph = Graph::from_predicate(weights, true, |i, j| compatible(vertices[i], vertices[j]))?;
    Ok((graph, ScenarioMapping::new(vertices)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Schedule {
    /// `assign[b][r]`: served user.
    pub assign: Vec<Vec<usize>>,
    /// `powers[b][r]`, watts.
    pub powers: Vec<Vec<f64>>,
    pub objective: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScheduleRow {
    pub rrh: usize,
    pub rrb: usize,
    pub user: usize,
    pub power: f64,
    pub rate: f64,
}

/// Weighted sum rate of an assignment, evaluated from the SINR definition.
pub fn schedule_objective(s: &CranScenario, assign: &[Vec<usize>], powers: &[Vec<f64>]) -> f64 {
    let mut total = 0.0;
    for b in 0..s.rrhs {
        for r in 0..s.rrbs {
            let u = assign[b][r];
            let signal = powers[b][r] * s.gains[b][r][u].norm_sqr();
            let mut interference = 0.0;
            for other in 0..s.rrhs {
                if other != b {
                    interference += powers[other][r] * s.gains[other][r][u].norm_sqr();
                }
            }
            total += s.weight(u, b, r) * (1.0 + signal / (s.gap * (s.noise + interference))).log2();
        }
    }
    total
}

/// At most one head per user.
fn one_head_per_user(s: &CranScenario, assign: &[Vec<usize>]) -> bool {
    let mut head = vec![None; s.users];
    for (b, row) in assign.iter().enumerate() {
        for &u in row {
            if *head[u].get_or_insert(b) != b {
                return false;
            }
        }
    }
    true
}

impl Schedule {
    pub fn rows(&self, s: &CranScenario) -> Vec<ScheduleRow> {
        let mut rows = Vec::new();
        for b in 0..s.rrhs {
            for r in 0..s.rrbs {
                let user = self.assign[b][r];
                rows.push(ScheduleRow {
                    rrh: b,
                    rrb: r,
                    user,
                    power: self.powers[b][r],
                    rate: cran_rate(s, user, b, r, &self.powers),
                });
            }
        }
        rows
    }

    /// Every block serves exactly one valid user, no user spans two heads,
    /// powers respect the caps, and the reported objective matches a fresh
    /// evaluation.
    pub fn check(&self, s: &CranScenario) -> Result<()> {
        let violation = |m: String| Err(Error::ConstraintViolation(format!("cran: {m}")));
        fn shape<T>(m: &[Vec<T>], s: &CranScenario) -> bool {
            m.len() == s.rrhs && m.iter().all(|row| row.len() == s.rrbs)
        }
        if !shape(&self.assign, s) || !shape(&self.powers, s) {
            return violation("schedule does not cover every RRH x RRB slot exactly once".into());
        }
        if self.assign.iter().flatten().any(|&u| u >= s.users) {
            return violation("schedule names an unknown user".into());
        }
        if !one_head_per_user(s, &self.assign) {
            return violation("a user is served by two RRHs".into());
        }
        for b in 0..s.rrhs {
            for r in 0..s.rrbs {
                let p = self.powers[b][r];
                if !(0.0..=s.power_max[b][r]).contains(&p) {
                    return violation(format!("power {p} at RRH {b} RRB {r} outside [0, {}]", s.power_max[b][r]));
                }
            }
        }
        let fresh = schedule_objective(s, &self.assign, &self.powers);
        if (fresh - self.objective).abs() > 1e-9 * fresh.abs().max(self.objective.abs()) {
            return violation(format!("objective {} differs from recomputed {fresh}", self.objective));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CranSolution {
    pub schedule: Schedule,
    pub vertex_labels: Vec<String>,
    pub raw: SolveResult,
}

fn check_weight(objective: f64, weight: f64) -> Result<()> {
    if (objective - weight).abs() > 1e-9 * objective.abs().max(weight.abs()) {
        return Err(Error::ConstraintViolation(format!(
            "cran: schedule objective {objective} differs from clique weight {weight}"
        )));
    }
    Ok(())
}

/// Maximum weight `R*B`-clique of the scheduling graph under fixed powers.
pub fn solve_schedule(s: &CranScenario, algorithm: Algorithm, options: &SolveOptions) -> Result<CranSolution> {
    let (graph, mapping) = build_scheduling_graph(s)?;
    let options = SolveOptions {
        min_size: Some(s.rrbs * s.rrhs),
        ..options.clone()
    };
    let raw = solve(&graph, algorithm, &options)?;
    let mut assign = vec![vec![usize::MAX; s.rrbs]; s.rrhs];
    for a in mapping.decode(raw.members()) {
        assign[a.rrh][a.rrb] = a.user;
    }
    let objective = schedule_objective(s, &assign, &s.powers);
    let schedule = Schedule {
        assign,
        powers: s.powers.clone(),
        objective,
    };
    schedule.check(s)?;
    check_weight(objective, raw.weight)?;
    Ok(CranSolution {
        schedule,
        vertex_labels: mapping.display(raw.members()),
        raw,
    })
}

/// Exhaustive scan over all `U^(B*R)` assignments with at most one head per
/// user, at the scenario's fixed powers. `None` when no assignment is valid.
pub fn brute_force_schedule(s: &CranScenario) -> Result<Option<f64>> {
    s.validate()?;
    let mut best = None;
    for_each_assignment(s, |assign| {
        let value = schedule_objective(s, assign, &s.powers);
        if best.is_none_or(|b| value > b) {
            best = Some(value);
        }
    })?;
    Ok(best)
}

fn for_each_assignment(s: &CranScenario, mut visit: impl FnMut(&[Vec<usize>])) -> Result<()> {
    let slots = s.rrhs * s.rrbs;
    let total = (s.users as u64)
        .checked_pow(slots as u32)
        .filter(|&t| t <= 1 << 24)
        .ok_or(Error::GuardExceeded { size: slots, limit: 24 })?;
    let mut assign = vec![vec![0; s.rrbs]; s.rrhs];
    for code in 0..total {
        let mut c = code;
        for slot in 0..slots {
            assign[slot / s.rrbs][slot % s.rrbs] = (c % s.users as u64) as usize;
            c /= s.users as u64;
        }
        if one_head_per_user(s, &assign) {
            visit(&assign);
        }
    }
    Ok(())
}

/// Joint-graph vertex: block `rrb` with `users[b]` on head `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BlockChoice {
    pub rrb: usize,
    pub users: Vec<usize>,
}

impl fmt::Display for BlockChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let users: Vec<String> = self.users.iter().map(|u| format!("u{}", u + 1)).collect();
        write!(f, "r{}({})", self.rrb + 1, users.join(","))
    }
}

/// Joint graph plus the grid powers chosen inside each vertex.
#[derive(Clone, Debug)]
pub struct JointGraph {
    pub graph: Graph,
    pub mapping: ScenarioMapping<BlockChoice>,
    /// Per vertex, power on each head.
    pub powers: Vec<Vec<f64>>,
}

/// Best weighted rate on block `r` for the head-to-user tuple `users`, over
/// the power grid `{cap * i / levels : i = 1..=levels}` per head. Ties keep the
/// first grid point in lexicographic order.
pub fn best_block_powers(s: &CranScenario, r: usize, users: &[usize], levels: usize) -> (f64, Vec<f64>) {
    let b_count = s.rrhs;
    let mut index = vec![1usize; b_count];
    let mut best: Option<(f64, Vec<f64>)> = None;
    loop {
        let p: Vec<f64> = (0..b_count).map(|b| s.power_max[b][r] * index[b] as f64 / levels as f64).collect();
        let mut value = 0.0;
        for (b, &u) in users.iter().enumerate() {
            let interference: f64 = (0..b_count)
                .filter(|&o| o != b)
                .map(|o| p[o] * s.gains[o][r][u].norm_sqr())
                .sum();
            let sinr = p[b] * s.gains[b][r][u].norm_sqr() / (s.gap * (s.noise + interference));
            value += s.weight(u, b, r) * (1.0 + sinr).log2();
        }
        if best.as_ref().is_none_or(|(v, _)| value > *v) {
            best = Some((value, p));
        }
        let mut pos = b_count;
        loop {
            if pos == 0 {
                return best.expect("grid is non-empty");
            }
            pos -= 1;
            if index[pos] < levels {
                index[pos] += 1;
                break;
            }
            index[pos] = 1;
        }
    }
}

/// Union of per-block local graphs. Each vertex fixes the users of one block
/// on every head (no user twice) and its best grid powers; vertices of
/// different blocks are adjacent when no user sits on two different heads.
pub fn build_joint_graph(s: &CranScenario, levels: usize) -> Result<JointGraph> {
    s.validate()?;
    if levels == 0 {
        return Err(Error::InvalidParameter("power grid needs at least one level".into()));
    }
    let mut labels = Vec::new();
    let mut weights = Vec::new();
    let mut powers = Vec::new();
    for rrb in 0..s.rrbs {
        for_each_distinct_tuple(s.users, s.rrhs, |users| {
            let (w, p) = best_block_powers(s, rrb, users, levels);
            labels.push(BlockChoice { rrb, users: users.to_vec() });
            weights.push(w);
            powers.push(p);
        });
    }
    let graph = Graph::from_predicate(weights, true, |i, j| {
        let (a, b) = (&labels[i], &labels[j]);
        a.rrb != b.rrb
            && a.users.iter().enumerate().all(|(ha, ua)| {
                b.users.iter().enumerate().all(|(hb, ub)| ua != ub || ha == hb)
            })
    })?;
    Ok(JointGraph {
        graph,
        mapping: ScenarioMapping::new(labels),
        powers,
    })
}

fn for_each_distinct_tuple(users: usize, len: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(users: usize, len: usize, tuple: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if tuple.len() == len {
            visit(tuple);
            return;
        }
        for u in 0..users {
            if !tuple.contains(&u) {
                tuple.push(u);
                rec(users, len, tuple, visit);
                tuple.pop();
            }
        }
    }
    rec(users, len, &mut Vec::with_capacity(len), &mut visit);
}

/// Joint scheduling and power control: maximum weight `R`-clique of the joint
/// graph with a `levels`-point power grid per head.
pub fn solve_joint(s: &CranScenario, algorithm: Algorithm, levels: usize, options: &SolveOptions) -> Result<CranSolution> {
    let joint = build_joint_graph(s, levels)?;
    let options = SolveOptions {
        min_size: Some(s.rrbs),
        ..options.clone()
    };
    let raw = solve(&joint.graph, algorithm, &options)?;
    let mut assign = vec![vec![usize::MAX; s.rrbs]; s.rrhs];
    let mut powers = vec![vec![0.0; s.rrbs]; s.rrhs];
    for &v in raw.members() {
        let choice = joint.mapping.label(v);
        for b in 0..s.rrhs {
            assign[b][choice.rrb] = choice.users[b];
            powers[b][choice.rrb] = joint.powers[v][b];
        }
    }
    let objective = schedule_objective(s, &assign, &powers);
    let schedule = Schedule {
        assign,
        powers,
        objective,
    };
    schedule.check(s)?;
    check_weight(objective, raw.weight)?;
    Ok(CranSolution {
        schedule,
        vertex_labels: joint.mapping.display(raw.members()),
        raw,
    })
}

/// Full enumeration: every valid assignment, and for each block every grid
/// power vector.
pub fn brute_force_joint(s: &CranScenario, levels: usize) -> Result<Option<f64>> {
    s.validate()?;
    let mut best: Option<f64> = None;
    let grid_points = (levels as u64).pow(s.rrhs as u32);
    for_each_assignment(s, |assign| {
        let mut total = 0.0;
        for r in 0..s.rrbs {
            let mut block_best = f64::NEG_INFINITY;
            for code in 0..grid_points {
                let mut c = code;
                let mut powers = vec![vec![0.0; s.rrbs]; s.rrhs];
                for b in 0..s.rrhs {
                    powers[b][r] = s.power_max[b][r] * ((c % levels as u64) + 1) as f64 / levels as f64;
                    c /= levels as u64;
                }
                let mut value = 0.0;
                for b in 0..s.rrhs {
                    let u = assign[b][r];
                    value += s.weight(u, b, r) * cran_rate(s, u, b, r, &powers);
                }
                block_best = block_best.max(value);
            }
            total += block_best;
        }
        if best.is_none_or(|b| total > b) {
            best = Some(total);
        }
    })?;
    Ok(best)
}
