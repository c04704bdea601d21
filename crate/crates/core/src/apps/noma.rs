//! Uplink NOMA maximum access: admission control, user pairing and channel
//! assignment as a maximum independent set.
//!
//! Each channel carries a cluster of one or two users decoded by successive
//! interference cancellation in decreasing channel-power-gain order, so a user
//! only sees interference from the weaker member of its cluster. Every
//! `(cluster, channel)` pair meeting all rate floors becomes a vertex; vertices
//! sharing a user or a channel conflict.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::mapping::ScenarioMapping;
use crate::solver::{solve_independent_set, Algorithm, SolveOptions, SolveResult};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NomaScenario {
    pub users: usize,
    pub channels: usize,
    /// `gains[u][k]`, linear complex channel gain.
    pub gains: Vec<Vec<Complex64>>,
    /// Transmit power per user, watts.
    pub powers: Vec<f64>,
    /// Noise variance, watts.
    pub noise: f64,
    /// SINR gap (linear, at least 1).
    pub gap: f64,
    /// `bandwidth[u][k]`, hertz.
    pub bandwidth: Vec<Vec<f64>>,
    /// Minimum rate per admitted user, bits/s.
    pub rate_min: Vec<f64>,
}

impl NomaScenario {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Scenario(format!("noma: {m}")));
        if self.users == 0 || self.channels == 0 {
            return bad("need at least one user and one channel");
        }
        if self.gains.len() != self.users
            || self.gains.iter().any(|row| row.len() != self.channels)
            || self.bandwidth.len() != self.users
            || self.bandwidth.iter().any(|row| row.len() != self.channels)
            || self.powers.len() != self.users
            || self.rate_min.len() != self.users
        {
            return bad("array dimensions do not match users x channels");
        }
        if !(self.noise > 0.0 && self.noise.is_finite()) {
            return bad("noise variance must be positive");
        }
        if !(self.gap >= 1.0 && self.gap.is_finite()) {
            return bad("SINR gap must be at least 1");
        }
        if self.rate_min.iter().any(|r| r.is_nan() || *r < 0.0) {
            return bad("rate floors must be non-negative");
        }
        if self.bandwidth.iter().flatten().any(|b| !(*b > 0.0 && b.is_finite())) {
            return bad("bandwidths must be positive");
        }
        if self.powers.iter().any(|p| !(*p >= 0.0 && p.is_finite())) {
            return bad("powers must be non-negative");
        }
        if self.gains.iter().flatten().any(|h| !h.re.is_finite() || !h.im.is_finite()) {
            return bad("gains must be finite");
        }
        Ok(())
    }

    pub fn cpg(&self, u: usize, k: usize) -> f64 {
        self.gains[u][k].norm_sqr()
    }

    /// True when `other` is decoded after `u` on channel `k`, i.e. interferes
    /// with `u`. Equal gains: the lower index is decoded first.
    fn decoded_after(&self, other: usize, u: usize, k: usize) -> bool {
        let (a, b) = (self.cpg(other, k), self.cpg(u, k));
        a < b || (a == b && other > u)
    }

    /// The same scenario without channel `k`.
    pub fn without_channel(&self, k: usize) -> NomaScenario {
        let drop = |rows: &[Vec<f64>]| {
            rows.iter()
                .map(|r| r.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, x)| *x).collect())
                .collect()
        };
        NomaScenario {
            channels: self.channels - 1,
            gains: self
                .gains
                .iter()
                .map(|r| r.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, x)| *x).collect())
                .collect(),
            bandwidth: drop(&self.bandwidth),
            ..self.clone()
        }
    }
}

/// Users sharing one channel.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NomaCluster {
    /// One or two users, ascending.
    pub users: Vec<usize>,
    pub channel: usize,
}

impl fmt::Display for NomaCluster {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let users: Vec<String> = self.users.iter().map(|u| format!("u{}", u + 1)).collect();
        write!(f, "{{{}}}@k{}", users.join(","), self.channel + 1)
    }
}

/// Linear SINR of user `u` in `cluster` on channel `k`: the user's received
/// power over the gap-scaled noise plus the power of cluster members decoded
/// after it (weaker channel power gain).
pub fn noma_sinr(s: &NomaScenario, cluster: &[usize], k: usize, u: usize) -> Result<f64> {
    if cluster.len() > 2 {
        return Err(Error::InvalidParameter(format!(
            "a NOMA channel holds at most two users, got {}",
            cluster.len()
        )));
    }
    if !cluster.contains(&u) {
        return Err(Error::InvalidParameter(format!("user {u} is not in the cluster")));
    }
    let interference: f64 = cluster
        .iter()
        .filter(|&&o| o != u && s.decoded_after(o, u, k))
        .map(|&o| s.powers[o] * s.cpg(o, k))
        .sum();
    Ok(s.powers[u] * s.cpg(u, k) / (s.gap * (s.noise + interference)))
}

/// Rate in bits/s of user `u` in `cluster` on channel `k`.
pub fn noma_rate(s: &NomaScenario, cluster: &[usize], k: usize, u: usize) -> Result<f64> {
    Ok(s.bandwidth[u][k] * (1.0 + noma_sinr(s, cluster, k, u)?).log2())
}

/// Every singleton and pair cluster on every channel whose members all meet
/// their rate floors, ordered by channel, then singletons, then pairs.
pub fn feasible_assignments(s: &NomaScenario) -> Result<Vec<NomaCluster>> {
    s.validate()?;
    let mut out = Vec::new();
    for k in 0..s.channels {
        let mut clusters: Vec<Vec<usize>> = (0..s.users).map(|u| vec![u]).collect();
        for a in 0..s.users {
            for b in a + 1..s.users {
                clusters.push(vec![a, b]);
            }
        }
        for users in clusters {
            let mut ok = true;
            for &u in &users {
                ok &= noma_rate(s, &users, k, u)? >= s.rate_min[u];
            }
            if ok {
                out.push(NomaCluster { users, channel: k });
            }
        }
    }
    Ok(out)
}

/// Conflict graph over the feasible assignments. Vertex weight is the cluster
/// size, so an independent set's weight is its number of admitted users.
pub fn build_noma_graph(s: &NomaScenario) -> Result<(Graph, ScenarioMapping<NomaCluster>)> {
    let vertices = feasible_assignments(s)?;
    let weights = vertices.iter().map(|c| c.users.len() as f64).collect();
    let graph = Graph::from_predicate(weights, false, |i, j| {
        let (a, b) = (&vertices[i], &vertices[j]);
        a.channel == b.channel || a.users.iter().any(|u| b.users.contains(u))
    })?;
    Ok((graph, ScenarioMapping::new(vertices)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NomaAssignment {
    pub clusters: Vec<NomaCluster>,
    /// Admitted users, ascending.
    pub admitted: Vec<usize>,
}

impl NomaAssignment {
    pub fn from_clusters(mut clusters: Vec<NomaCluster>) -> Self {
        clusters.sort();
        let mut admitted: Vec<usize> = clusters.iter().flat_map(|c| c.users.clone()).collect();
        admitted.sort_unstable();
        NomaAssignment { clusters, admitted }
    }

    /// Checks admission, exclusivity and rate constraints literally from the
    /// binary admission and scheduling variables they induce, recomputing every
    /// SINR from scratch.
    pub fn check(&self, s: &NomaScenario) -> Result<()> {
        let violation = |m: String| Err(Error::ConstraintViolation(format!("noma: {m}")));
        let mut scheduled = vec![vec![false; s.channels]; s.users];
        let mut channel_used = vec![false; s.channels];
        for c in &self.clusters {
            if c.channel >= s.channels || c.users.is_empty() || c.users.iter().any(|&u| u >= s.users) {
                return violation(format!("malformed cluster {c}"));
            }
            if std::mem::replace(&mut channel_used[c.channel], true) {
                return violation(format!("channel {} appears in two clusters", c.channel));
            }
            for &u in &c.users {
                if std::mem::replace(&mut scheduled[u][c.channel], true) {
                    return violation(format!("user {u} listed twice on channel {}", c.channel));
                }
            }
        }
        let admitted: Vec<bool> = (0..s.users).map(|u| self.admitted.contains(&u)).collect();
        for u in 0..s.users {
            let links = scheduled[u].iter().filter(|&&x| x).count();
            if admitted[u] && links != 1 {
                return violation(format!("admitted user {u} holds {links} channels"));
            }
            if !admitted[u] && links != 0 {
                return violation(format!("user {u} is scheduled but not admitted"));
            }
        }
        for k in 0..s.channels {
            let load = (0..s.users).filter(|&u| admitted[u] && scheduled[u][k]).count();
            if load > 2 {
                return violation(format!("channel {k} carries {load} users"));
            }
        }
        for u in 0..s.users {
            let mut rate = 0.0;
            for k in 0..s.channels {
                if !(admitted[u] && scheduled[u][k]) {
                    continue;
                }
                let own = s.gains[u][k].norm_sqr();
                let interference: f64 = (0..s.users)
                    .filter(|&o| o != u && admitted[o] && scheduled[o][k])
                    .filter(|&o| {
                        let g = s.gains[o][k].norm_sqr();
                        g < own || (g == own && o > u)
                    })
                    .map(|o| s.powers[o] * s.gains[o][k].norm_sqr())
                    .sum();
                let sinr = s.powers[u] * own / (s.gap * (s.noise + interference));
                rate += s.bandwidth[u][k] * (1.0 + sinr).log2();
            }
            let floor = if admitted[u] { s.rate_min[u] } else { 0.0 };
            if rate < floor {
                return violation(format!("user {u} gets {rate} bits/s, below {floor}"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NomaSolution {
    pub assignment: NomaAssignment,
    pub vertex_labels: Vec<String>,
    pub raw: SolveResult,
}

/// Maximum number of admitted users via a maximum weight independent set on
/// the conflict graph. The decoded assignment is re-checked with
/// [`NomaAssignment::check`].
pub fn solve_max_access(
    s: &NomaScenario,
    algorithm: Algorithm,
    options: &SolveOptions,
) -> Result<NomaSolution> {
    let (graph, mapping) = build_noma_graph(s)?;
    let raw = solve_independent_set(&graph, algorithm, options)?;
    let assignment = NomaAssignment::from_clusters(mapping.decode(raw.members()));
    assignment.check(s)?;
    if assignment.admitted.len() as f64 != raw.weight {
        return Err(Error::ConstraintViolation(format!(
            "noma: {} admitted users but independent set weight {}",
            assignment.admitted.len(),
            raw.weight
        )));
    }
    Ok(NomaSolution {
        vertex_labels: mapping.display(raw.members()),
        assignment,
        raw,
    })
}

/// Exhaustive search over every map from users to a channel or to "not
/// admitted", keeping those that respect the two-per-channel limit and every
/// admitted user's rate floor. Returns the largest admitted count.
pub fn brute_force_max_access(s: &NomaScenario) -> Result<usize> {
    s.validate()?;
    let options = s.channels + 1;
    let total = (options as u64)
        .checked_pow(s.users as u32)
        .filter(|&t| t <= 1 << 24)
        .ok_or(Error::GuardExceeded {
            size: s.users,
            limit: 24,
        })?;
    let mut best = 0;
    let mut choice = vec![0usize; s.users];
    for code in 0..total {
        let mut c = code;
        for slot in choice.iter_mut() {
            *slot = (c % options as u64) as usize;
            c /= options as u64;
        }
        // choice == channels means "off".
        let clusters: Vec<NomaCluster> = (0..s.channels)
            .filter_map(|k| {
                let users: Vec<usize> = (0..s.users).filter(|&u| choice[u] == k).collect();
                (!users.is_empty()).then_some(NomaCluster { users, channel: k })
            })
            .collect();
        let candidate = NomaAssignment::from_clusters(clusters);
        if candidate.admitted.len() > best && candidate.check(s).is_ok() {
            best = candidate.admitted.len();
        }
    }
    Ok(best)
}
