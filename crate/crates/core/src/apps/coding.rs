//! Index coding and instantly decodable network coding (IDNC) over a
//! broadcast channel, plus a slot-level erasure simulator.
//!
//! Files are XOR-combined; a user can decode a combination when it misses at
//! most one of its files, and is *targeted* when it misses exactly one.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::mapping::ScenarioMapping;
use crate::rng::{derive_seed, unit_draw};
use crate::solver::{solve, Algorithm, BpsoParams, SolveOptions, SolveResult};

/// Default largest file count for [`oracle_best_combination`].
pub const ORACLE_FILE_LIMIT: usize = 20;

/// Per-user Wants sets over files `0..files`; Has is the complement.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SideInformation {
    files: usize,
    wants: Vec<BTreeSet<usize>>,
    erasure: Vec<f64>,
}

impl SideInformation {
    pub fn from_wants(files: usize, wants: Vec<Vec<usize>>, erasure: Vec<f64>) -> Result<Self> {
        let bad = |m: String| Err(Error::Scenario(format!("side information: {m}")));
        if erasure.len() != wants.len() {
            return bad(format!("{} users but {} erasure probabilities", wants.len(), erasure.len()));
        }
        if let Some(e) = erasure.iter().find(|e| !(0.0..1.0).contains(*e)) {
            return bad(format!("erasure probability {e} outside [0, 1)"));
        }
        let mut sets = Vec::with_capacity(wants.len());
        for (u, w) in wants.into_iter().enumerate() {
            if let Some(f) = w.iter().find(|&&f| f >= files) {
                return bad(format!("user {u} wants file {f} but there are {files} files"));
            }
            sets.push(w.into_iter().collect());
        }
        Ok(SideInformation {
            files,
            wants: sets,
            erasure,
        })
    }

    pub fn from_has(files: usize, has: Vec<Vec<usize>>, erasure: Vec<f64>) -> Result<Self> {
        for (u, h) in has.iter().enumerate() {
            if let Some(f) = h.iter().find(|&&f| f >= files) {
                return Err(Error::Scenario(format!(
                    "side information: user {u} has file {f} but there are {files} files"
                )));
            }
        }
        let wants = has
            .iter()
            .map(|h| (0..files).filter(|f| !h.contains(f)).collect())
            .collect();
        Self::from_wants(files, wants, erasure)
    }

    /// Same erasure probability for every user.
    pub fn uniform(files: usize, wants: Vec<Vec<usize>>, erasure: f64) -> Result<Self> {
        let users = wants.len();
        Self::from_wants(files, wants, vec![erasure; users])
    }

    pub fn users(&self) -> usize {
        self.wants.len()
    }

    pub fn files(&self) -> usize {
        self.files
    }

    pub fn erasure(&self, u: usize) -> f64 {
        self.erasure[u]
    }

    pub fn wants(&self, u: usize) -> &BTreeSet<usize> {
        &self.wants[u]
    }

    pub fn has(&self, u: usize) -> BTreeSet<usize> {
        (0..self.files).filter(|f| !self.wants[u].contains(f)).collect()
    }

    pub fn wants_file(&self, u: usize, f: usize) -> bool {
        self.wants[u].contains(&f)
    }

    /// Users that want file `f`.
    pub fn demanders(&self, f: usize) -> Vec<usize> {
        (0..self.users()).filter(|&u| self.wants_file(u, f)).collect()
    }

    pub fn total_wants(&self) -> usize {
        self.wants.iter().map(BTreeSet::len).sum()
    }

    pub fn is_complete(&self) -> bool {
        self.wants.iter().all(BTreeSet::is_empty)
    }

    fn deliver(&mut self, u: usize, f: usize) {
        self.wants[u].remove(&f);
    }
}

/// An XOR combination of files and the users it targets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Combination {
    /// Ascending file ids.
    pub files: Vec<usize>,
    /// Users missing exactly one file of the combination, ascending.
    pub targeted: Vec<usize>,
}

impl Combination {
    pub fn new(si: &SideInformation, files: impl IntoIterator<Item = usize>) -> Self {
        let files: Vec<usize> = files.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let targeted = (0..si.users())
            .filter(|&u| files.iter().filter(|&&f| si.wants_file(u, f)).count() == 1)
            .collect();
        Combination { files, targeted }
    }

    /// True when every user misses at most one file of the combination.
    pub fn decodable_by_all(&self, si: &SideInformation) -> bool {
        (0..si.users()).all(|u| self.files.iter().filter(|&&f| si.wants_file(u, f)).count() <= 1)
    }

    /// Sum of `1 - erasure` over the targeted users.
    pub fn objective(&self, si: &SideInformation) -> f64 {
        self.targeted.iter().map(|&u| 1.0 - si.erasure(u)).sum()
    }

    /// The file each targeted user decodes.
    pub fn decoded_file(&self, si: &SideInformation, u: usize) -> Option<usize> {
        let mut missing = self.files.iter().filter(|&&f| si.wants_file(u, f));
        match (missing.next(), missing.next()) {
            (Some(&f), None) => Some(f),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FileId(pub usize);

impl fmt::Display for FileId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.0 + 1)
    }
}

/// IDNC vertex: user `user` missing file `file`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Request {
    pub user: usize,
    pub file: usize,
}

impl fmt::Display for Request {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u{}f{}", self.user + 1, self.file + 1)
    }
}

/// Index-coding graph: one unit-weight vertex per file, two files adjacent
/// when no user wants both.
pub fn ic_build_graph(si: &SideInformation) -> Result<(Graph, ScenarioMapping<FileId>)> {
    let demanders: Vec<Vec<usize>> = (0..si.files()).map(|f| si.demanders(f)).collect();
    let graph = Graph::from_predicate(vec![1.0; si.files()], false, |a, b| {
        demanders[a].iter().all(|u| !demanders[b].contains(u))
    })?;
    Ok((graph, ScenarioMapping::new((0..si.files()).map(FileId).collect())))
}

#[derive(Clone, Debug, Serialize)]
pub struct CodingSolution {
    pub combination: Combination,
    pub objective: f64,
    pub vertex_labels: Vec<String>,
    pub raw: SolveResult,
}

/// Largest combination every user can decode, as a maximum clique of the
/// index-coding graph.
pub fn ic_solve(si: &SideInformation, algorithm: Algorithm, options: &SolveOptions) -> Result<CodingSolution> {
    let (graph, mapping) = ic_build_graph(si)?;
    let raw = solve(&graph, algorithm, options)?;
    let combination = Combination::new(si, mapping.decode(raw.members()).into_iter().map(|f| f.0));
    if !combination.decodable_by_all(si) {
        return Err(Error::ConstraintViolation(format!(
            "index coding: combination {:?} is not decodable by every user",
            combination.files
        )));
    }
    Ok(CodingSolution {
        objective: combination.files.len() as f64,
        vertex_labels: mapping.display(raw.members()),
        combination,
        raw,
    })
}

/// IDNC graph: one vertex per (user, wanted file) weighted `1 - erasure`.
/// Two vertices are adjacent when they request the same file, or when each
/// user already holds the other's file.
pub fn idnc_build_graph(si: &SideInformation) -> Result<(Graph, ScenarioMapping<Request>)> {
    let vertices: Vec<Request> = (0..si.users())
        .flat_map(|user| si.wants(user).iter().map(move |&file| Request { user, file }))
        .collect();
    let weights = vertices.iter().map(|v| 1.0 - si.erasure(v.user)).collect();
    let graph = Graph::from_predicate(weights, false, |i, j| {
        let (a, b) = (vertices[i], vertices[j]);
        let same_file = a.file == b.file;
        let crossed = !si.wants_file(b.user, a.file) && !si.wants_file(a.user, b.file);
        same_file || crossed
    })?;
    Ok((graph, ScenarioMapping::new(vertices)))
}

/// Combination minimizing the expected collective decoding delay, via a
/// maximum weight clique of the IDNC graph. Every clique member's user is
/// targeted by the decoded combination and decodes its file.
pub fn idnc_solve(si: &SideInformation, algorithm: Algorithm, options: &SolveOptions) -> Result<CodingSolution> {
    let (graph, mapping) = idnc_build_graph(si)?;
    let raw = solve(&graph, algorithm, options)?;
    let requests = mapping.decode(raw.members());
    let combination = Combination::new(si, requests.iter().map(|r| r.file));
    for r in &requests {
        if combination.decoded_file(si, r.user) != Some(r.file) {
            return Err(Error::ConstraintViolation(format!(
                "idnc: user {} cannot decode file {} from {:?}",
                r.user, r.file, combination.files
            )));
        }
    }
    let objective = combination.objective(si);
    if (objective - raw.weight).abs() > 1e-9 * raw.weight.abs().max(1.0) {
        return Err(Error::ConstraintViolation(format!(
            "idnc: targeted weight {objective} differs from clique weight {}",
            raw.weight
        )));
    }
    Ok(CodingSolution {
        objective,
        vertex_labels: mapping.display(raw.members()),
        combination,
        raw,
    })
}

/// Exhaustive scan of all file subsets for the best IDNC objective. Ties keep
/// the subset with the smallest bitmask.
pub fn oracle_best_combination(si: &SideInformation, limit: usize) -> Result<(Combination, f64)> {
    if si.files() > limit.min(63) {
        return Err(Error::GuardExceeded {
            size: si.files(),
            limit,
        });
    }
    let mut best = (Combination::new(si, []), 0.0);
    for mask in 1u64..1 << si.files() {
        let c = Combination::new(si, (0..si.files()).filter(|f| mask >> f & 1 == 1));
        let value = c.objective(si);
        if value > best.1 + 1e-12 {
            best = (c, value);
        }
    }
    Ok(best)
}

/// Wants sets after broadcasting every file once in order: user `u` misses
/// file `f` when the draw for `(f, u)` falls below its erasure probability.
pub fn initial_broadcast(files: usize, erasure: &[f64], seed: u64) -> Result<SideInformation> {
    let wants = (0..erasure.len())
        .map(|u| {
            (0..files)
                .filter(|&f| unit_draw(seed, "initial", &[f as u64, u as u64]) < erasure[u])
                .collect()
        })
        .collect();
    SideInformation::from_wants(files, wants, erasure.to_vec())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SimulationConfig {
    pub algorithm: Algorithm,
    /// `false` sends the single file wanted by the most reliable users.
    pub coding: bool,
    pub seed: u64,
    pub bpso: BpsoParams,
    pub max_slots: usize,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        SimulationConfig {
            algorithm: Algorithm::Exact,
            coding: true,
            seed: 0,
            bpso: BpsoParams::default(),
            max_slots: 100_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SlotRecord {
    /// 1-based.
    pub slot: usize,
    pub combination: Vec<usize>,
    pub targeted: Vec<usize>,
    /// Per user: reception succeeded.
    pub received: Vec<bool>,
    /// Targeted users that received and decoded.
    pub decoded: Vec<usize>,
    /// Users charged one unit of decoding delay.
    pub delayed: Vec<usize>,
    pub cumulative_delay: u64,
    /// Total outstanding wants after the slot.
    pub remaining: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimulationRecord {
    pub initial_wants: usize,
    pub slots: Vec<SlotRecord>,
    pub completion_slots: usize,
    pub total_delay: u64,
    pub user_delay: Vec<u64>,
}

impl SimulationRecord {
    /// CSV rows `replica,slot,combination,targeted,successes,cum_delay`, file
    /// ids 1-based and space-separated.
    pub fn write_csv_rows(&self, replica: usize, out: &mut String) {
        use std::fmt::Write;
        for s in &self.slots {
            let files: Vec<String> = s.combination.iter().map(|f| (f + 1).to_string()).collect();
            let _ = writeln!(
                out,
                "{replica},{},{},{},{},{}",
                s.slot,
                files.join(" "),
                s.targeted.len(),
                s.decoded.len(),
                s.cumulative_delay
            );
        }
    }
}

pub const CSV_HEADER: &str = "replica,slot,combination,targeted,successes,cum_delay";

/// Best single file without coding: the most total `1 - erasure` among its
/// demanders, lowest id on ties.
fn best_uncoded(si: &SideInformation) -> Combination {
    let mut best: Option<(f64, usize)> = None;
    for f in 0..si.files() {
        let value: f64 = si.demanders(f).iter().map(|&u| 1.0 - si.erasure(u)).sum();
        let demanded = !si.demanders(f).is_empty();
        if demanded && best.is_none_or(|(b, _)| value > b + 1e-12) {
            best = Some((value, f));
        }
    }
    Combination::new(si, best.map(|(_, f)| f))
}

/// Slot-by-slot broadcast until every user holds every file. Erasure draws are
/// keyed by `(seed, slot, user)` alone, so runs with different algorithms
/// under the same seed see the same channel realisation.
pub fn simulate_broadcast(initial: &SideInformation, config: &SimulationConfig) -> Result<SimulationRecord> {
    let mut si = initial.clone();
    let mut record = SimulationRecord {
        initial_wants: si.total_wants(),
        slots: Vec::new(),
        completion_slots: 0,
        total_delay: 0,
        user_delay: vec![0; si.users()],
    };
    let mut slot = 0;
    while !si.is_complete() {
        slot += 1;
        if slot > config.max_slots {
            return Err(Error::InvalidParameter(format!(
                "broadcast did not complete within {} slots",
                config.max_slots
            )));
        }
        let combination = if config.coding {
            let mut bpso = config.bpso.clone();
            bpso.seed = derive_seed(config.seed, "bpso", &[slot as u64]);
            let options = SolveOptions {
                bpso,
                ..SolveOptions::default()
            };
            idnc_solve(&si, config.algorithm, &options)?.combination
        } else {
            best_uncoded(&si)
        };
        let received: Vec<bool> = (0..si.users())
            .map(|u| unit_draw(config.seed, "erasure", &[slot as u64, u as u64]) >= si.erasure(u))
            .collect();
        let mut decoded = Vec::new();
        let mut delayed = Vec::new();
        for u in 0..si.users() {
            if !received[u] || si.wants(u).is_empty() {
                continue;
            }
            match combination.decoded_file(&si, u) {
                Some(f) => {
                    si.deliver(u, f);
                    decoded.push(u);
                }
                None => {
                    delayed.push(u);
                    record.user_delay[u] += 1;
                    record.total_delay += 1;
                }
            }
        }
        record.slots.push(SlotRecord {
            slot,
            combination: combination.files,
            targeted: combination.targeted,
            received,
            decoded,
            delayed,
            cumulative_delay: record.total_delay,
            remaining: si.total_wants(),
        });
    }
    record.completion_slots = slot;
    Ok(record)
}
