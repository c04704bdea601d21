//! Command-line front end.
//!
//! Machine-readable output (JSON, CSV from `solve`/`app`/`simulate`) carries no
//! timing, so identical inputs and seeds produce identical bytes. `bench` is
//! the only command that reports wall time.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::apps::coding::{
    ic_solve, idnc_solve, oracle_best_combination, simulate_broadcast, CodingSolution, SideInformation,
    SimulationConfig, SimulationRecord, CSV_HEADER, ORACLE_FILE_LIMIT,
};
use crate::apps::cran::{solve_joint, solve_schedule, CranScenario};
use crate::apps::noma::solve_max_access;
use crate::apps::rfid::solve_rccaa;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ip::{bnb_solve_binary, emit_lp_text, export_edge_formulation};
use crate::rng::derive_seed;
use crate::scenario::{self, GraphGenerator, Scenario};
use crate::solver::{enumerate_maximal_cliques, solve, solve_independent_set, Algorithm, SolveOptions, SolveResult};

/// Environment variable capping worker threads.
pub const THREADS_ENV: &str = "CLIQUEKIT_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "cliquekit", version, about = "Clique solvers and the wireless problems that reduce to them")]
pub struct Cli {
    /// Master seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write CSV rows here (simulate, bench).
    #[arg(long, global = true, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    /// exact, greedy, bpso or oracle.
    #[arg(long, global = true, default_value = "exact")]
    pub algo: Algorithm,
    /// Smallest acceptable clique (k-clique search).
    #[arg(long, global = true)]
    pub min_size: Option<usize>,
    /// Lift the size guard on exhaustive oracles.
    #[arg(long, global = true)]
    pub guard_override: bool,
    /// BPSO swarm size.
    #[arg(long, global = true)]
    pub particles: Option<usize>,
    /// BPSO iterations.
    #[arg(long, global = true)]
    pub iterations: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maximum weight clique of a graph (DIMACS or graph scenario JSON).
    Solve {
        input: PathBuf,
        /// Solve maximum weight independent set instead.
        #[arg(long)]
        independent: bool,
    },
    /// Solve an application scenario through its graph reduction.
    App {
        #[command(subcommand)]
        app: AppCommand,
    },
    /// Broadcast an IDNC scenario slot by slot over erasure channels.
    Simulate {
        scenario: PathBuf,
        #[arg(long, default_value_t = 1)]
        replicas: usize,
        /// Send one file per slot instead of coded combinations.
        #[arg(long)]
        uncoded: bool,
        #[arg(long, default_value_t = 100_000)]
        max_slots: usize,
    },
    /// Time solvers over random graphs; CSV to --csv or stdout.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [10usize, 20])]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = [0.5f64])]
        densities: Vec<f64>,
        /// Graphs per (size, density) cell.
        #[arg(long, default_value_t = 5)]
        seeds: u64,
        #[arg(long, value_delimiter = ',', default_values_t = [Algorithm::Exact, Algorithm::Greedy])]
        algos: Vec<Algorithm>,
    },
    /// Write the clique edge formulation as LP text and report its optimum.
    ExportIp {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Exhaustive reference answer: all maximal cliques of a graph, or the
    /// best combination of an ic/idnc scenario.
    Oracle { input: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum AppCommand {
    /// Uplink NOMA admission: most users admitted
    Noma { scenario: PathBuf },
    /// Index coding: one XOR combination decodable by every user
    Ic { scenario: PathBuf },
    /// Instantly decodable coding: best combination under erasures
    Idnc { scenario: PathBuf },
    /// RFID reader activation and radius choice for tag coverage
    Rfid { scenario: PathBuf },
    /// CRAN scheduling, optionally with discrete power control
    Cran {
        scenario: PathBuf,
        /// Joint power control with this many grid levels per head.
        #[arg(long)]
        power_levels: Option<usize>,
    },
}

/// Text and JSON renderings of one command's result.
struct Report {
    text: String,
    json: Value,
}

impl Report {
    fn new() -> Self {
        Report {
            text: String::new(),
            json: json!({}),
        }
    }

    fn field(&mut self, key: &str, text: impl std::fmt::Display, value: Value) -> &mut Self {
        let _ = writeln!(self.text, "{key}: {text}");
        self.json[key] = value;
        self
    }

    fn line(&mut self, line: impl std::fmt::Display) -> &mut Self {
        let _ = writeln!(self.text, "{line}");
        self
    }
}

/// Fixed-precision rendering for text output.
pub fn fmt_num(x: f64) -> String {
    if x == x.trunc() && x.abs() < 1e15 {
        return format!("{x:.0}");
    }
    let s = format!("{x:.10}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn join<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn one_based(items: &[usize]) -> String {
    join(items.iter().map(|x| x + 1))
}

/// Worker pool sized by [`THREADS_ENV`] when set.
pub fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var(THREADS_ENV) {
        let n: usize = raw
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::InvalidParameter(format!("{THREADS_ENV} must be a positive integer, got `{raw}`")))?;
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot start worker pool: {e}")))
}

impl Cli {
    fn options(&self) -> SolveOptions {
        let mut options = SolveOptions::default().with_min_size(self.min_size).with_seed(self.seed);
        if let Some(p) = self.particles {
            options.bpso.particles = p;
        }
        if let Some(t) = self.iterations {
            options.bpso.iterations = t;
        }
        if self.guard_override {
            options.oracle_limit = usize::MAX;
        }
        options
    }
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code. Errors go to `err` as one line.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = target.write_all(rendered.as_bytes());
            return e.exit_code();
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let report = match &cli.command {
        Command::Solve { input, independent } => cmd_solve(cli, input, *independent)?,
        Command::App { app } => cmd_app(cli, app)?,
        Command::Simulate {
            scenario,
            replicas,
            uncoded,
            max_slots,
        } => cmd_simulate(cli, scenario, *replicas, !*uncoded, *max_slots)?,
        Command::Bench {
            sizes,
            densities,
            seeds,
            algos,
        } => cmd_bench(cli, sizes, densities, *seeds, algos)?,
        Command::ExportIp { input, out } => cmd_export_ip(cli, input, out)?,
        Command::Oracle { input } => cmd_oracle(cli, input)?,
    };
    match cli.format {
        Format::Text => out.write_all(report.text.as_bytes())?,
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report.json)?)?,
    }
    Ok(())
}

fn load_graph(path: &Path) -> Result<Graph> {
    match scenario::load(path)? {
        Scenario::Graph(g) => Ok(g),
        other => Err(Error::Scenario(format!("expected a graph, found a {} scenario", other.kind()))),
    }
}

fn solve_fields(report: &mut Report, g: &Graph, r: &SolveResult) {
    report
        .field("algorithm", r.algorithm, json!(r.algorithm))
        .field("vertices", g.n(), json!(g.n()))
        .field("edges", g.edge_count(), json!(g.edge_count()))
        .field("selected", join(r.members()), json!(r.members()))
        .field("size", r.members().len(), json!(r.members().len()))
        .field("weight", fmt_num(r.weight), json!(r.weight))
        .field("nodes_explored", r.stats.nodes_explored, json!(r.stats.nodes_explored))
        .field("iterations", r.stats.iterations, json!(r.stats.iterations));
}

fn cmd_solve(cli: &Cli, input: &Path, independent: bool) -> Result<Report> {
    let g = load_graph(input)?;
    let result = if independent {
        solve_independent_set(&g, cli.algo, &cli.options())?
    } else {
        solve(&g, cli.algo, &cli.options())?
    };
    let mut report = Report::new();
    let problem = if independent { "independent set" } else { "clique" };
    report.field("problem", problem, json!(problem));
    solve_fields(&mut report, &g, &result);
    Ok(report)
}

fn coding_fields(report: &mut Report, sol: &CodingSolution) {
    let c = &sol.combination;
    report
        .field("combination", join(c.files.iter().map(|f| format!("f{}", f + 1))), json!(c.files))
        .field("targeted", join(c.targeted.iter().map(|u| format!("u{}", u + 1))), json!(c.targeted))
        .field("objective", fmt_num(sol.objective), json!(sol.objective));
}

fn raw_fields(report: &mut Report, labels: &[String], raw: &SolveResult) {
    report
        .field("algorithm", raw.algorithm, json!(raw.algorithm))
        .field("vertices_selected", labels.join(" "), json!(labels))
        .field("graph_weight", fmt_num(raw.weight), json!(raw.weight));
}

fn cmd_app(cli: &Cli, app: &AppCommand) -> Result<Report> {
    let (path, expected) = match app {
        AppCommand::Noma { scenario } => (scenario, "noma"),
        AppCommand::Ic { scenario } => (scenario, "ic"),
        AppCommand::Idnc { scenario } => (scenario, "idnc"),
        AppCommand::Rfid { scenario } => (scenario, "rfid"),
        AppCommand::Cran { scenario, .. } => (scenario, "cran"),
    };
    let loaded = scenario::load(path)?;
    let options = cli.options();
    let mut report = Report::new();
    report.field("kind", expected, json!(expected));
    match (app, loaded) {
        (AppCommand::Noma { .. }, Scenario::Noma(s)) => {
            let sol = solve_max_access(&s, cli.algo, &options)?;
            raw_fields(&mut report, &sol.vertex_labels, &sol.raw);
            let a = &sol.assignment;
            report
                .field("admitted", a.admitted.len(), json!(a.admitted.len()))
                .field("admitted_users", one_based(&a.admitted), json!(a.admitted))
                .field("clusters", join(&a.clusters), json!(a.clusters));
        }
        (AppCommand::Ic { .. }, Scenario::Ic(si) | Scenario::Idnc { state: si, .. }) => {
            let sol = ic_solve(&si, cli.algo, &options)?;
            raw_fields(&mut report, &sol.vertex_labels, &sol.raw);
            coding_fields(&mut report, &sol);
        }
        (AppCommand::Idnc { .. }, Scenario::Ic(si) | Scenario::Idnc { state: si, .. }) => {
            let sol = idnc_solve(&si, cli.algo, &options)?;
            raw_fields(&mut report, &sol.vertex_labels, &sol.raw);
            coding_fields(&mut report, &sol);
        }
        (AppCommand::Rfid { .. }, Scenario::Rfid(s)) => {
            let sol = solve_rccaa(&s, cli.algo, &options)?;
            raw_fields(&mut report, &sol.vertex_labels, &sol.raw);
            let p = &sol.plan;
            report
                .field("activation", join(&p.activation), json!(p.activation))
                .field("covered", p.covered.len(), json!(p.covered.len()))
                .field("covered_tags", one_based(&p.covered), json!(p.covered));
        }
        (AppCommand::Cran { power_levels, .. }, Scenario::Cran { scenario: s, power_levels: from_file }) => {
            cran_report(&mut report, cli, &s, power_levels.or(from_file), &options)?;
        }
        (_, other) => {
            return Err(Error::Scenario(format!(
                "`app {expected}` needs a {expected} scenario, found {}",
                other.kind()
            )))
        }
    }
    report.field("check", "pass", json!("pass"));
    Ok(report)
}

fn cran_report(
    report: &mut Report,
    cli: &Cli,
    s: &CranScenario,
    levels: Option<usize>,
    options: &SolveOptions,
) -> Result<()> {
    let sol = match levels {
        Some(l) => solve_joint(s, cli.algo, l, options)?,
        None => solve_schedule(s, cli.algo, options)?,
    };
    let mode = levels.map_or("fixed power".to_string(), |l| format!("joint, {l} power levels"));
    report.field("mode", &mode, json!(mode));
    raw_fields(report, &sol.vertex_labels, &sol.raw);
    report.field("objective", fmt_num(sol.schedule.objective), json!(sol.schedule.objective));
    let rows = sol.schedule.rows(s);
    report.line("rrh rrb user power rate");
    for row in &rows {
        report.line(format!(
            "{} {} {} {} {}",
            row.rrh + 1,
            row.rrb + 1,
            row.user + 1,
            fmt_num(row.power),
            fmt_num(row.rate)
        ));
    }
    report.json["schedule"] = json!(rows);
    Ok(())
}

fn cmd_simulate(cli: &Cli, path: &Path, replicas: usize, coding: bool, max_slots: usize) -> Result<Report> {
    let (state, generator) = match scenario::load(path)? {
        Scenario::Idnc { state, generator } => (state, generator),
        Scenario::Ic(state) => (state, None),
        other => return Err(Error::Scenario(format!("simulate needs an idnc scenario, found {}", other.kind()))),
    };
    if replicas == 0 {
        return Err(Error::InvalidParameter("replicas must be at least 1".into()));
    }
    let options = cli.options();
    options.bpso.validate()?;
    let run_one = |i: usize| -> Result<SimulationRecord> {
        let initial: SideInformation = match &generator {
            Some(g) => g.generate(i as u64)?,
            None => state.clone(),
        };
        let config = SimulationConfig {
            algorithm: cli.algo,
            coding,
            seed: derive_seed(cli.seed, "replica", &[i as u64]),
            bpso: options.bpso.clone(),
            max_slots,
        };
        simulate_broadcast(&initial, &config)
    };
    let records: Vec<SimulationRecord> = thread_pool()?
        .install(|| (0..replicas).into_par_iter().map(run_one).collect::<Result<_>>())?;

    if let Some(csv) = &cli.csv {
        let mut text = format!("{CSV_HEADER}\n");
        for (i, r) in records.iter().enumerate() {
            r.write_csv_rows(i, &mut text);
        }
        std::fs::write(csv, text)?;
    }
    let n = records.len() as f64;
    let mean_slots = records.iter().map(|r| r.completion_slots as f64).sum::<f64>() / n;
    let mean_delay = records.iter().map(|r| r.total_delay as f64).sum::<f64>() / n;
    let mut report = Report::new();
    report
        .field("algorithm", cli.algo, json!(cli.algo))
        .field("coding", if coding { "on" } else { "off" }, json!(coding))
        .field("replicas", replicas, json!(replicas))
        .field("mean_completion_slots", fmt_num(mean_slots), json!(mean_slots))
        .field("mean_decoding_delay", fmt_num(mean_delay), json!(mean_delay));
    for (i, r) in records.iter().enumerate() {
        report.line(format!(
            "replica {i}: {} slots, delay {}, initial wants {}",
            r.completion_slots, r.total_delay, r.initial_wants
        ));
    }
    report.json["runs"] = records
        .iter()
        .enumerate()
        .map(|(i, r)| {
            json!({
                "replica": i,
                "initial_wants": r.initial_wants,
                "completion_slots": r.completion_slots,
                "total_delay": r.total_delay,
                "user_delay": r.user_delay,
            })
        })
        .collect();
    Ok(report)
}

/// One benchmark row.
#[derive(Clone, Debug, serde::Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub density: f64,
    pub seed: u64,
    pub algo: Algorithm,
    pub wall_time_s: f64,
    /// `None` when the solver declined (oracle guard, unmet size).
    pub weight: Option<f64>,
}

pub const BENCH_HEADER: &str = "n,density,seed,algo,wall_time_s,weight";

/// Times each algorithm on seeded random graphs with weights in `(0, 10]`.
pub fn run_bench(
    master_seed: u64,
    sizes: &[usize],
    densities: &[f64],
    seeds: u64,
    algos: &[Algorithm],
    options: &SolveOptions,
) -> Result<Vec<BenchRow>> {
    let mut cells = Vec::new();
    for &n in sizes {
        for &density in densities {
            for seed in 0..seeds {
                cells.push((n, density, seed));
            }
        }
    }
    let rows: Vec<Vec<BenchRow>> = thread_pool()?.install(|| {
        cells
            .par_iter()
            .map(|&(n, density, seed)| {
                let g = GraphGenerator {
                    n,
                    density,
                    seed: derive_seed(master_seed, "bench", &[n as u64, density.to_bits(), seed]),
                    max_weight: Some(10.0),
                }
                .generate()?;
                Ok(algos
                    .iter()
                    .map(|&algo| {
                        let start = Instant::now();
                        let result = solve(&g, algo, options);
                        BenchRow {
                            n,
                            density,
                            seed,
                            algo,
                            wall_time_s: start.elapsed().as_secs_f64(),
                            weight: result.ok().map(|r| r.weight),
                        }
                    })
                    .collect())
            })
            .collect::<Result<_>>()
    })?;
    Ok(rows.into_iter().flatten().collect())
}

fn cmd_bench(cli: &Cli, sizes: &[usize], densities: &[f64], seeds: u64, algos: &[Algorithm]) -> Result<Report> {
    let rows = run_bench(cli.seed, sizes, densities, seeds, algos, &cli.options())?;
    let mut csv = format!("{BENCH_HEADER}\n");
    for r in &rows {
        let weight = r.weight.map_or("NA".to_string(), |w| format!("{w:?}"));
        let _ = writeln!(csv, "{},{},{},{},{:.9},{}", r.n, r.density, r.seed, r.algo, r.wall_time_s, weight);
    }
    let mut report = Report::new();
    match &cli.csv {
        Some(path) => {
            std::fs::write(path, &csv)?;
            report.field("rows", rows.len(), json!(rows.len()));
        }
        None => report.text = csv,
    }
    report.json["rows"] = json!(rows);
    Ok(report)
}

fn cmd_export_ip(cli: &Cli, input: &Path, out: &Path) -> Result<Report> {
    let g = load_graph(input)?;
    crate::solver::check_min_size(cli.min_size)?;
    let program = export_edge_formulation(&g, cli.min_size);
    std::fs::write(out, emit_lp_text(&program))?;
    let mut report = Report::new();
    report
        .field("variables", program.num_vars, json!(program.num_vars))
        .field("constraints", program.constraints.len(), json!(program.constraints.len()));
    match bnb_solve_binary(&program) {
        Ok(sol) => {
            let selected = sol.selected();
            report
                .field("ip_value", fmt_num(sol.objective), json!(sol.objective))
                .field("selected", join(&selected), json!(selected));
        }
        Err(Error::Infeasible(_)) => {
            report.field("ip_value", "infeasible", Value::Null);
        }
        Err(e) => return Err(e),
    }
    Ok(report)
}

fn cmd_oracle(cli: &Cli, input: &Path) -> Result<Report> {
    let mut report = Report::new();
    match scenario::load(input)? {
        Scenario::Graph(g) => {
            let limit = cli.options().oracle_limit;
            let cliques = enumerate_maximal_cliques(&g, limit)?;
            report.field("maximal_cliques", cliques.len(), json!(cliques.len()));
            for c in &cliques {
                report.line(format!("  {} (weight {})", join(c.members()), fmt_num(c.weight())));
            }
            report.json["cliques"] = json!(cliques);
            let best = crate::solver::oracle_max_weight_clique(&g, cli.min_size, limit)?;
            report
                .field("best", join(best.members()), json!(best.members()))
                .field("weight", fmt_num(best.weight), json!(best.weight));
        }
        Scenario::Ic(si) | Scenario::Idnc { state: si, .. } => {
            let limit = if cli.guard_override { usize::MAX } else { ORACLE_FILE_LIMIT };
            let (c, value) = oracle_best_combination(&si, limit)?;
            report
                .field("combination", join(c.files.iter().map(|f| format!("f{}", f + 1))), json!(c.files))
                .field("targeted", join(c.targeted.iter().map(|u| format!("u{}", u + 1))), json!(c.targeted))
                .field("objective", fmt_num(value), json!(value));
        }
        other => {
            return Err(Error::Scenario(format!(
                "oracle handles graph, ic and idnc inputs, found {}",
                other.kind()
            )))
        }
    }
    Ok(report)
}
