//! Clique problems as 0-1 integer linear programs.
//!
//! [`export_edge_formulation`] writes the edge formulation of a (minimum-size)
//! maximum weight clique problem, [`bnb_solve_binary`] solves small binary
//! programs by branch and bound, and [`emit_lp_text`]/[`parse_lp_text`] move
//! programs in and out of the LP file format.

use std::fmt::{self, Write};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Constraint {
    pub coefficients: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

impl Constraint {
    fn holds(&self, x: &[bool]) -> bool {
        let lhs: f64 = self
            .coefficients
            .iter()
            .zip(x)
            .filter(|(_, &on)| on)
            .map(|(c, _)| c)
            .sum();
        match self.relation {
            Relation::Le => lhs <= self.rhs + FEAS_TOL,
            Relation::Ge => lhs >= self.rhs - FEAS_TOL,
            Relation::Eq => (lhs - self.rhs).abs() <= FEAS_TOL,
        }
    }
}

const FEAS_TOL: f64 = 1e-9;

/// Maximise `objective . x` over `x` in {0,1}^n subject to `constraints`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BinaryProgram {
    pub num_vars: usize,
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
}

impl BinaryProgram {
    pub fn new(objective: Vec<f64>) -> Self {
        BinaryProgram {
            num_vars: objective.len(),
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn add_constraint(&mut self, coefficients: Vec<f64>, relation: Relation, rhs: f64) -> Result<()> {
        if coefficients.len() != self.num_vars {
            return Err(Error::InvalidParameter(format!(
                "constraint has {} coefficients, program has {} variables",
                coefficients.len(),
                self.num_vars
            )));
        }
        self.constraints.push(Constraint {
            coefficients,
            relation,
            rhs,
        });
        Ok(())
    }

    pub fn is_feasible(&self, x: &[bool]) -> bool {
        x.len() == self.num_vars && self.constraints.iter().all(|c| c.holds(x))
    }

    pub fn value(&self, x: &[bool]) -> f64 {
        self.objective
            .iter()
            .zip(x)
            .filter(|(_, &on)| on)
            .map(|(c, _)| c)
            .sum()
    }

    fn validate(&self) -> Result<()> {
        let finite = |v: &[f64]| v.iter().all(|c| c.is_finite());
        if self.objective.len() != self.num_vars
            || !finite(&self.objective)
            || self.constraints.iter().any(|c| {
                c.coefficients.len() != self.num_vars || !finite(&c.coefficients) || !c.rhs.is_finite()
            })
        {
            return Err(Error::InvalidParameter("malformed binary program".into()));
        }
        Ok(())
    }
}

/// Edge formulation: maximise the total weight of selected vertices with
/// `x_i + x_j <= 1` for every non-adjacent pair `i < j`, plus
/// `sum x_i >= k` when a minimum size is requested. Feasible points are
/// exactly the characteristic vectors of cliques (of size at least `k`).
pub fn export_edge_formulation(g: &Graph, min_size: Option<usize>) -> BinaryProgram {
    let n = g.n();
    let mut program = BinaryProgram::new(g.weights().to_vec());
    for i in 0..n {
        for j in i + 1..n {
            if !g.has_edge(i, j) {
                let mut row = vec![0.0; n];
                row[i] = 1.0;
                row[j] = 1.0;
                program.constraints.push(Constraint {
                    coefficients: row,
                    relation: Relation::Le,
                    rhs: 1.0,
                });
            }
        }
    }
    if let Some(k) = min_size {
        program.constraints.push(Constraint {
            coefficients: vec![1.0; n],
            relation: Relation::Ge,
            rhs: k as f64,
        });
    }
    program
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BinarySolution {
    pub assignment: Vec<bool>,
    pub objective: f64,
    pub nodes_explored: u64,
}

impl BinarySolution {
    pub fn selected(&self) -> Vec<usize> {
        (0..self.assignment.len()).filter(|&i| self.assignment[i]).collect()
    }
}

/// Depth-first binary branch and bound.
///
/// Variables are branched in order of decreasing `|c_i|` (lower index first on
/// ties), the 1-branch before the 0-branch. A branch is discarded when its
/// upper bound (fixed value plus every positive unfixed coefficient) is below
/// the incumbent, or when some constraint can no longer be met by any
/// completion of the partial assignment.
pub fn bnb_solve_binary(program: &BinaryProgram) -> Result<BinarySolution> {
    program.validate()?;
    let n = program.num_vars;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        program.objective[b]
            .abs()
            .total_cmp(&program.objective[a].abs())
            .then(a.cmp(&b))
    });

    // Per constraint: current activity of fixed variables, and the most
    // negative / most positive contribution still available from unfixed ones.
    let mut state: Vec<RowState> = program
        .constraints
        .iter()
        .map(|c| RowState {
            fixed: 0.0,
            free_min: c.coefficients.iter().filter(|&&a| a < 0.0).sum(),
            free_max: c.coefficients.iter().filter(|&&a| a > 0.0).sum(),
        })
        .collect();
    let free_positive: f64 = program.objective.iter().filter(|&&c| c > 0.0).sum();

    let mut bnb = BinaryBnb {
        program,
        order: &order,
        assignment: vec![false; n],
        best: None,
        nodes: 0,
    };
    if bnb.rows_satisfiable(&state) {
        bnb.branch(0, 0.0, free_positive, &mut state);
    }
    let nodes = bnb.nodes;
    let (assignment, objective) = bnb
        .best
        .ok_or_else(|| Error::Infeasible("no 0-1 point satisfies every constraint".into()))?;
    Ok(BinarySolution {
        assignment,
        objective,
        nodes_explored: nodes,
    })
}

#[derive(Clone, Copy)]
struct RowState {
    fixed: f64,
    free_min: f64,
    free_max: f64,
}

struct BinaryBnb<'a> {
    program: &'a BinaryProgram,
    order: &'a [usize],
    assignment: Vec<bool>,
    best: Option<(Vec<bool>, f64)>,
    nodes: u64,
}

impl BinaryBnb<'_> {
    fn rows_satisfiable(&self, rows: &[RowState]) -> bool {
        self.program.constraints.iter().zip(rows).all(|(c, s)| {
            let lo = s.fixed + s.free_min;
            let hi = s.fixed + s.free_max;
            match c.relation {
                Relation::Le => lo <= c.rhs + FEAS_TOL,
                Relation::Ge => hi >= c.rhs - FEAS_TOL,
                Relation::Eq => lo <= c.rhs + FEAS_TOL && hi >= c.rhs - FEAS_TOL,
            }
        })
    }

    fn branch(&mut self, depth: usize, value: f64, free_positive: f64, rows: &mut [RowState]) {
        self.nodes += 1;
        if let Some((_, best)) = &self.best {
            if value + free_positive < *best - FEAS_TOL * best.abs().max(1.0) {
                return;
            }
        }
        if depth == self.order.len() {
            // Interval checks are exact once every variable is fixed, but
            // re-check against the raw rows.
            if self.program.is_feasible(&self.assignment)
                && self.best.as_ref().is_none_or(|(_, b)| value > *b)
            {
                self.best = Some((self.assignment.clone(), value));
            }
            return;
        }
        let var = self.order[depth];
        let c = self.program.objective[var];
        let remaining_positive = free_positive - c.max(0.0);
        for on in [true, false] {
            let saved: Vec<RowState> = rows.to_vec();
            for (row, constraint) in rows.iter_mut().zip(&self.program.constraints) {
                let a = constraint.coefficients[var];
                if a > 0.0 {
                    row.free_max -= a;
                } else {
                    row.free_min -= a;
                }
                if on {
                    row.fixed += a;
                }
            }
            if self.rows_satisfiable(rows) {
                self.assignment[var] = on;
                let next = if on { value + c } else { value };
                self.branch(depth + 1, next, remaining_positive, rows);
                self.assignment[var] = false;
            }
            rows.copy_from_slice(&saved);
        }
    }
}

fn write_term(out: &mut String, first: bool, coefficient: f64, var: usize) {
    let sign = if coefficient < 0.0 { "-" } else { "+" };
    let magnitude = coefficient.abs();
    if first {
        if coefficient < 0.0 {
            out.push_str("- ");
        }
    } else {
        write!(out, " {sign} ").unwrap();
    }
    if magnitude == 1.0 {
        write!(out, "x{}", var + 1).unwrap();
    } else {
        write!(out, "{magnitude:?} x{}", var + 1).unwrap();
    }
}

fn write_row(out: &mut String, coefficients: &[f64]) {
    let mut first = true;
    for (i, &a) in coefficients.iter().enumerate() {
        if a != 0.0 {
            write_term(out, first, a, i);
            first = false;
        }
    }
    if first {
        out.push_str("0 x1");
    }
}

/// LP-file text: `Maximize`, `Subject To`, `Binary` and `End` sections,
/// variables `x1..xn`, one constraint per line.
pub fn emit_lp_text(program: &BinaryProgram) -> String {
    let mut out = String::from("Maximize\n obj: ");
    if program.num_vars == 0 {
        out.push('0');
    } else {
        write_row(&mut out, &program.objective);
    }
    out.push_str("\nSubject To\n");
    for (i, c) in program.constraints.iter().enumerate() {
        write!(out, " c{}: ", i + 1).unwrap();
        write_row(&mut out, &c.coefficients);
        writeln!(out, " {} {:?}", c.relation, c.rhs).unwrap();
    }
    out.push_str("Binary\n");
    if program.num_vars > 0 {
        let names: Vec<String> = (1..=program.num_vars).map(|i| format!("x{i}")).collect();
        writeln!(out, " {}", names.join(" ")).unwrap();
    }
    out.push_str("End\n");
    out
}

/// Parses the subset of the LP format written by [`emit_lp_text`].
pub fn parse_lp_text(text: &str) -> Result<BinaryProgram> {
    #[derive(PartialEq)]
    enum Section {
        None,
        Objective,
        Constraints,
        Binary,
        End,
    }
    let err = |line: usize, message: String| Error::Parse { line, message };

    let mut section = Section::None;
    let mut objective_terms: Vec<(usize, f64)> = Vec::new();
    let mut rows: Vec<(Vec<(usize, f64)>, Relation, f64)> = Vec::new();
    let mut binaries: Vec<usize> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('\\').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match line.to_ascii_lowercase().as_str() {
            "maximize" | "maximise" | "max" => {
                section = Section::Objective;
                continue;
            }
            "subject to" | "st" | "s.t." => {
                section = Section::Constraints;
                continue;
            }
            "binary" | "binaries" | "bin" => {
                section = Section::Binary;
                continue;
            }
            "end" => {
                section = Section::End;
                continue;
            }
            _ => {}
        }
        let body = match line.split_once(':') {
            Some((_, rest)) => rest.trim(),
            None => line,
        };
        match section {
            Section::Objective => {
                objective_terms = parse_terms(body).map_err(|m| err(line_no, m))?;
            }
            Section::Constraints => {
                let (relation, split) = ["<=", ">=", "="]
                    .iter()
                    .find_map(|op| body.find(op).map(|pos| (*op, pos)))
                    .ok_or_else(|| err(line_no, "constraint without relation".into()))?;
                let relation = match relation {
                    "<=" => Relation::Le,
                    ">=" => Relation::Ge,
                    _ => Relation::Eq,
                };
                let lhs = &body[..split];
                let rhs_text = body[split..].trim_start_matches(['<', '>', '=']).trim();
                let rhs: f64 = rhs_text
                    .parse()
                    .map_err(|_| err(line_no, format!("bad right-hand side `{rhs_text}`")))?;
                let terms = parse_terms(lhs).map_err(|m| err(line_no, m))?;
                rows.push((terms, relation, rhs));
            }
            Section::Binary => {
                for name in body.split_whitespace() {
                    binaries.push(parse_var(name).map_err(|m| err(line_no, m))?);
                }
            }
            Section::None | Section::End => {
                return Err(err(line_no, format!("unexpected text `{line}`")));
            }
        }
    }

    let num_vars = binaries
        .iter()
        .chain(objective_terms.iter().map(|(v, _)| v))
        .chain(rows.iter().flat_map(|(t, _, _)| t.iter().map(|(v, _)| v)))
        .map(|&v| v + 1)
        .max()
        .unwrap_or(0);
    let dense = |terms: &[(usize, f64)]| {
        let mut row = vec![0.0; num_vars];
        for &(v, a) in terms {
            row[v] += a;
        }
        row
    };
    let mut program = BinaryProgram::new(dense(&objective_terms));
    for (terms, relation, rhs) in rows {
        program.add_constraint(dense(&terms), relation, rhs)?;
    }
    Ok(program)
}

fn parse_var(name: &str) -> std::result::Result<usize, String> {
    name.strip_prefix('x')
        .and_then(|d| d.parse::<usize>().ok())
        .filter(|&i| i >= 1)
        .map(|i| i - 1)
        .ok_or_else(|| format!("bad variable name `{name}`"))
}

fn parse_terms(text: &str) -> std::result::Result<Vec<(usize, f64)>, String> {
    let mut terms = Vec::new();
    let mut sign = 1.0;
    let mut coefficient: Option<f64> = None;
    for token in text.split_whitespace() {
        match token {
            "+" => sign = 1.0,
            "-" => sign = -1.0,
            t if t.starts_with('x') => {
                let var = parse_var(t)?;
                terms.push((var, sign * coefficient.take().unwrap_or(1.0)));
                sign = 1.0;
            }
            t => {
                let c: f64 = t.parse().map_err(|_| format!("bad coefficient `{t}`"))?;
                coefficient = Some(c);
            }
        }
    }
    if coefficient.is_some() && terms.is_empty() {
        // A bare constant such as `obj: 0`.
        return Ok(Vec::new());
    }
    Ok(terms)
}
