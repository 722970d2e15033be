//! The natural LP relaxation, the bounded relaxation used during rounding,
//! supporting graphs, and executable checks of the vertex structure.
//!
//! The bounded relaxation is always materialized in reduced form: only free
//! machines (residual capacity > 0) and free jobs get variables, and the
//! fixed part of each machine moves into the right-hand sides.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact_lp::{self, LpError, Sense};
use crate::model::Instance;
use crate::scalar::{format_exact, rational_from_u64};
use crate::{BasicSolution, LinearProgram, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelaxError {
    #[error("invalid rounding state: {0}")]
    InvalidState(String),
    #[error("bounded relaxation infeasible; state:\n{state}")]
    BlprInfeasible { state: String },
    #[error("natural relaxation reported {0} on a valid instance")]
    LprFailed(LpError),
}

/// Instance plus budgets `b` and the fixed partial assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlprState {
    instance: Instance,
    budgets: Vec<Rational>,
    fixed: Vec<Option<usize>>,
}

impl BlprState {
    /// Fresh state with nothing fixed.
    pub fn new(instance: Instance, budgets: Vec<Rational>) -> Result<Self, RelaxError> {
        let pairs: [(usize, usize); 0] = [];
        Self::with_fixed(instance, budgets, pairs)
    }

    /// State with the given `(machine, job)` pairs fixed.
    pub fn with_fixed(
        instance: Instance,
        budgets: Vec<Rational>,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, RelaxError> {
        if budgets.len() != instance.machines() {
            return Err(RelaxError::InvalidState(format!(
                "{} budgets for {} machines",
                budgets.len(),
                instance.machines()
            )));
        }
        let mut fixed = vec![None; instance.jobs()];
        for (i, j) in pairs {
            if i >= instance.machines() || j >= instance.jobs() {
                return Err(RelaxError::InvalidState(format!(
                    "pair ({}, {}) out of range",
                    i + 1,
                    j + 1
                )));
            }
            if fixed[j].replace(i).is_some() {
                return Err(RelaxError::InvalidState(format!(
                    "job {} fixed twice",
                    j + 1
                )));
            }
        }
        let state = Self {
            instance,
            budgets,
            fixed,
        };
        state.check_invariants()?;
        Ok(state)
    }

    pub fn check_invariants(&self) -> Result<(), RelaxError> {
        let mut free_slots = 0u64;
        for i in 0..self.instance.machines() {
            if self.fixed_count(i) > self.instance.capacity(i) {
                return Err(RelaxError::InvalidState(format!(
                    "machine {} holds {} fixed jobs over capacity {}",
                    i + 1,
                    self.fixed_count(i),
                    self.instance.capacity(i)
                )));
            }
            if rational_from_u64(self.fixed_load(i)) > self.budgets[i] {
                return Err(RelaxError::InvalidState(format!(
                    "machine {} fixed load {} exceeds budget {}",
                    i + 1,
                    self.fixed_load(i),
                    format_exact(&self.budgets[i])
                )));
            }
            free_slots += self.residual(i);
        }
        if free_slots < self.m_star() as u64 {
            return Err(RelaxError::InvalidState(format!(
                "{} free jobs but only {free_slots} free slots",
                self.m_star()
            )));
        }
        Ok(())
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn budgets(&self) -> &[Rational] {
        &self.budgets
    }

    pub fn budget(&self, machine: usize) -> &Rational {
        &self.budgets[machine]
    }

    pub fn fixed_machine(&self, job: usize) -> Option<usize> {
        self.fixed[job]
    }

    /// The set `F`, ordered by (machine, job).
    pub fn fixed_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<_> = self
            .fixed
            .iter()
            .enumerate()
            .filter_map(|(j, m)| m.map(|i| (i, j)))
            .collect();
        pairs.sort_unstable();
        pairs
    }

    /// `c_i`
    pub fn fixed_count(&self, machine: usize) -> u64 {
        self.fixed.iter().filter(|m| **m == Some(machine)).count() as u64
    }

    pub fn fixed_load(&self, machine: usize) -> u64 {
        self.fixed
            .iter()
            .enumerate()
            .filter(|(_, m)| **m == Some(machine))
            .map(|(j, _)| self.instance.length(j))
            .sum()
    }

    /// `m_i - c_i`
    pub fn residual(&self, machine: usize) -> u64 {
        self.instance.capacity(machine) - self.fixed_count(machine)
    }

    pub fn free_jobs(&self) -> Vec<usize> {
        (0..self.instance.jobs())
            .filter(|&j| self.fixed[j].is_none())
            .collect()
    }

    pub fn free_machines(&self) -> Vec<usize> {
        (0..self.instance.machines())
            .filter(|&i| self.residual(i) > 0)
            .collect()
    }

    /// `M*`
    pub fn m_star(&self) -> usize {
        self.fixed.iter().filter(|m| m.is_none()).count()
    }

    /// `k*`
    pub fn k_star(&self) -> usize {
        self.free_machines().len()
    }

    pub fn is_free_pair(&self, machine: usize, job: usize) -> bool {
        self.fixed[job].is_none() && self.residual(machine) > 0
    }

    /// Complete assignment once no job is free.
    pub fn assignment(&self) -> Option<Vec<usize>> {
        self.fixed.iter().copied().collect()
    }

    pub(crate) fn fix(&mut self, machine: usize, job: usize) {
        debug_assert!(self.fixed[job].is_none());
        self.fixed[job] = Some(machine);
    }

    pub(crate) fn raise_budget(&mut self, machine: usize, delta: &Rational) {
        self.budgets[machine] += delta;
    }

    /// Text snapshot for diagnostics: the instance, then `b` and `F`.
    pub fn dump(&self) -> String {
        let budgets: Vec<String> = self.budgets.iter().map(format_exact).collect();
        let pairs: String = self
            .fixed_pairs()
            .iter()
            .map(|(i, j)| format!("({},{})", i + 1, j + 1))
            .collect();
        format!(
            "{}b {}\nF {}\n",
            self.instance.to_text(),
            budgets.join(" "),
            pairs
        )
    }
}

/// Sparse fractional assignment; absent pairs are zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FractionalAssignment {
    entries: BTreeMap<(usize, usize), Rational>,
}

impl FractionalAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, machine: usize, job: usize) -> Rational {
        self.entries
            .get(&(machine, job))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, machine: usize, job: usize, value: Rational) {
        if value.is_zero() {
            self.entries.remove(&(machine, job));
        } else {
            self.entries.insert((machine, job), value);
        }
    }

    /// Non-zero entries in (machine, job) order.
    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.entries.iter()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn job_total(&self, job: usize) -> Rational {
        self.entries
            .iter()
            .filter(|((_, j), _)| *j == job)
            .map(|(_, v)| v.clone())
            .sum()
    }

    pub fn machine_count(&self, machine: usize) -> Rational {
        self.entries
            .range((machine, 0)..(machine + 1, 0))
            .map(|(_, v)| v.clone())
            .sum()
    }

    /// Fractional processing time on `machine`, excluding fixed jobs.
    pub fn machine_load(&self, machine: usize, instance: &Instance) -> Rational {
        self.entries
            .range((machine, 0)..(machine + 1, 0))
            .map(|((_, j), v)| v * rational_from_u64(instance.length(*j)))
            .sum()
    }

    /// Every violated relaxation constraint, empty when `self` is feasible
    /// for `state`.
    pub fn violations(&self, state: &BlprState) -> Vec<String> {
        let mut out = Vec::new();
        let inst = state.instance();
        for (&(i, j), v) in &self.entries {
            if !state.is_free_pair(i, j) {
                out.push(format!("entry ({},{}) is not a free pair", i + 1, j + 1));
            }
            if v.is_negative() || *v > Rational::one() {
                out.push(format!("entry ({},{}) = {} outside [0,1]", i + 1, j + 1, v));
            }
        }
        for j in state.free_jobs() {
            let total = self.job_total(j);
            if !total.is_one() {
                out.push(format!("job {} assigned {} in total", j + 1, total));
            }
        }
        for i in state.free_machines() {
            let count = self.machine_count(i);
            if count > rational_from_u64(state.residual(i)) {
                out.push(format!("machine {} count {} over residual", i + 1, count));
            }
            let load = self.machine_load(i, inst) + rational_from_u64(state.fixed_load(i));
            if load > *state.budget(i) {
                out.push(format!("machine {} load {} over budget", i + 1, load));
            }
        }
        out
    }
}

/// Bipartite graph of free machines and free jobs joined where `x > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportingGraph {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl SupportingGraph {
    pub fn job_degree(&self, job: usize) -> usize {
        self.edges.iter().filter(|(_, j)| *j == job).count()
    }

    pub fn machine_degree(&self, machine: usize) -> usize {
        self.edges.iter().filter(|(i, _)| *i == machine).count()
    }
}

/// Outcome of the per-iteration structural checks on a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub edges: usize,
    pub m_star: usize,
    pub k_star: usize,
    pub ones: usize,
    /// Every free job has an edge.
    pub jobs_covered: bool,
    /// `|E| <= M* + 2k* - 1` (vacuous when `M* = 0`).
    pub edge_bound_ok: bool,
    /// `ones >= M* - 2k* + 1`, checked only when `M* >= 2k*`.
    pub ones_bound_ok: Option<bool>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.jobs_covered && self.edge_bound_ok && self.ones_bound_ok != Some(false)
    }

    /// `M* + 2k* - 1 - |E|`, or `None` when there is nothing to bound.
    pub fn edge_slack(&self) -> Option<i64> {
        (self.m_star > 0)
            .then(|| (self.m_star + 2 * self.k_star) as i64 - 1 - self.edges as i64)
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = |ok: bool| if ok { "ok" } else { "FAIL" };
        write!(
            f,
            "edges={} m_star={} k_star={} ones={} cover={} edge_bound={} ones_bound={}",
            self.edges,
            self.m_star,
            self.k_star,
            self.ones,
            verdict(self.jobs_covered),
            verdict(self.edge_bound_ok),
            self.ones_bound_ok.map_or("n/a", verdict)
        )
    }
}

fn lpr_var(instance: &Instance, machine: usize, job: usize) -> usize {
    machine * instance.jobs() + job
}

/// Natural relaxation: variables `x_ij` (index `i·M + j`) followed by the
/// makespan variable `c`; `k` load rows, `k` capacity rows, `M` assignment
/// rows; minimize `c`.
pub fn build_lpr(instance: &Instance) -> LinearProgram {
    let (k, m) = (instance.machines(), instance.jobs());
    let c = k * m;
    let mut lp = LinearProgram::new(k * m + 1);
    for i in 0..k {
        let terms = (0..m)
            .map(|j| (lpr_var(instance, i, j), rational_from_u64(instance.length(j))))
            .chain(std::iter::once((c, -Rational::one())));
        lp.add_row(terms, Sense::Le, Rational::zero())
            .expect("indices in range");
    }
    for i in 0..k {
        let terms = (0..m).map(|j| (lpr_var(instance, i, j), Rational::one()));
        lp.add_row(terms, Sense::Le, rational_from_u64(instance.capacity(i)))
            .expect("indices in range");
    }
    for j in 0..m {
        let terms = (0..k).map(|i| (lpr_var(instance, i, j), Rational::one()));
        lp.add_row(terms, Sense::Eq, Rational::one())
            .expect("indices in range");
    }
    lp.set_objective([(c, Rational::one())])
        .expect("index in range");
    lp
}

#[derive(Debug, Clone)]
pub struct LprSolution {
    pub c_star: Rational,
    /// Fractional load `y_i` of each machine at the optimum.
    pub loads: Vec<Rational>,
    pub x: FractionalAssignment,
    pub vertex: BasicSolution,
}

pub fn solve_lpr(instance: &Instance) -> Result<LprSolution, RelaxError> {
    let lp = build_lpr(instance);
    let vertex = exact_lp::solve_minimize(&lp).map_err(RelaxError::LprFailed)?;
    let mut x = FractionalAssignment::new();
    for i in 0..instance.machines() {
        for j in 0..instance.jobs() {
            x.set(i, j, vertex.values[lpr_var(instance, i, j)].clone());
        }
    }
    let loads = (0..instance.machines())
        .map(|i| x.machine_load(i, instance))
        .collect();
    Ok(LprSolution {
        c_star: vertex.values[instance.machines() * instance.jobs()].clone(),
        loads,
        x,
        vertex,
    })
}

/// Reduced bounded relaxation plus the pair behind each variable.
#[derive(Debug, Clone)]
pub struct BlprProgram {
    pub lp: LinearProgram,
    /// Variable `v` is `x_{pairs[v]}`, ordered by (machine, job).
    pub pairs: Vec<(usize, usize)>,
}

impl BlprProgram {
    pub fn assignment(&self, values: &[Rational]) -> FractionalAssignment {
        let mut x = FractionalAssignment::new();
        for (&(i, j), v) in self.pairs.iter().zip(values) {
            x.set(i, j, v.clone());
        }
        x
    }
}

/// Rows: one load row per free machine (`rhs = b_i - fixed_load_i`), one
/// capacity row per free machine (`rhs = m_i - c_i`), one assignment
/// equality per free job. No objective. With no free job the program is
/// empty.
pub fn build_blpr(state: &BlprState) -> BlprProgram {
    let jobs = state.free_jobs();
    if jobs.is_empty() {
        return BlprProgram {
            lp: LinearProgram::new(0),
            pairs: Vec::new(),
        };
    }
    let machines = state.free_machines();
    let inst = state.instance();
    let pairs: Vec<(usize, usize)> = machines
        .iter()
        .flat_map(|&i| jobs.iter().map(move |&j| (i, j)))
        .collect();
    let var = |mi: usize, ji: usize| mi * jobs.len() + ji;
    let mut lp = LinearProgram::new(pairs.len());
    for (mi, &i) in machines.iter().enumerate() {
        let terms = jobs
            .iter()
            .enumerate()
            .map(|(ji, &j)| (var(mi, ji), rational_from_u64(inst.length(j))));
        let rhs = state.budget(i) - rational_from_u64(state.fixed_load(i));
        lp.add_row(terms, Sense::Le, rhs).expect("indices in range");
    }
    for (mi, &i) in machines.iter().enumerate() {
        let terms = (0..jobs.len()).map(|ji| (var(mi, ji), Rational::one()));
        lp.add_row(terms, Sense::Le, rational_from_u64(state.residual(i)))
            .expect("indices in range");
    }
    for ji in 0..jobs.len() {
        let terms = (0..machines.len()).map(|mi| (var(mi, ji), Rational::one()));
        lp.add_row(terms, Sense::Eq, Rational::one())
            .expect("indices in range");
    }
    BlprProgram { lp, pairs }
}

/// A vertex of the reduced bounded relaxation together with its program.
pub fn solve_blpr(state: &BlprState) -> Result<(BlprProgram, BasicSolution), RelaxError> {
    let program = build_blpr(state);
    match exact_lp::solve_feasible(&program.lp) {
        Ok(vertex) => Ok((program, vertex)),
        Err(_) => Err(RelaxError::BlprInfeasible {
            state: state.dump(),
        }),
    }
}

pub fn solve_blpr_basic(state: &BlprState) -> Result<FractionalAssignment, RelaxError> {
    let (program, vertex) = solve_blpr(state)?;
    Ok(program.assignment(&vertex.values))
}

pub fn supporting_graph(state: &BlprState, x: &FractionalAssignment) -> SupportingGraph {
    let edges = x
        .iter()
        .filter(|(&(i, j), v)| v.is_positive() && state.is_free_pair(i, j))
        .map(|(&pair, _)| pair)
        .collect();
    SupportingGraph {
        left: state.free_machines(),
        right: state.free_jobs(),
        edges,
    }
}

pub fn audit_structure(state: &BlprState, x: &FractionalAssignment) -> AuditReport {
    let graph = supporting_graph(state, x);
    let m_star = graph.right.len();
    let k_star = graph.left.len();
    let ones = x
        .iter()
        .filter(|(&(i, j), v)| v.is_one() && state.is_free_pair(i, j))
        .count();
    let mut degree = vec![0usize; state.instance().jobs()];
    for &(_, j) in &graph.edges {
        degree[j] += 1;
    }
    let jobs_covered = graph.right.iter().all(|&j| degree[j] > 0);
    let edge_bound_ok = m_star == 0 || graph.edges.len() < m_star + 2 * k_star;
    let ones_bound_ok = (m_star > 0 && m_star >= 2 * k_star).then(|| ones + 2 * k_star > m_star);
    AuditReport {
        edges: graph.edges.len(),
        m_star,
        k_star,
        ones,
        jobs_covered,
        edge_bound_ok,
        ones_bound_ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_lp::check_basic;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn z(n: i64) -> Rational {
        q(n, 1)
    }

    fn inst(caps: &[u64], lens: &[u64]) -> Instance {
        Instance::new(caps.to_vec(), lens.to_vec()).unwrap()
    }

    fn half_matrix() -> FractionalAssignment {
        let mut x = FractionalAssignment::new();
        for i in 0..2 {
            for j in 0..2 {
                x.set(i, j, q(1, 2));
            }
        }
        x
    }

    #[test]
    fn lpr_shape() {
        let lp = build_lpr(&inst(&[1, 1], &[3, 1]));
        assert_eq!(lp.num_vars(), 5);
        assert_eq!(lp.rows().len(), 6);
    }

    #[test]
    fn lpr_values() {
        let a = solve_lpr(&inst(&[1, 1], &[3, 1])).unwrap();
        assert_eq!(a.c_star, z(2));
        assert_eq!(a.loads, vec![z(2), z(2)]);

        let b = solve_lpr(&inst(&[3], &[1, 2, 3])).unwrap();
        assert_eq!(b.c_star, z(6));
        assert_eq!(b.loads, vec![z(6)]);

        let c = solve_lpr(&inst(&[2, 2], &[4, 3, 2, 1])).unwrap();
        assert_eq!(c.c_star, z(5));
        assert!(check_basic(&build_lpr(&inst(&[2, 2], &[4, 3, 2, 1])), &c.vertex.values));

        assert_eq!(solve_lpr(&inst(&[1], &[7])).unwrap().c_star, z(7));
        assert_eq!(solve_lpr(&inst(&[2], &[])).unwrap().c_star, z(0));
    }

    #[test]
    fn lpr_loads_below_optimum() {
        let a = solve_lpr(&inst(&[2, 1, 3], &[5, 0, 7, 7, 2])).unwrap();
        assert!(a.loads.iter().all(|y| *y <= a.c_star));
    }

    #[test]
    fn blpr_without_fixing_matches_lpr_shape() {
        let i = inst(&[1, 1], &[3, 1]);
        let state = BlprState::new(i.clone(), vec![z(2), z(2)]).unwrap();
        let p = build_blpr(&state);
        assert_eq!(p.lp.num_vars(), 4);
        assert_eq!(p.lp.rows().len(), 6);
        assert_eq!(p.lp.rows()[0].rhs, z(2));
        assert!(p.lp.objective().is_empty());
    }

    #[test]
    fn blpr_fully_fixed_is_empty() {
        let state =
            BlprState::with_fixed(inst(&[1, 1], &[3, 1]), vec![z(3), z(1)], [(0, 0), (1, 1)])
                .unwrap();
        let p = build_blpr(&state);
        assert_eq!(p.lp.num_vars(), 0);
        assert!(p.lp.rows().is_empty());
        assert_eq!(solve_blpr_basic(&state).unwrap().support_len(), 0);
    }

    #[test]
    fn blpr_single_pair_forced() {
        let state =
            BlprState::with_fixed(inst(&[2, 1], &[3, 1]), vec![z(4), z(1)], [(1, 1)]).unwrap();
        let p = build_blpr(&state);
        assert_eq!(p.pairs, vec![(0, 0)]);
        let x = solve_blpr_basic(&state).unwrap();
        assert_eq!(x.get(0, 0), z(1));
    }

    #[test]
    fn blpr_half_matrix_is_unique_point() {
        let state = BlprState::new(inst(&[1, 1], &[3, 1]), vec![z(2), z(2)]).unwrap();
        let x = solve_blpr_basic(&state).unwrap();
        assert_eq!(x, half_matrix());
        assert!(x.violations(&state).is_empty());
    }

    #[test]
    fn blpr_zero_budget_infeasible() {
        let state = BlprState::new(inst(&[1, 1], &[3, 1]), vec![z(0), z(0)]).unwrap();
        match solve_blpr_basic(&state) {
            Err(RelaxError::BlprInfeasible { state }) => assert!(state.contains("b 0 0")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn state_invariants_enforced() {
        let i = inst(&[1, 1], &[3, 1]);
        assert!(BlprState::with_fixed(i.clone(), vec![z(9), z(9)], [(0, 0), (0, 1)]).is_err());
        assert!(BlprState::with_fixed(i.clone(), vec![z(2), z(9)], [(0, 0)]).is_err());
        assert!(BlprState::with_fixed(i.clone(), vec![z(9), z(9)], [(0, 0), (1, 0)]).is_err());
        assert!(BlprState::new(i, vec![z(1)]).is_err());
    }

    #[test]
    fn derived_quantities() {
        let state =
            BlprState::with_fixed(inst(&[2, 1, 3], &[4, 5, 6, 7]), vec![z(20); 3], [(1, 2), (0, 0)])
                .unwrap();
        assert_eq!(state.fixed_count(0), 1);
        assert_eq!(state.fixed_load(1), 6);
        assert_eq!(state.free_machines(), vec![0, 2]);
        assert_eq!(state.free_jobs(), vec![1, 3]);
        assert_eq!((state.m_star(), state.k_star()), (2, 2));
        assert_eq!(state.fixed_pairs(), vec![(0, 0), (1, 2)]);
    }

    #[test]
    fn graph_of_half_matrix() {
        let state = BlprState::new(inst(&[1, 1], &[3, 1]), vec![z(2), z(2)]).unwrap();
        let g = supporting_graph(&state, &half_matrix());
        assert_eq!(g.edges, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
        assert_eq!(g.job_degree(0), 2);

        let mut integral = FractionalAssignment::new();
        integral.set(0, 0, z(1));
        integral.set(1, 1, z(1));
        let state = BlprState::new(inst(&[1, 1], &[3, 1]), vec![z(3), z(3)]).unwrap();
        assert_eq!(supporting_graph(&state, &integral).edges.len(), state.m_star());

        let done =
            BlprState::with_fixed(inst(&[1, 1], &[3, 1]), vec![z(3), z(3)], [(0, 0), (1, 1)])
                .unwrap();
        assert!(supporting_graph(&done, &FractionalAssignment::new())
            .edges
            .is_empty());
    }

    #[test]
    fn audits() {
        let state = BlprState::new(inst(&[3], &[1, 2, 3]), vec![z(6)]).unwrap();
        let x = solve_blpr_basic(&state).unwrap();
        let r = audit_structure(&state, &x);
        assert_eq!((r.m_star, r.k_star, r.ones), (3, 1, 3));
        assert_eq!(r.ones_bound_ok, Some(true));
        assert!(r.passed());

        let state = BlprState::new(inst(&[1, 1], &[3, 1]), vec![z(2), z(2)]).unwrap();
        let r = audit_structure(&state, &half_matrix());
        assert_eq!((r.edges, r.m_star, r.k_star), (4, 2, 2));
        assert!(r.edge_bound_ok);
        assert_eq!(r.ones_bound_ok, None);
        assert_eq!(r.edge_slack(), Some(1));
        assert_eq!(
            r.to_string(),
            "edges=4 m_star=2 k_star=2 ones=0 cover=ok edge_bound=ok ones_bound=n/a"
        );

        let empty = BlprState::new(inst(&[1], &[]), vec![z(0)]).unwrap();
        assert!(audit_structure(&empty, &FractionalAssignment::new()).passed());
    }

    #[test]
    fn blpr_vertex_is_basic() {
        let state = BlprState::with_fixed(
            inst(&[2, 3, 1], &[5, 4, 4, 2, 9, 1]),
            vec![z(9), z(12), z(12)],
            [(2, 4)],
        )
        .unwrap();
        let (p, v) = solve_blpr(&state).unwrap();
        assert!(check_basic(&p.lp, &v.values));
        let x = p.assignment(&v.values);
        assert!(x.violations(&state).is_empty());
        assert!(audit_structure(&state, &x).passed());
    }
}
