//! Iterative rounding engine.
//!
//! Starting from the optimal fractional loads `y` as budgets, each round
//! solves the bounded relaxation for a vertex `x` and applies one of three
//! transitions:
//!
//! * **F** (`M* >= 2k*`): fix every free pair with `x = 1`; budgets stay.
//! * **G** (`M* < 2k*`, some free machine has one slot left): put the
//!   longest free job on that machine and raise its budget by the length.
//! * **H** (otherwise): hand out the remaining jobs, at most two per
//!   machine, raising each budget by what it received.
//!
//! A machine's budget is raised at most once, because G and H both close
//! the machine (G fills its last slot, H finishes the run). That is what
//! bounds the final makespan by `c* + 2·t_max`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact_lp::check_basic;
use crate::model::{makespan, verify_schedule, Instance, Schedule};
use crate::oracles::{lower_bounds, LowerBounds};
use crate::relaxations::{
    audit_structure, solve_blpr, solve_lpr, AuditReport, BlprState, FractionalAssignment,
    RelaxError,
};
use crate::scalar::{format_decimal, format_exact, rational_from_u64};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransitionError {
    #[error("transition precondition violated: {0}")]
    Precondition(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IraError {
    #[error("internal invariant violation: {reason}\nstate:\n{state}")]
    InternalInvariantViolation { reason: String, state: String },
    #[error(transparent)]
    Relaxation(#[from] RelaxError),
}

fn violation(reason: impl Into<String>, state: &BlprState) -> IraError {
    IraError::InternalInvariantViolation {
        reason: reason.into(),
        state: state.dump(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransitionKind {
    F,
    G,
    H,
}

impl fmt::Display for TransitionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TransitionKind::F => "F",
            TransitionKind::G => "G",
            TransitionKind::H => "H",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionRecord {
    pub iteration: usize,
    pub kind: TransitionKind,
    pub pairs_fixed: Vec<(usize, usize)>,
    /// Budget increase per machine; empty for F.
    pub b_deltas: BTreeMap<usize, Rational>,
}

impl fmt::Display for TransitionRecord {
    /// `iter=<n> kind=<F|G|H> fixed=(i,j)... db=(i:+delta)...`, 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "iter={} kind={} fixed=", self.iteration, self.kind)?;
        for (i, j) in &self.pairs_fixed {
            write!(f, "({},{})", i + 1, j + 1)?;
        }
        f.write_str(" db=")?;
        for (i, d) in &self.b_deltas {
            write!(f, "({}:+{})", i + 1, format_exact(d))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    /// The makespan `A` of the returned schedule.
    pub makespan: u64,
    pub lower_bounds: LowerBounds,
    pub final_b: Vec<Rational>,
    /// How many times each machine's budget was raised.
    pub budget_raises: Vec<usize>,
    /// Final load of every machine is within its final budget.
    pub loads_within_b: bool,
    /// `A <= c* + 2·t_max`
    pub b_increase_bound_ok: bool,
    /// `A <= 3·max(lower bounds)`
    pub ratio_ok: bool,
}

impl Certificate {
    /// All checks hold, including at most one budget raise per machine.
    pub fn holds(&self) -> bool {
        self.loads_within_b
            && self.b_increase_bound_ok
            && self.ratio_ok
            && self.budget_raises.iter().all(|&r| r <= 1)
    }

    /// Certificate block as printed by `solve --certificate`.
    pub fn to_text(&self) -> String {
        let lb = &self.lower_bounds;
        let both = |v: &Rational| format!("{} ({})", format_exact(v), format_decimal(v, 6));
        let mut out = String::new();
        out.push_str(&format!("lower_bound lp {}\n", both(&lb.lp)));
        out.push_str(&format!("lower_bound longest_job {}\n", lb.longest_job));
        out.push_str(&format!("lower_bound average {}\n", both(&lb.average)));
        out.push_str(&format!("lower_bound best {}\n", both(&lb.best())));
        let b: Vec<String> = self.final_b.iter().map(format_exact).collect();
        out.push_str(&format!("final_b {}\n", b.join(" ")));
        let raises: Vec<String> = self.budget_raises.iter().map(usize::to_string).collect();
        out.push_str(&format!("b_raises {}\n", raises.join(" ")));
        let bound = &lb.lp + rational_from_u64(2 * lb.longest_job);
        out.push_str(&format!(
            "b_increase_bound {} <= {} {}\n",
            self.makespan,
            both(&bound),
            self.b_increase_bound_ok
        ));
        out.push_str(&format!("loads_within_b {}\n", self.loads_within_b));
        let ratio = if lb.best().is_zero() {
            "n/a".to_string()
        } else {
            format_decimal(&(rational_from_u64(self.makespan) / lb.best()), 6)
        };
        out.push_str(&format!("ratio_vs_best_bound {ratio}\n"));
        out.push_str(&format!("ratio_ok {}\n", self.ratio_ok));
        out
    }
}

/// One audited rounding iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationAudit {
    pub iteration: usize,
    pub report: AuditReport,
    /// Independent rank check of the vertex the iteration used.
    pub vertex_basic: bool,
}

impl IterationAudit {
    pub fn passed(&self) -> bool {
        self.vertex_basic && self.report.passed()
    }
}

impl fmt::Display for IterationAudit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "audit iter={} {} basic={}",
            self.iteration,
            self.report,
            if self.vertex_basic { "ok" } else { "FAIL" }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundingResult {
    pub schedule: Schedule,
    pub c_star: Rational,
    pub initial_y: Vec<Rational>,
    pub final_b: Vec<Rational>,
    pub trace: Vec<TransitionRecord>,
    pub certificate: Certificate,
    pub audits: Vec<IterationAudit>,
}

impl RoundingResult {
    pub fn trace_text(&self) -> String {
        self.trace.iter().map(|r| format!("{r}\n")).collect()
    }
}

/// How often the structural audit runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuditMode {
    Every,
    /// First iteration and then every n-th.
    Sampled(usize),
    Off,
}

impl AuditMode {
    fn runs_at(self, iteration: usize) -> bool {
        match self {
            AuditMode::Every => true,
            AuditMode::Sampled(n) => n > 0 && (iteration - 1).is_multiple_of(n),
            AuditMode::Off => false,
        }
    }
}

impl Default for AuditMode {
    fn default() -> Self {
        if cfg!(debug_assertions) {
            AuditMode::Every
        } else {
            AuditMode::Sampled(8)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct IraOptions {
    pub audit: AuditMode,
}

/// Free pairs with `x` exactly 1, in (machine, job) order.
pub fn find_integral_pairs(state: &BlprState, x: &FractionalAssignment) -> Vec<(usize, usize)> {
    x.iter()
        .filter(|(&(i, j), v)| v.is_one() && state.is_free_pair(i, j))
        .map(|(&pair, _)| pair)
        .collect()
}

fn apply_f(
    state: &mut BlprState,
    pairs: &[(usize, usize)],
    iteration: usize,
) -> Result<TransitionRecord, TransitionError> {
    if pairs.is_empty() {
        return Err(TransitionError::Precondition("no pairs to fix".into()));
    }
    let mut per_machine: BTreeMap<usize, u64> = BTreeMap::new();
    let mut seen = vec![false; state.instance().jobs()];
    for &(i, j) in pairs {
        if i >= state.instance().machines() || j >= state.instance().jobs() {
            return Err(TransitionError::Precondition(format!(
                "pair ({},{}) out of range",
                i + 1,
                j + 1
            )));
        }
        if !state.is_free_pair(i, j) || std::mem::replace(&mut seen[j], true) {
            return Err(TransitionError::Precondition(format!(
                "pair ({},{}) is not free or repeats a job",
                i + 1,
                j + 1
            )));
        }
        *per_machine.entry(i).or_default() += 1;
    }
    if let Some((&i, _)) = per_machine.iter().find(|(&i, &n)| n > state.residual(i)) {
        return Err(TransitionError::Precondition(format!(
            "machine {} cannot take {} more jobs",
            i + 1,
            per_machine[&i]
        )));
    }
    let mut next = state.clone();
    for &(i, j) in pairs {
        next.fix(i, j);
    }
    next.check_invariants()
        .map_err(|e| TransitionError::Precondition(e.to_string()))?;
    *state = next;
    let mut pairs_fixed = pairs.to_vec();
    pairs_fixed.sort_unstable();
    Ok(TransitionRecord {
        iteration,
        kind: TransitionKind::F,
        pairs_fixed,
        b_deltas: BTreeMap::new(),
    })
}

/// Fix the given pairs, leaving budgets unchanged. Each pair must be free
/// and have `x = 1` in a vertex of the current relaxation; the caller
/// vouches for the latter.
pub fn f_transition(
    state: &BlprState,
    pairs: &[(usize, usize)],
) -> Result<BlprState, TransitionError> {
    let mut next = state.clone();
    apply_f(&mut next, pairs, 0)?;
    Ok(next)
}

/// The `(p, q)` a G step would use: the lowest-index free machine with
/// exactly one slot left, and the longest free job (lowest index on ties).
pub fn g_choice(state: &BlprState) -> Result<(usize, usize), TransitionError> {
    let (m_star, k_star) = (state.m_star(), state.k_star());
    if m_star == 0 || m_star >= 2 * k_star {
        return Err(TransitionError::Precondition(format!(
            "G needs 0 < M* < 2k*, got M*={m_star} k*={k_star}"
        )));
    }
    let p = state
        .free_machines()
        .into_iter()
        .find(|&i| state.residual(i) == 1)
        .ok_or_else(|| {
            TransitionError::Precondition("no free machine with residual capacity 1".into())
        })?;
    let lengths = state.instance().lengths();
    let q = state
        .free_jobs()
        .into_iter()
        .min_by_key(|&j| (std::cmp::Reverse(lengths[j]), j))
        .expect("M* > 0");
    Ok((p, q))
}

/// Result of the G exchange on a fractional solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exchange {
    pub machine: usize,
    pub job: usize,
    /// Solution of the current relaxation with `x[machine][job] = 1`.
    pub x: FractionalAssignment,
}

/// Move job `q` wholly onto machine `p`, shipping an equal fraction of
/// other jobs from `p` back to the machines that gave up `q`.
///
/// While some `p' != p` holds part of `q`: if `p` holds part of some
/// other job `q'`, swap `α = min(x[p'][q], x[p][q'])` of `q` against `q'`
/// between the two machines; otherwise move all of `x[p'][q]` to `p`.
/// Lowest indices are taken first. Column sums are preserved; every
/// machine other than `p` keeps its count and its load cannot grow since
/// `q` is a longest free job.
pub fn g_exchange(
    state: &BlprState,
    x: &FractionalAssignment,
) -> Result<Exchange, TransitionError> {
    let (p, q) = g_choice(state)?;
    let problems = x.violations(state);
    if !problems.is_empty() {
        return Err(TransitionError::Precondition(format!(
            "x is not feasible: {}",
            problems.join("; ")
        )));
    }
    let mut x = x.clone();
    loop {
        let donor = x
            .iter()
            .find(|(&(i, j), v)| j == q && i != p && v.is_positive())
            .map(|(&(i, _), _)| i);
        let Some(donor) = donor else { break };
        let other = x
            .iter()
            .find(|(&(i, j), v)| i == p && j != q && v.is_positive())
            .map(|(&(_, j), _)| j);
        match other {
            Some(other) => {
                let alpha = x.get(donor, q).min(x.get(p, other));
                x.set(donor, q, x.get(donor, q) - &alpha);
                x.set(p, q, x.get(p, q) + &alpha);
                x.set(p, other, x.get(p, other) - &alpha);
                x.set(donor, other, x.get(donor, other) + &alpha);
            }
            None => {
                x.set(p, q, x.get(p, q) + x.get(donor, q));
                x.set(donor, q, Rational::zero());
            }
        }
    }
    Ok(Exchange {
        machine: p,
        job: q,
        x,
    })
}

fn apply_g(
    state: &mut BlprState,
    x: &FractionalAssignment,
    iteration: usize,
) -> Result<TransitionRecord, TransitionError> {
    let exchange = g_exchange(state, x)?;
    let (p, q) = (exchange.machine, exchange.job);
    let delta = rational_from_u64(state.instance().length(q));
    let mut next = state.clone();
    next.fix(p, q);
    next.raise_budget(p, &delta);
    next.check_invariants()
        .map_err(|e| TransitionError::Precondition(e.to_string()))?;
    debug_assert!(
        {
            let mut rest = exchange.x.clone();
            rest.set(p, q, Rational::zero());
            rest.violations(&next).is_empty()
        },
        "exchange did not produce a feasible witness"
    );
    *state = next;
    Ok(TransitionRecord {
        iteration,
        kind: TransitionKind::G,
        pairs_fixed: vec![(p, q)],
        b_deltas: BTreeMap::from([(p, delta)]),
    })
}

/// Fix the longest free job on the first free machine with one slot left
/// and raise that machine's budget by the job's length. `x` must be
/// feasible for `state`; it is only used to build the exchange witness.
pub fn g_transition(
    state: &BlprState,
    x: &FractionalAssignment,
) -> Result<BlprState, TransitionError> {
    let mut next = state.clone();
    apply_g(&mut next, x, 0)?;
    Ok(next)
}

/// Placement used by H: free jobs by length descending (index on ties),
/// two per free machine in index order.
pub fn h_plan(state: &BlprState) -> Result<Vec<(usize, usize)>, TransitionError> {
    let (m_star, k_star) = (state.m_star(), state.k_star());
    if m_star == 0 {
        return Ok(Vec::new());
    }
    if m_star >= 2 * k_star {
        return Err(TransitionError::Precondition(format!(
            "H needs M* < 2k*, got M*={m_star} k*={k_star}"
        )));
    }
    let machines = state.free_machines();
    if let Some(&i) = machines.iter().find(|&&i| state.residual(i) < 2) {
        return Err(TransitionError::Precondition(format!(
            "free machine {} has fewer than 2 slots",
            i + 1
        )));
    }
    let lengths = state.instance().lengths();
    let mut jobs = state.free_jobs();
    jobs.sort_by_key(|&j| (std::cmp::Reverse(lengths[j]), j));
    Ok(jobs
        .into_iter()
        .enumerate()
        .map(|(n, j)| (machines[n / 2], j))
        .collect())
}

fn apply_h(state: &mut BlprState, iteration: usize) -> Result<TransitionRecord, TransitionError> {
    let plan = h_plan(state)?;
    let mut deltas: BTreeMap<usize, Rational> = BTreeMap::new();
    let mut next = state.clone();
    for &(i, j) in &plan {
        next.fix(i, j);
        *deltas.entry(i).or_insert_with(Rational::zero) +=
            rational_from_u64(state.instance().length(j));
    }
    for (i, d) in &deltas {
        next.raise_budget(*i, d);
    }
    next.check_invariants()
        .map_err(|e| TransitionError::Precondition(e.to_string()))?;
    *state = next;
    let mut pairs_fixed = plan;
    pairs_fixed.sort_unstable();
    Ok(TransitionRecord {
        iteration,
        kind: TransitionKind::H,
        pairs_fixed,
        b_deltas: deltas,
    })
}

/// Assign every remaining free job, at most two per free machine, and
/// raise each receiving machine's budget by its new load. Identity when
/// no job is free.
pub fn h_transition(state: &BlprState) -> Result<BlprState, TransitionError> {
    let mut next = state.clone();
    if next.m_star() > 0 {
        apply_h(&mut next, 0)?;
    }
    Ok(next)
}

pub fn ira(instance: &Instance) -> Result<RoundingResult, IraError> {
    ira_with(instance, IraOptions::default())
}

pub fn ira_with(instance: &Instance, options: IraOptions) -> Result<RoundingResult, IraError> {
    let lpr = solve_lpr(instance)?;
    let mut state = BlprState::new(instance.clone(), lpr.loads.clone())?;
    let mut trace = Vec::new();
    let mut audits = Vec::new();
    let mut iteration = 0;

    while state.m_star() > 0 {
        iteration += 1;
        let (program, vertex) = solve_blpr(&state).map_err(|_| {
            violation(
                format!("bounded relaxation infeasible at iteration {iteration}"),
                &state,
            )
        })?;
        let x = program.assignment(&vertex.values);
        if options.audit.runs_at(iteration) {
            audits.push(IterationAudit {
                iteration,
                report: audit_structure(&state, &x),
                vertex_basic: check_basic(&program.lp, &vertex.values),
            });
        }

        let (m_star, k_star) = (state.m_star(), state.k_star());
        let step = if m_star >= 2 * k_star {
            let pairs = find_integral_pairs(&state, &x);
            if pairs.is_empty() {
                return Err(violation(
                    format!(
                        "no integral pair with M*={m_star} >= 2k*={} at iteration {iteration}",
                        2 * k_star
                    ),
                    &state,
                ));
            }
            apply_f(&mut state, &pairs, iteration)
        } else if state.free_machines().iter().any(|&i| state.residual(i) == 1) {
            apply_g(&mut state, &x, iteration)
        } else {
            apply_h(&mut state, iteration)
        };
        let record = step.map_err(|e| violation(e.to_string(), &state))?;
        trace.push(record);
    }

    let assignment = state
        .assignment()
        .ok_or_else(|| violation("loop ended with free jobs", &state))?;
    let schedule = Schedule::new(assignment);
    let report = verify_schedule(instance, &schedule);
    if !report.feasible {
        return Err(violation(
            format!("infeasible schedule: {}", report.violations.join("; ")),
            &state,
        ));
    }
    let a = makespan(instance, &schedule).expect("schedule covers every job");

    let mut budget_raises = vec![0; instance.machines()];
    for record in &trace {
        for i in record.b_deltas.keys() {
            budget_raises[*i] += 1;
        }
    }
    let loads_within_b = report
        .per_machine_load
        .iter()
        .zip(state.budgets())
        .all(|(&load, b)| rational_from_u64(load) <= *b);
    let bounds = lower_bounds(instance, &lpr.c_star);
    let a_exact = rational_from_u64(a);
    let b_increase_bound_ok =
        a_exact <= &lpr.c_star + rational_from_u64(2 * instance.max_length());
    let ratio_ok = a_exact <= bounds.best() * rational_from_u64(3);
    let certificate = Certificate {
        makespan: a,
        lower_bounds: bounds,
        final_b: state.budgets().to_vec(),
        budget_raises,
        loads_within_b,
        b_increase_bound_ok,
        ratio_ok,
    };
    if !certificate.holds() {
        return Err(violation(
            format!("certificate failed:\n{}", certificate.to_text()),
            &state,
        ));
    }

    Ok(RoundingResult {
        schedule,
        c_star: lpr.c_star,
        initial_y: lpr.loads,
        final_b: state.budgets().to_vec(),
        trace,
        certificate,
        audits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
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
    fn integral_pairs() {
        let state = BlprState::new(inst(&[3], &[1, 2, 3]), vec![z(6)]).unwrap();
        let x = crate::relaxations::solve_blpr_basic(&state).unwrap();
        assert_eq!(find_integral_pairs(&state, &x), vec![(0, 0), (0, 1), (0, 2)]);

        let state = BlprState::new(inst(&[1, 1], &[3, 1]), vec![z(2), z(2)]).unwrap();
        assert!(find_integral_pairs(&state, &half_matrix()).is_empty());

        let state = BlprState::new(inst(&[2, 2, 2], &[1; 6]), vec![z(9); 3]).unwrap();
        let mut x = FractionalAssignment::new();
        x.set(0, 0, q(1, 3));
        x.set(1, 4, z(1));
        x.set(2, 0, q(2, 3));
        assert_eq!(find_integral_pairs(&state, &x), vec![(1, 4)]);
    }

    #[test]
    fn f_fixes_and_keeps_budget() {
        let state = BlprState::new(inst(&[3], &[1, 2, 3]), vec![z(6)]).unwrap();
        let next = f_transition(&state, &[(0, 0)]).unwrap();
        assert_eq!(next.fixed_count(0), 1);
        assert_eq!(next.free_jobs(), vec![1, 2]);
        assert_eq!(next.budgets(), state.budgets());

        let all = f_transition(&state, &[(0, 0), (0, 1), (0, 2)]).unwrap();
        let seq = f_transition(
            &f_transition(&f_transition(&state, &[(0, 2)]).unwrap(), &[(0, 0)]).unwrap(),
            &[(0, 1)],
        )
        .unwrap();
        assert_eq!(all, seq);
        assert!(all.free_machines().is_empty());
    }

    #[test]
    fn f_rejects_bad_pairs() {
        let state = BlprState::new(inst(&[1, 1], &[3, 1]), vec![z(3), z(3)]).unwrap();
        assert!(f_transition(&state, &[]).is_err());
        assert!(f_transition(&state, &[(0, 0), (0, 1)]).is_err());
        assert!(f_transition(&state, &[(0, 0), (1, 0)]).is_err());
        assert!(f_transition(&state, &[(5, 0)]).is_err());
        let tight = BlprState::new(inst(&[1, 1], &[3, 1]), vec![z(2), z(2)]).unwrap();
        assert!(f_transition(&tight, &[(0, 0)]).is_err());
    }

    #[test]
    fn g_worked_example() {
        let state = BlprState::new(inst(&[1, 1], &[3, 1]), vec![z(2), z(2)]).unwrap();
        let ex = g_exchange(&state, &half_matrix()).unwrap();
        assert_eq!((ex.machine, ex.job), (0, 0));
        let mut expected = FractionalAssignment::new();
        expected.set(0, 0, z(1));
        expected.set(1, 1, z(1));
        assert_eq!(ex.x, expected);

        let next = g_transition(&state, &half_matrix()).unwrap();
        assert_eq!(next.budgets(), &[z(5), z(2)]);
        assert_eq!(next.fixed_pairs(), vec![(0, 0)]);
        assert_eq!(next.fixed_load(0), 3);
        assert!(z(1) <= next.budgets()[1].clone());
    }

    #[test]
    fn g_with_pair_already_integral() {
        let state = BlprState::new(inst(&[1, 2], &[5, 2]), vec![z(5), z(2)]).unwrap();
        let mut x = FractionalAssignment::new();
        x.set(0, 0, z(1));
        x.set(1, 1, z(1));
        let ex = g_exchange(&state, &x).unwrap();
        assert_eq!(ex.x, x);
        let next = g_transition(&state, &x).unwrap();
        assert_eq!(next.budgets(), &[z(10), z(2)]);
    }

    #[test]
    fn g_else_branch_moves_whole_fraction() {
        // p = machine 1 (one slot, empty); q = job 1 sits entirely on machine 2.
        let state = BlprState::new(inst(&[1, 3], &[4, 1]), vec![z(1), z(5)]).unwrap();
        let mut x = FractionalAssignment::new();
        x.set(1, 0, z(1));
        x.set(1, 1, z(1));
        let ex = g_exchange(&state, &x).unwrap();
        assert_eq!((ex.machine, ex.job), (0, 0));
        assert_eq!(ex.x.get(0, 0), z(1));
        assert_eq!(ex.x.get(1, 0), z(0));
        assert_eq!(ex.x.get(1, 1), z(1));
    }

    #[test]
    fn g_preconditions() {
        let state = BlprState::new(inst(&[3], &[1, 2, 3]), vec![z(6)]).unwrap();
        assert!(g_choice(&state).is_err());
        let state = BlprState::new(inst(&[2, 2], &[1, 1, 1]), vec![z(2), z(2)]).unwrap();
        assert!(g_choice(&state).is_err());
    }

    #[test]
    fn h_policy() {
        let state = BlprState::new(inst(&[2, 2], &[1, 1, 1]), vec![q(3, 2), q(3, 2)]).unwrap();
        let next = h_transition(&state).unwrap();
        assert_eq!(next.fixed_pairs(), vec![(0, 0), (0, 1), (1, 2)]);
        assert_eq!(next.budgets(), &[q(7, 2), q(5, 2)]);
        assert_eq!(next.m_star(), 0);

        let one = BlprState::new(inst(&[2, 2], &[4]), vec![z(2), z(2)]).unwrap();
        let next = h_transition(&one).unwrap();
        assert_eq!(next.budgets(), &[z(6), z(2)]);

        let done = BlprState::with_fixed(inst(&[2, 2], &[4]), vec![z(4), z(0)], [(0, 0)]).unwrap();
        assert_eq!(h_transition(&done).unwrap(), done);

        let narrow = BlprState::new(inst(&[1, 2], &[1, 1]), vec![z(1), z(1)]).unwrap();
        assert!(h_transition(&narrow).is_err());
    }

    #[test]
    fn ira_two_jobs() {
        let r = ira(&inst(&[1, 1], &[3, 1])).unwrap();
        assert_eq!(r.certificate.makespan, 3);
        assert_eq!(r.c_star, z(2));
        assert_eq!(r.certificate.lower_bounds.longest_job, 3);
        assert!(r.certificate.ratio_ok && r.certificate.b_increase_bound_ok);
        assert!(r.audits.iter().all(IterationAudit::passed));
    }

    #[test]
    fn ira_single_machine() {
        let r = ira(&inst(&[3], &[1, 2, 3])).unwrap();
        assert_eq!(r.certificate.makespan, 6);
        assert_eq!(r.trace.len(), 1);
        assert_eq!(r.trace[0].kind, TransitionKind::F);
    }

    #[test]
    fn ira_four_jobs_within_bounds() {
        let r = ira(&inst(&[2, 2], &[4, 3, 2, 1])).unwrap();
        let a = r.certificate.makespan;
        assert!((5..=15).contains(&a), "{a}");
        assert!(r.certificate.ratio_ok);
    }

    #[test]
    fn ira_empty_instance() {
        let r = ira(&inst(&[2], &[])).unwrap();
        assert_eq!(r.certificate.makespan, 0);
        assert!(r.trace.is_empty());
    }

    #[test]
    fn trace_line_format() {
        let record = TransitionRecord {
            iteration: 2,
            kind: TransitionKind::H,
            pairs_fixed: vec![(0, 1), (1, 0)],
            b_deltas: BTreeMap::from([(0, z(3)), (1, q(1, 2))]),
        };
        assert_eq!(
            record.to_string(),
            "iter=2 kind=H fixed=(1,2)(2,1) db=(1:+3)(2:+1/2)"
        );
    }

    #[test]
    fn sampling() {
        assert!(AuditMode::Sampled(3).runs_at(1));
        assert!(!AuditMode::Sampled(3).runs_at(2));
        assert!(AuditMode::Sampled(3).runs_at(4));
        assert!(!AuditMode::Off.runs_at(1));
    }
}
