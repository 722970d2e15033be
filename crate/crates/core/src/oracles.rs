//! Reference solvers and lower bounds used to judge the rounding output.

use std::time::{Duration, Instant};

use crate::model::{makespan, Instance, Schedule};
use crate::scalar::rational_from_u64;
use crate::Rational;

/// Search budget for [`brute_force_opt`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForceLimits {
    /// Maximum number of search nodes, the root included.
    pub max_states: u64,
    /// Wall-clock budget; `None` keeps the search deterministic.
    pub time_budget: Option<Duration>,
}

impl BruteForceLimits {
    pub fn states(max_states: u64) -> Self {
        Self {
            max_states,
            time_budget: None,
        }
    }
}

impl Default for BruteForceLimits {
    fn default() -> Self {
        Self::states(5_000_000)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleVerdict {
    Optimal { opt: u64, schedule: Schedule },
    /// A budget ran out before optimality was proven.
    Indeterminate,
}

impl OracleVerdict {
    pub fn opt(&self) -> Option<u64> {
        match self {
            OracleVerdict::Optimal { opt, .. } => Some(*opt),
            OracleVerdict::Indeterminate => None,
        }
    }
}

struct Search<'a> {
    instance: &'a Instance,
    order: Vec<usize>,
    loads: Vec<u64>,
    residual: Vec<u64>,
    current: Vec<usize>,
    best: u64,
    best_assignment: Vec<usize>,
    floor: u64,
    nodes: u64,
    limits: BruteForceLimits,
    started: Instant,
    exhausted: bool,
}

impl Search<'_> {
    fn over_budget(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.limits.max_states {
            self.exhausted = true;
        } else if let Some(budget) = self.limits.time_budget {
            if self.nodes % 1024 == 1 && self.started.elapsed() > budget {
                self.exhausted = true;
            }
        }
        self.exhausted
    }

    /// Place `order[depth..]`; `partial` is the current max load.
    fn descend(&mut self, depth: usize, partial: u64) {
        if self.over_budget() || self.best == self.floor {
            return;
        }
        if depth == self.order.len() {
            if partial < self.best {
                self.best = partial;
                self.best_assignment.clone_from(&self.current);
            }
            return;
        }
        let job = self.order[depth];
        let len = self.instance.length(job);
        let k = self.loads.len();
        for i in 0..k {
            if self.residual[i] == 0 {
                continue;
            }
            // Machines with equal residual capacity and load are
            // interchangeable; only the first of each class is tried.
            if (0..i).any(|h| self.residual[h] == self.residual[i] && self.loads[h] == self.loads[i])
            {
                continue;
            }
            let load = self.loads[i] + len;
            if load >= self.best {
                continue;
            }
            self.loads[i] = load;
            self.residual[i] -= 1;
            self.current[job] = i;
            self.descend(depth + 1, partial.max(load));
            self.loads[i] -= len;
            self.residual[i] += 1;
            if self.exhausted {
                return;
            }
        }
    }
}

/// Exact optimum by depth-first branch and bound.
///
/// Jobs are placed longest first. A branch is cut when it would reach the
/// incumbent makespan, when the machine is full, or when an earlier
/// machine has the same residual capacity and load. The incumbent starts
/// at the capacity-aware LPT schedule, and the search stops early once it
/// meets `max(t_max, ceil(Σt / k))`.
pub fn brute_force_opt(instance: &Instance, limits: BruteForceLimits) -> OracleVerdict {
    let greedy = greedy_lpt_capacity(instance);
    let greedy_span = makespan(instance, &greedy).expect("greedy covers every job");
    let k = instance.machines() as u64;
    let floor = instance
        .max_length()
        .max(instance.total_length().div_ceil(k));
    let mut order: Vec<usize> = (0..instance.jobs()).collect();
    order.sort_by_key(|&j| (std::cmp::Reverse(instance.length(j)), j));

    let mut search = Search {
        instance,
        order,
        loads: vec![0; instance.machines()],
        residual: instance.capacities().to_vec(),
        current: vec![0; instance.jobs()],
        best: greedy_span,
        best_assignment: greedy.assignment().to_vec(),
        floor,
        nodes: 0,
        limits,
        started: Instant::now(),
        exhausted: false,
    };
    search.descend(0, 0);
    if search.exhausted {
        return OracleVerdict::Indeterminate;
    }
    OracleVerdict::Optimal {
        opt: search.best,
        schedule: Schedule::new(search.best_assignment),
    }
}

/// Longest job first onto the least-loaded machine that still has room
/// (lowest index on ties).
pub fn greedy_lpt_capacity(instance: &Instance) -> Schedule {
    let mut order: Vec<usize> = (0..instance.jobs()).collect();
    order.sort_by_key(|&j| (std::cmp::Reverse(instance.length(j)), j));
    let mut loads = vec![0u64; instance.machines()];
    let mut residual = instance.capacities().to_vec();
    let mut assignment = vec![0; instance.jobs()];
    for j in order {
        let i = (0..loads.len())
            .filter(|&i| residual[i] > 0)
            .min_by_key(|&i| (loads[i], i))
            .expect("M <= total capacity leaves a free slot");
        loads[i] += instance.length(j);
        residual[i] -= 1;
        assignment[j] = i;
    }
    Schedule::new(assignment)
}

/// Lower bounds on the optimal makespan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBounds {
    /// Optimal value `c*` of the natural relaxation.
    pub lp: Rational,
    pub longest_job: u64,
    /// `Σt / k`
    pub average: Rational,
}

impl LowerBounds {
    pub fn best(&self) -> Rational {
        let longest = rational_from_u64(self.longest_job);
        self.lp.clone().max(longest).max(self.average.clone())
    }
}

pub fn lower_bounds(instance: &Instance, c_star: &Rational) -> LowerBounds {
    LowerBounds {
        lp: c_star.clone(),
        longest_job: instance.max_length(),
        average: rational_from_u64(instance.total_length())
            / rational_from_u64(instance.machines() as u64),
    }
}
