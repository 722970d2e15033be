//! Two-phase primal simplex on a dense, fraction-free tableau.
//!
//! Column layout: original variables, then one slack per `<=` row, then
//! one artificial per row whose starting basic variable cannot be a
//! slack (equality rows and `<=` rows with negative right-hand side).
//!
//! Every input row is scaled to integers up front. The tableau then holds
//! `det * B^-1 [A | b]` with `det = |det B|`, and each pivot updates it
//! with an exactly divisible integer cross product, so no fraction is ever
//! reduced inside the loop. Pivoting follows Bland's rule (lowest-index
//! entering column, lowest basic index among tied leaving rows), which
//! rules out cycling on the heavily degenerate programs built here.

use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::linalg::{free_columns, restrict, Echelon};
use super::{BasicSolution, BasisWitness, LinearProgram, LpError, Sense};
use crate::scalar::{ExactField, ExactInt};

/// Tableaux with at least this many cells update their rows in parallel.
const PARALLEL_CELLS: usize = 1 << 14;

struct Tableau<I> {
    /// Constraint rows; the last entry of each row is its right-hand side.
    rows: Vec<Vec<I>>,
    /// Reduced-cost row, same layout; its last entry is `-det * objective`.
    cost: Vec<I>,
    det: I,
    basis: Vec<usize>,
    /// Original LP row of each tableau row.
    origin: Vec<usize>,
    num_vars: usize,
    /// First artificial column.
    art_start: usize,
    /// Slack column of each original row, if it has one.
    slack_of: Vec<Option<usize>>,
}

enum Phase {
    Optimal,
    Unbounded,
}

/// Common positive multiplier clearing every denominator.
fn clearing_factor<'a, T: ExactField + 'a>(values: impl Iterator<Item = &'a T>) -> T::Int {
    values.fold(T::Int::one(), |acc, v| acc.lcm(&v.to_parts().1))
}

fn scaled<T: ExactField>(value: &T, factor: &T::Int) -> T::Int {
    let (n, d) = value.to_parts();
    n * (factor.clone() / d)
}

/// Replace `row` by `(row * p - row[s] * prow) / d`.
fn eliminate<I: ExactInt>(row: &mut [I], prow: &[I], s: usize, p: &I, d: &I) {
    let f = row[s].clone();
    let rescale = p != d;
    for (x, a) in row.iter_mut().zip(prow) {
        if !f.is_zero() && !a.is_zero() {
            *x = x.cross_div(p, &f, a, d);
        } else if rescale && !x.is_zero() {
            *x = x.scale_div(p, d);
        }
    }
}

impl<I: ExactInt> Tableau<I> {
    fn new<T: ExactField<Int = I>>(lp: &LinearProgram<T>) -> Self {
        let n = lp.num_vars();
        let num_slack = lp.rows().iter().filter(|r| r.sense == Sense::Le).count();
        let num_art = lp
            .rows()
            .iter()
            .filter(|r| r.sense == Sense::Eq || r.rhs.is_negative())
            .count();
        let art_start = n + num_slack;
        let width = art_start + num_art;

        let m = lp.rows().len();
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut slack_of = Vec::with_capacity(m);
        let (mut next_slack, mut next_art) = (n, art_start);
        for row in lp.rows() {
            let flip = row.rhs.is_negative();
            let sign = |v: I| if flip { -v } else { v };
            let factor = clearing_factor(
                row.coefficients.iter().map(|(_, a)| a).chain(std::iter::once(&row.rhs)),
            );
            let mut dense = vec![I::zero(); width + 1];
            for (j, a) in &row.coefficients {
                dense[*j] = sign(scaled(a, &factor));
            }
            dense[width] = sign(scaled(&row.rhs, &factor));
            let slack = (row.sense == Sense::Le).then(|| {
                let s = next_slack;
                next_slack += 1;
                dense[s] = sign(I::one());
                s
            });
            slack_of.push(slack);
            match slack {
                Some(s) if !flip => basis.push(s),
                _ => {
                    dense[next_art] = I::one();
                    basis.push(next_art);
                    next_art += 1;
                }
            }
            rows.push(dense);
        }

        Self {
            rows,
            cost: vec![I::zero(); width + 1],
            det: I::one(),
            basis,
            origin: (0..m).collect(),
            num_vars: n,
            art_start,
            slack_of,
        }
    }

    fn width(&self) -> usize {
        self.cost.len() - 1
    }

    /// Load an integer cost vector and price it against the current basis.
    fn set_costs(&mut self, costs: &[I]) {
        let mut cost: Vec<I> = costs.iter().map(|c| c.mul_ref(&self.det)).collect();
        cost.push(I::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (c, a) in cost.iter_mut().zip(row) {
                if !a.is_zero() {
                    *c = c.clone() - cb.mul_ref(a);
                }
            }
        }
        self.cost = cost;
    }

    fn pivot(&mut self, r: usize, s: usize) {
        let prow = std::mem::take(&mut self.rows[r]);
        let p = prow[s].clone();
        let d = self.det.clone();
        let update = |row: &mut Vec<I>| {
            if !row.is_empty() {
                eliminate(row, &prow, s, &p, &d);
            }
        };
        if self.rows.len() * prow.len() >= PARALLEL_CELLS {
            self.rows.par_iter_mut().for_each(update);
        } else {
            self.rows.iter_mut().for_each(update);
        }
        eliminate(&mut self.cost, &prow, s, &p, &d);
        self.rows[r] = prow;
        self.basis[r] = s;
        self.det = p;

        // Keep `det` positive so signs of entries read directly.
        if self.det.is_negative() {
            self.det = -self.det.clone();
            for x in self.rows.iter_mut().flatten().chain(self.cost.iter_mut()) {
                *x = -x.clone();
            }
        }
    }

    /// Lowest-index improving column.
    fn entering(&self, limit: usize) -> Option<usize> {
        (0..limit).find(|&j| self.cost[j].is_negative())
    }

    /// Minimum-ratio row for `col`, ties to the lowest basic index.
    fn leaving(&self, col: usize) -> Option<usize> {
        let w = self.width();
        let mut best: Option<usize> = None;
        for (i, row) in self.rows.iter().enumerate() {
            if !row[col].is_positive() {
                continue;
            }
            let better = match best {
                None => true,
                Some(b) => {
                    let lhs = row[w].mul_ref(&self.rows[b][col]);
                    let rhs = self.rows[b][w].mul_ref(&row[col]);
                    lhs < rhs || (lhs == rhs && self.basis[i] < self.basis[b])
                }
            };
            if better {
                best = Some(i);
            }
        }
        best
    }

    fn run(&mut self, limit: usize) -> Phase {
        loop {
            let Some(col) = self.entering(limit) else {
                return Phase::Optimal;
            };
            let Some(r) = self.leaving(col) else {
                return Phase::Unbounded;
            };
            self.pivot(r, col);
        }
    }

    /// Phase 1. Leaves a feasible basis free of artificial columns, with
    /// redundant equality rows dropped.
    fn find_feasible_basis(&mut self) -> Result<(), LpError> {
        let width = self.width();
        if self.art_start == width {
            return Ok(());
        }
        let costs: Vec<I> = (0..width)
            .map(|j| if j >= self.art_start { I::one() } else { I::zero() })
            .collect();
        self.set_costs(&costs);
        // Phase 1 is bounded below by zero.
        let _ = self.run(width);
        if self.cost[width].is_negative() {
            return Err(LpError::Infeasible);
        }

        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] < self.art_start {
                r += 1;
                continue;
            }
            match (0..self.art_start).find(|&j| !self.rows[r][j].is_zero()) {
                Some(j) => {
                    self.pivot(r, j);
                    r += 1;
                }
                None => {
                    self.rows.swap_remove(r);
                    self.basis.swap_remove(r);
                    self.origin.swap_remove(r);
                }
            }
        }
        Ok(())
    }

    fn values<T: ExactField<Int = I>>(&self) -> Vec<T> {
        let w = self.width();
        let mut values = vec![T::zero(); self.num_vars];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < self.num_vars {
                values[b] = T::from_parts(row[w].clone(), self.det.clone());
            }
        }
        values
    }

    fn witness<T: ExactField<Int = I>>(&self, lp: &LinearProgram<T>, values: &[T]) -> BasisWitness {
        let mut in_basis = vec![false; self.width()];
        for &b in &self.basis {
            in_basis[b] = true;
        }
        let mut zero_vars: Vec<usize> = (0..self.num_vars).filter(|&j| !in_basis[j]).collect();
        let columns = free_columns(self.num_vars, &zero_vars);
        let mut echelon = Echelon::new(columns.len());

        let mut kept = vec![false; lp.rows().len()];
        for &o in &self.origin {
            kept[o] = true;
        }
        // Rows whose slack left the basis (and surviving equalities) come
        // first; any other tight constraint is only a fallback.
        let derived = |r: usize| match self.slack_of[r] {
            Some(s) => !in_basis[s],
            None => kept[r],
        };
        let order = (0..lp.rows().len())
            .filter(|&r| derived(r))
            .chain((0..lp.rows().len()).filter(|&r| !derived(r)));
        let mut tight_rows = Vec::new();
        for r in order {
            if echelon.is_full() {
                break;
            }
            let row = &lp.rows()[r];
            if row.is_tight(values) && echelon.insert(restrict(row, &columns)) {
                tight_rows.push(r);
            }
        }
        for (j, value) in values.iter().enumerate() {
            if echelon.is_full() {
                break;
            }
            if let Some(&c) = columns.get(&j) {
                if value.is_zero() {
                    let mut unit = vec![T::zero(); columns.len()];
                    unit[c] = T::one();
                    if echelon.insert(unit) {
                        zero_vars.push(j);
                    }
                }
            }
        }
        debug_assert!(echelon.is_full(), "simplex basis did not yield a full-rank witness");
        tight_rows.sort_unstable();
        zero_vars.sort_unstable();
        BasisWitness {
            tight_rows,
            zero_vars,
        }
    }

    fn into_solution<T: ExactField<Int = I>>(
        self,
        lp: &LinearProgram<T>,
        with_objective: bool,
    ) -> BasicSolution<T> {
        let values = self.values();
        let witness = self.witness(lp, &values);
        let objective_value = with_objective.then(|| lp.objective_at(&values));
        BasicSolution {
            values,
            objective_value,
            witness,
        }
    }
}

/// Any vertex of the feasible region, or `Infeasible`.
pub fn solve_feasible<T: ExactField>(lp: &LinearProgram<T>) -> Result<BasicSolution<T>, LpError> {
    let mut tableau = Tableau::new(lp);
    tableau.find_feasible_basis()?;
    Ok(tableau.into_solution(lp, false))
}

/// An optimal vertex minimizing the objective.
pub fn solve_minimize<T: ExactField>(lp: &LinearProgram<T>) -> Result<BasicSolution<T>, LpError> {
    let mut tableau = Tableau::new(lp);
    tableau.find_feasible_basis()?;
    let factor = clearing_factor(lp.objective().iter().map(|(_, c)| c));
    let mut costs = vec![T::Int::zero(); tableau.width()];
    for (j, c) in lp.objective() {
        costs[*j] = scaled(c, &factor);
    }
    tableau.set_costs(&costs);
    match tableau.run(tableau.art_start) {
        Phase::Optimal => Ok(tableau.into_solution(lp, true)),
        Phase::Unbounded => Err(LpError::Unbounded),
    }
}
