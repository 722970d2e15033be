//! Exact linear programming.
//!
//! Programs are stated over non-negative variables with `<=` and `=` rows.
//! The solver is a two-phase primal simplex on a dense tableau using
//! Bland's rule, so every returned point is a vertex of the feasible
//! region and comes with a witness: a set of tight constraints whose
//! normals are linearly independent and span the whole variable space.

mod linalg;
mod simplex;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::scalar::ExactField;

pub use linalg::rank;
pub use simplex::{solve_feasible, solve_minimize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    /// `a·x <= rhs`
    Le,
    /// `a·x = rhs`
    Eq,
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::Le => "<=",
            Sense::Eq => "=",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("variable {index} out of range for a program with {num_vars} variables")]
    VariableOutOfRange { index: usize, num_vars: usize },
}

/// One constraint row; coefficients are sparse, sorted by variable and
/// free of explicit zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row<T> {
    pub coefficients: Vec<(usize, T)>,
    pub sense: Sense,
    pub rhs: T,
}

impl<T: ExactField> Row<T> {
    /// Left-hand side at `values`.
    pub fn activity(&self, values: &[T]) -> T {
        self.coefficients
            .iter()
            .fold(T::zero(), |acc, (j, a)| acc + a.clone() * values[*j].clone())
    }

    pub fn is_satisfied(&self, values: &[T]) -> bool {
        let lhs = self.activity(values);
        match self.sense {
            Sense::Le => lhs <= self.rhs,
            Sense::Eq => lhs == self.rhs,
        }
    }

    pub fn is_tight(&self, values: &[T]) -> bool {
        self.activity(values) == self.rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram<T> {
    num_vars: usize,
    rows: Vec<Row<T>>,
    objective: Vec<(usize, T)>,
}

fn normalize<T: ExactField>(
    num_vars: usize,
    terms: impl IntoIterator<Item = (usize, T)>,
) -> Result<Vec<(usize, T)>, LpError> {
    let mut merged: BTreeMap<usize, T> = BTreeMap::new();
    for (index, value) in terms {
        if index >= num_vars {
            return Err(LpError::VariableOutOfRange { index, num_vars });
        }
        let slot = merged.entry(index).or_insert_with(T::zero);
        *slot = slot.clone() + value;
    }
    Ok(merged.into_iter().filter(|(_, v)| !v.is_zero()).collect())
}

impl<T: ExactField> LinearProgram<T> {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            rows: Vec::new(),
            objective: Vec::new(),
        }
    }

    /// Append a row and return its index. Repeated variables are summed.
    pub fn add_row(
        &mut self,
        terms: impl IntoIterator<Item = (usize, T)>,
        sense: Sense,
        rhs: T,
    ) -> Result<usize, LpError> {
        let coefficients = normalize(self.num_vars, terms)?;
        self.rows.push(Row {
            coefficients,
            sense,
            rhs,
        });
        Ok(self.rows.len() - 1)
    }

    /// Objective to minimize; empty means pure feasibility.
    pub fn set_objective(
        &mut self,
        terms: impl IntoIterator<Item = (usize, T)>,
    ) -> Result<(), LpError> {
        self.objective = normalize(self.num_vars, terms)?;
        Ok(())
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn rows(&self) -> &[Row<T>] {
        &self.rows
    }

    pub fn objective(&self) -> &[(usize, T)] {
        &self.objective
    }

    pub fn objective_at(&self, values: &[T]) -> T {
        self.objective
            .iter()
            .fold(T::zero(), |acc, (j, c)| acc + c.clone() * values[*j].clone())
    }

    /// Non-negative and satisfies every row exactly.
    pub fn is_feasible(&self, values: &[T]) -> bool {
        values.len() == self.num_vars
            && values.iter().all(|v| !v.is_negative())
            && self.rows.iter().all(|r| r.is_satisfied(values))
    }
}

/// Tight constraints that pin a basic solution down.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BasisWitness {
    /// Indices of rows holding with equality.
    pub tight_rows: Vec<usize>,
    /// Variables whose non-negativity bound is active.
    pub zero_vars: Vec<usize>,
}

impl BasisWitness {
    pub fn len(&self) -> usize {
        self.tight_rows.len() + self.zero_vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Every listed constraint is tight at `values` and together they have
    /// full rank.
    pub fn certifies<T: ExactField>(&self, lp: &LinearProgram<T>, values: &[T]) -> bool {
        if self.len() != lp.num_vars()
            || self.zero_vars.iter().any(|&j| !values[j].is_zero())
            || self
                .tight_rows
                .iter()
                .any(|&r| r >= lp.rows().len() || !lp.rows()[r].is_tight(values))
        {
            return false;
        }
        let rows: Vec<&Row<T>> = self.tight_rows.iter().map(|&r| &lp.rows()[r]).collect();
        linalg::constraint_rank(lp.num_vars(), &rows, &self.zero_vars) == lp.num_vars()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicSolution<T> {
    pub values: Vec<T>,
    pub objective_value: Option<T>,
    pub witness: BasisWitness,
}

/// Independent audit of the vertex property: `sol` satisfies every row and
/// the constraints tight at it have rank `num_vars`. Uses only `lp` and the
/// point itself, never the solver's basis.
pub fn check_basic<T: ExactField>(lp: &LinearProgram<T>, values: &[T]) -> bool {
    if !lp.is_feasible(values) {
        return false;
    }
    let tight: Vec<&Row<T>> = lp.rows().iter().filter(|r| r.is_tight(values)).collect();
    let zeros: Vec<usize> = (0..lp.num_vars()).filter(|&j| values[j].is_zero()).collect();
    linalg::constraint_rank(lp.num_vars(), &tight, &zeros) == lp.num_vars()
}
