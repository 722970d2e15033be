//! Makespan scheduling on identical machines with per-machine job-count
//! capacities, solved by iterative rounding of an exact LP relaxation.
//!
//! The pipeline is: [`relaxations::solve_lpr`] computes the optimal
//! fractional loads, which seed the per-machine budgets of a bounded
//! relaxation; [`rounding::ira`] then repeatedly solves that relaxation for
//! a vertex and fixes jobs until every job is placed. The result carries a
//! certificate that the makespan is within `c* + 2·t_max`, hence within
//! three times the optimum.
//!
//! All LP arithmetic is exact. The LP core in [`exact_lp`] is generic over
//! [`scalar::ExactField`]; the scheduling layers use [`Rational`].

pub mod cli;
pub mod exact_lp;
pub mod model;
pub mod oracles;
pub mod relaxations;
pub mod rounding;
pub mod scalar;

pub use model::{Instance, Schedule, ScheduleReport};
pub use scalar::ExactField;

/// Arbitrary-precision rational used throughout the scheduling layers.
pub type Rational = num_rational::BigRational;

pub type LinearProgram = exact_lp::LinearProgram<Rational>;
pub type BasicSolution = exact_lp::BasicSolution<Rational>;
pub type LpRow = exact_lp::Row<Rational>;
