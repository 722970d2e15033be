//! Problem instances, schedules and their text formats.
//!
//! Instance file (UTF-8): line 1 is `k M`, line 2 holds the `k` machine
//! capacities, line 3 holds the `M` job lengths. Lines starting with `#`
//! are comments and blank lines are ignored; when `M = 0` the third line
//! may be empty or absent. A schedule file is a single line of `M`
//! 1-based machine indices, position `j` naming the machine of job `j`.
//!
//! Internally machines and jobs are 0-based.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid instance: {0}")]
    Invalid(String),
    #[error("schedule has {found} entries but the instance has {expected} jobs")]
    LengthMismatch { expected: usize, found: usize },
    #[error("impossible generator parameters: {0}")]
    Generator(String),
}

/// A scheduling instance: `k` identical machines, machine `i` holding at
/// most `capacities[i]` jobs, and `M` jobs with integral lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    capacities: Vec<u64>,
    lengths: Vec<u64>,
}

impl Instance {
    pub fn new(capacities: Vec<u64>, lengths: Vec<u64>) -> Result<Self, ModelError> {
        if capacities.is_empty() {
            return Err(ModelError::Invalid("k must be at least 1".into()));
        }
        if let Some(i) = capacities.iter().position(|&m| m == 0) {
            return Err(ModelError::Invalid(format!(
                "capacity of machine {} must be at least 1",
                i + 1
            )));
        }
        let total: u64 = capacities.iter().sum();
        if lengths.len() as u64 > total {
            return Err(ModelError::Invalid(format!(
                "M exceeds total capacity ({} > {})",
                lengths.len(),
                total
            )));
        }
        Ok(Self {
            capacities,
            lengths,
        })
    }

    /// Number of machines `k`.
    pub fn machines(&self) -> usize {
        self.capacities.len()
    }

    /// Number of jobs `M`.
    pub fn jobs(&self) -> usize {
        self.lengths.len()
    }

    pub fn capacities(&self) -> &[u64] {
        &self.capacities
    }

    pub fn lengths(&self) -> &[u64] {
        &self.lengths
    }

    pub fn capacity(&self, machine: usize) -> u64 {
        self.capacities[machine]
    }

    pub fn length(&self, job: usize) -> u64 {
        self.lengths[job]
    }

    pub fn total_capacity(&self) -> u64 {
        self.capacities.iter().sum()
    }

    pub fn total_length(&self) -> u64 {
        self.lengths.iter().sum()
    }

    pub fn max_length(&self) -> u64 {
        self.lengths.iter().copied().max().unwrap_or(0)
    }

    /// Canonical text form; `parse_instance` inverts it.
    pub fn to_text(&self) -> String {
        format!(
            "{} {}\n{}\n{}\n",
            self.machines(),
            self.jobs(),
            join(&self.capacities),
            join(&self.lengths)
        )
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn join(values: &[u64]) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// A total assignment of jobs to machines, 0-based internally.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Schedule {
    assignment: Vec<usize>,
}

impl Schedule {
    /// Build from 0-based machine indices.
    pub fn new(assignment: Vec<usize>) -> Self {
        Self { assignment }
    }

    /// Build from the 1-based indices used in files; rejects index 0.
    pub fn from_one_based(indices: &[usize]) -> Option<Self> {
        indices
            .iter()
            .map(|&i| i.checked_sub(1))
            .collect::<Option<Vec<_>>>()
            .map(Self::new)
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn machine_of(&self, job: usize) -> usize {
        self.assignment[job]
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// One line of 1-based machine indices, no trailing newline.
    pub fn to_line(&self) -> String {
        self.assignment
            .iter()
            .map(|m| (m + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleReport {
    pub feasible: bool,
    pub makespan: u64,
    pub per_machine_load: Vec<u64>,
    pub per_machine_count: Vec<u64>,
    pub violations: Vec<String>,
}

impl fmt::Display for ScheduleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "feasible {}", self.feasible)?;
        writeln!(f, "makespan {}", self.makespan)?;
        writeln!(f, "loads {}", join(&self.per_machine_load))?;
        writeln!(f, "counts {}", join(&self.per_machine_count))?;
        for v in &self.violations {
            writeln!(f, "violation {v}")?;
        }
        Ok(())
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

/// Significant (non-comment, non-blank) lines with their 1-based numbers.
fn significant_lines(text: &str) -> Vec<(usize, Vec<Token<'_>>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim_start().starts_with('#') && !l.trim().is_empty())
        .map(|(n, l)| (n + 1, tokenize(l)))
        .collect()
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut start = None;
    for (idx, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                tokens.push(Token {
                    text: &line[s..idx],
                    column: line[..s].chars().count() + 1,
                });
            }
        } else if start.is_none() {
            start = Some(idx);
        }
    }
    tokens
}

fn parse_number(line: usize, token: &Token<'_>, what: &str) -> Result<u64, ModelError> {
    token.text.parse::<u64>().map_err(|_| ModelError::Syntax {
        line,
        column: token.column,
        message: format!("expected non-negative integer for {what}, found `{}`", token.text),
    })
}

fn parse_row(
    line: usize,
    tokens: &[Token<'_>],
    expected: usize,
    what: &str,
) -> Result<Vec<u64>, ModelError> {
    if tokens.len() != expected {
        let column = tokens
            .get(expected)
            .map(|t| t.column)
            .or_else(|| tokens.last().map(|t| t.column + t.text.chars().count()))
            .unwrap_or(1);
        return Err(ModelError::Syntax {
            line,
            column,
            message: format!("expected {expected} {what}, found {}", tokens.len()),
        });
    }
    tokens.iter().map(|t| parse_number(line, t, what)).collect()
}

/// Parse an instance file.
pub fn parse_instance(text: &str) -> Result<Instance, ModelError> {
    let lines = significant_lines(text);
    let last_line = text.lines().count().max(1);
    let Some((header_line, header)) = lines.first() else {
        return Err(ModelError::Syntax {
            line: 1,
            column: 1,
            message: "missing header line `k M`".into(),
        });
    };
    let dims = parse_row(*header_line, header, 2, "header values (k M)")?;
    let (k, m) = (dims[0] as usize, dims[1] as usize);
    if k == 0 {
        return Err(ModelError::Invalid("k must be at least 1".into()));
    }
    let Some((cap_line, cap_tokens)) = lines.get(1) else {
        return Err(ModelError::Syntax {
            line: last_line + 1,
            column: 1,
            message: "missing capacity line".into(),
        });
    };
    let capacities = parse_row(*cap_line, cap_tokens, k, "capacities")?;
    let lengths = match lines.get(2) {
        Some((len_line, len_tokens)) => parse_row(*len_line, len_tokens, m, "lengths")?,
        None if m == 0 => Vec::new(),
        None => {
            return Err(ModelError::Syntax {
                line: last_line + 1,
                column: 1,
                message: "missing job length line".into(),
            })
        }
    };
    if let Some((extra, tokens)) = lines.get(3) {
        return Err(ModelError::Syntax {
            line: *extra,
            column: tokens[0].column,
            message: "unexpected content after the job length line".into(),
        });
    }
    Instance::new(capacities, lengths)
}

/// Parse a schedule file against its instance. Only the shape is checked
/// here (job count, index syntax); feasibility is `verify_schedule`'s job.
pub fn parse_schedule(text: &str, instance: &Instance) -> Result<Schedule, ModelError> {
    let lines = significant_lines(text);
    if let Some((extra, tokens)) = lines.get(1) {
        return Err(ModelError::Syntax {
            line: *extra,
            column: tokens[0].column,
            message: "a schedule is a single line".into(),
        });
    }
    let mut assignment = Vec::new();
    if let Some((line, tokens)) = lines.first() {
        for token in tokens {
            let idx = parse_number(*line, token, "machine index")?;
            if idx == 0 {
                return Err(ModelError::Syntax {
                    line: *line,
                    column: token.column,
                    message: "machine indices are 1-based".into(),
                });
            }
            assignment.push(idx as usize - 1);
        }
    }
    if assignment.len() != instance.jobs() {
        return Err(ModelError::LengthMismatch {
            expected: instance.jobs(),
            found: assignment.len(),
        });
    }
    Ok(Schedule::new(assignment))
}

/// Largest per-machine total length. Out-of-range machine indices are
/// ignored here; `verify_schedule` reports them.
pub fn makespan(instance: &Instance, schedule: &Schedule) -> Result<u64, ModelError> {
    if schedule.len() != instance.jobs() {
        return Err(ModelError::LengthMismatch {
            expected: instance.jobs(),
            found: schedule.len(),
        });
    }
    Ok(machine_loads(instance, schedule).into_iter().max().unwrap_or(0))
}

fn machine_loads(instance: &Instance, schedule: &Schedule) -> Vec<u64> {
    let mut loads = vec![0; instance.machines()];
    for (&machine, &length) in schedule.assignment().iter().zip(instance.lengths()) {
        if let Some(load) = loads.get_mut(machine) {
            *load += length;
        }
    }
    loads
}

/// Check totality and capacities, listing every violation found.
pub fn verify_schedule(instance: &Instance, schedule: &Schedule) -> ScheduleReport {
    let k = instance.machines();
    let mut violations = Vec::new();
    if schedule.len() != instance.jobs() {
        violations.push(format!(
            "schedule assigns {} jobs but the instance has {}",
            schedule.len(),
            instance.jobs()
        ));
    }
    let mut counts = vec![0u64; k];
    for (job, &machine) in schedule.assignment().iter().enumerate() {
        match counts.get_mut(machine) {
            Some(c) => *c += 1,
            None => violations.push(format!(
                "job {} assigned to machine {} outside [1, {k}]",
                job + 1,
                machine + 1
            )),
        }
    }
    for (i, (&count, &cap)) in counts.iter().zip(instance.capacities()).enumerate() {
        if count > cap {
            violations.push(format!(
                "machine {} over capacity: {count} jobs > capacity {cap}",
                i + 1
            ));
        }
    }
    let loads = machine_loads(instance, schedule);
    ScheduleReport {
        feasible: violations.is_empty(),
        makespan: loads.iter().copied().max().unwrap_or(0),
        per_machine_load: loads,
        per_machine_count: counts,
        violations,
    }
}

/// Inclusive integer interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub min: u64,
    pub max: u64,
}

impl IntRange {
    pub fn new(min: u64, max: u64) -> Self {
        Self { min, max }
    }
}

/// Deterministic random instance.
///
/// The stream is ChaCha8 seeded through `SeedableRng::seed_from_u64`.
/// Capacities are drawn first (machine order), then lengths (job order),
/// each uniformly from its inclusive range. If the capacities cannot hold
/// `jobs` jobs they are incremented by one round-robin from machine 1,
/// skipping machines already at `cap_range.max`.
pub fn generate_instance(
    machines: usize,
    jobs: usize,
    cap_range: IntRange,
    len_range: IntRange,
    seed: u64,
) -> Result<Instance, ModelError> {
    if machines == 0 {
        return Err(ModelError::Generator("k must be at least 1".into()));
    }
    if cap_range.min == 0 || cap_range.min > cap_range.max {
        return Err(ModelError::Generator(format!(
            "capacity range [{}, {}] must be non-empty and start at 1 or more",
            cap_range.min, cap_range.max
        )));
    }
    if len_range.min > len_range.max {
        return Err(ModelError::Generator(format!(
            "length range [{}, {}] is empty",
            len_range.min, len_range.max
        )));
    }
    let ceiling = (machines as u64).saturating_mul(cap_range.max);
    if jobs as u64 > ceiling {
        return Err(ModelError::Generator(format!(
            "{jobs} jobs exceed k * cap_max = {ceiling}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut capacities: Vec<u64> = (0..machines)
        .map(|_| rng.random_range(cap_range.min..=cap_range.max))
        .collect();
    let lengths: Vec<u64> = (0..jobs)
        .map(|_| rng.random_range(len_range.min..=len_range.max))
        .collect();
    let mut total: u64 = capacities.iter().sum();
    let mut next = 0;
    while total < jobs as u64 {
        if capacities[next] < cap_range.max {
            capacities[next] += 1;
            total += 1;
        }
        next = (next + 1) % machines;
    }
    Instance::new(capacities, lengths)
}
