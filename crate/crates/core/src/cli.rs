//! Command-line front end.
//!
//! Exit statuses: 0 success, 1 infeasible schedule (`verify`), 2 input or
//! usage error, 3 internal invariant or guarantee violation.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use crate::model::{
    generate_instance, makespan, parse_instance, parse_schedule, verify_schedule, Instance,
    IntRange,
};
use crate::oracles::{brute_force_opt, greedy_lpt_capacity, BruteForceLimits};
use crate::rounding::{ira_with, AuditMode, IraError, IraOptions, RoundingResult};
use crate::scalar::{format_decimal, rational_from_u64};
use crate::Rational;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Fixed column order of the benchmark CSV.
pub const BENCH_HEADER: [&str; 12] = [
    "instance_id",
    "k",
    "M",
    "t_max",
    "c_star",
    "ira_makespan",
    "greedy_makespan",
    "opt",
    "ratio_vs_best_bound",
    "ira_ms",
    "greedy_ms",
    "brute_ms",
];

#[derive(Debug, Parser)]
#[command(
    name = "smcc",
    version,
    about = "Makespan scheduling with machine capacities via iterative LP rounding"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve an instance file and print the makespan and schedule.
    Solve {
        file: PathBuf,
        /// Append lower bounds, final budgets and the guarantee audit.
        #[arg(long)]
        certificate: bool,
        /// Append one line per rounding transition.
        #[arg(long)]
        trace: bool,
    },
    /// Write a reproducible random instance.
    Gen {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        jobs: usize,
        #[arg(long)]
        cap_min: u64,
        #[arg(long)]
        cap_max: u64,
        /// Job lengths are drawn from [0, t_max].
        #[arg(long)]
        t_max: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run rounding, greedy and the exact oracle on every `*.inst` / `*.txt`
    /// file of a directory.
    Bench {
        dir: PathBuf,
        #[arg(long)]
        csv: PathBuf,
        /// Search-node budget of the exact oracle; 0 disables it.
        #[arg(long, default_value_t = 1_000_000)]
        brute_budget: u64,
        /// Leave the wall-time columns blank so output is reproducible.
        #[arg(long)]
        no_timings: bool,
    },
    /// Check a schedule file against an instance file.
    Verify { instance: PathBuf, schedule: PathBuf },
}

/// Parse `args` (program name first) and run the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Solve {
            file,
            certificate,
            trace,
        } => cmd_solve(&file, certificate, trace, out),
        Command::Gen {
            k,
            jobs,
            cap_min,
            cap_max,
            t_max,
            seed,
            out: path,
        } => cmd_gen(k, jobs, IntRange::new(cap_min, cap_max), t_max, seed, &path),
        Command::Bench {
            dir,
            csv,
            brute_budget,
            no_timings,
        } => cmd_bench(&dir, &csv, brute_budget, !no_timings, out),
        Command::Verify { instance, schedule } => cmd_verify(&instance, &schedule, out),
    };
    match outcome {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

fn internal_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INTERNAL,
        message: message.into(),
    }
}

fn io_failure(e: std::io::Error) -> Failure {
    input_error(format!("write failed: {e}"))
}

fn read_instance(path: &Path) -> Result<Instance, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn solve_instance(instance: &Instance, audit: AuditMode) -> Result<RoundingResult, Failure> {
    ira_with(instance, IraOptions { audit }).map_err(|e| match e {
        IraError::InternalInvariantViolation { .. } => internal_error(e.to_string()),
        IraError::Relaxation(_) => internal_error(e.to_string()),
    })
}

fn cmd_solve(
    path: &Path,
    certificate: bool,
    trace: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let instance = read_instance(path)?;
    let audit = if certificate {
        AuditMode::Every
    } else {
        AuditMode::default()
    };
    let result = solve_instance(&instance, audit)?;
    let mut text = format!(
        "makespan {}\n{}\n",
        result.certificate.makespan,
        result.schedule.to_line()
    );
    if certificate {
        text.push_str("certificate\n");
        text.push_str(&result.certificate.to_text());
        for audit in &result.audits {
            text.push_str(&format!("{audit}\n"));
        }
    }
    if trace {
        text.push_str("trace\n");
        text.push_str(&result.trace_text());
    }
    out.write_all(text.as_bytes()).map_err(io_failure)?;
    Ok(EXIT_OK)
}

fn cmd_gen(
    k: usize,
    jobs: usize,
    caps: IntRange,
    t_max: u64,
    seed: u64,
    path: &Path,
) -> Result<i32, Failure> {
    let instance = generate_instance(k, jobs, caps, IntRange::new(0, t_max), seed)
        .map_err(|e| input_error(e.to_string()))?;
    let text = format!(
        "# smcc gen k={k} jobs={jobs} cap=[{},{}] t_max={t_max} seed={seed}\n{}",
        caps.min,
        caps.max,
        instance.to_text()
    );
    fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    Ok(EXIT_OK)
}

/// One benchmark result, ready for CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub instance_id: String,
    pub k: usize,
    pub jobs: usize,
    pub t_max: u64,
    pub c_star: Rational,
    pub ira_makespan: u64,
    pub greedy_makespan: u64,
    pub opt: Option<u64>,
    /// IRA makespan over the best known lower bound (the oracle's optimum
    /// when available).
    pub ratio: Rational,
    /// Wall time in milliseconds for IRA, greedy and the oracle.
    pub timings: Option<[f64; 3]>,
}

impl BenchRow {
    pub fn record(&self) -> Vec<String> {
        let ms = |i: usize| {
            self.timings
                .map(|t| format!("{:.3}", t[i]))
                .unwrap_or_default()
        };
        vec![
            self.instance_id.clone(),
            self.k.to_string(),
            self.jobs.to_string(),
            self.t_max.to_string(),
            format_decimal(&self.c_star, 6),
            self.ira_makespan.to_string(),
            self.greedy_makespan.to_string(),
            self.opt.map(|o| o.to_string()).unwrap_or_default(),
            format_decimal(&self.ratio, 6),
            ms(0),
            ms(1),
            ms(2),
        ]
    }
}

/// Run every solver on one instance.
pub fn bench_instance(
    id: &str,
    instance: &Instance,
    brute_budget: u64,
    timings: bool,
) -> Result<BenchRow, IraError> {
    let started = Instant::now();
    let result = ira_with(instance, IraOptions::default())?;
    let ira_ms = started.elapsed().as_secs_f64() * 1e3;

    let started = Instant::now();
    let greedy = greedy_lpt_capacity(instance);
    let greedy_makespan = makespan(instance, &greedy).expect("greedy covers every job");
    let greedy_ms = started.elapsed().as_secs_f64() * 1e3;

    let started = Instant::now();
    let opt = brute_force_opt(instance, BruteForceLimits::states(brute_budget)).opt();
    let brute_ms = started.elapsed().as_secs_f64() * 1e3;

    let mut best = result.certificate.lower_bounds.best();
    if let Some(o) = opt {
        best = best.max(rational_from_u64(o));
    }
    let a = rational_from_u64(result.certificate.makespan);
    // A zero bound means every job has length zero, so the makespan is too.
    let ratio = if best == Rational::from_integer(0.into()) {
        Rational::from_integer(1.into())
    } else {
        a / best
    };
    Ok(BenchRow {
        instance_id: id.to_string(),
        k: instance.machines(),
        jobs: instance.jobs(),
        t_max: instance.max_length(),
        c_star: result.c_star,
        ira_makespan: result.certificate.makespan,
        greedy_makespan,
        opt,
        ratio,
        timings: timings.then_some([ira_ms, greedy_ms, brute_ms]),
    })
}

/// Instance files of a benchmark directory, sorted by file name.
pub fn bench_inputs(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .filter(|p| matches!(p.extension().and_then(|e| e.to_str()), Some("inst" | "txt")))
        .collect();
    files.sort();
    Ok(files)
}

fn cmd_bench(
    dir: &Path,
    csv_path: &Path,
    brute_budget: u64,
    timings: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let files =
        bench_inputs(dir).map_err(|e| input_error(format!("{}: {e}", dir.display())))?;
    let mut inputs = Vec::with_capacity(files.len());
    for path in &files {
        let id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        inputs.push((id, read_instance(path)?));
    }
    let rows: Vec<Result<BenchRow, (String, IraError)>> = inputs
        .par_iter()
        .map(|(id, inst)| bench_instance(id, inst, brute_budget, timings).map_err(|e| (id.clone(), e)))
        .collect();
    let rows = rows
        .into_iter()
        .collect::<Result<Vec<_>, _>>()
        .map_err(|(id, e)| internal_error(format!("{id}: {e}")))?;

    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(csv_path)
        .map_err(|e| input_error(format!("{}: {e}", csv_path.display())))?;
    let csv_failure = |e: csv::Error| input_error(format!("{}: {e}", csv_path.display()));
    writer.write_record(BENCH_HEADER).map_err(csv_failure)?;
    for row in &rows {
        writer.write_record(row.record()).map_err(csv_failure)?;
    }
    writer.flush().map_err(|e| input_error(e.to_string()))?;

    let three = rational_from_u64(3);
    let max_ratio = rows.iter().map(|r| r.ratio.clone()).max();
    let indeterminate = rows.iter().filter(|r| r.opt.is_none()).count();
    let summary = format!(
        "instances {}\nmax_ratio {}\nindeterminate {}\n",
        rows.len(),
        max_ratio
            .as_ref()
            .map(|r| format_decimal(r, 6))
            .unwrap_or_else(|| "n/a".into()),
        indeterminate
    );
    out.write_all(summary.as_bytes()).map_err(io_failure)?;
    if let Some(bad) = rows.iter().find(|r| r.ratio > three) {
        return Err(internal_error(format!(
            "{}: ratio {} exceeds 3",
            bad.instance_id,
            format_decimal(&bad.ratio, 6)
        )));
    }
    Ok(EXIT_OK)
}

fn cmd_verify(instance_path: &Path, schedule_path: &Path, out: &mut dyn Write) -> Result<i32, Failure> {
    let instance = read_instance(instance_path)?;
    let text = fs::read_to_string(schedule_path)
        .map_err(|e| input_error(format!("{}: {e}", schedule_path.display())))?;
    let schedule = parse_schedule(&text, &instance)
        .map_err(|e| input_error(format!("{}: {e}", schedule_path.display())))?;
    let report = verify_schedule(&instance, &schedule);
    out.write_all(report.to_string().as_bytes())
        .map_err(io_failure)?;
    Ok(if report.feasible {
        EXIT_OK
    } else {
        EXIT_INFEASIBLE
    })
}
