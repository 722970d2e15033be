//! Command-line behaviour: outputs, golden files and the exit-status
//! contract (0 ok, 1 infeasible, 2 input error, 3 internal error).

use std::path::{Path, PathBuf};
use std::process::Command;

use smcc::cli::{self, EXIT_INFEASIBLE, EXIT_INPUT, EXIT_OK};
use smcc::model::parse_instance;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn arg(path: &Path) -> String {
    path.to_string_lossy().into_owned()
}

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn smcc(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("smcc").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

#[test]
fn solve_pair_matches_golden() {
    let run = smcc(&["solve", &arg(&fixture("bench/pair.inst"))]);
    assert_eq!(run.code, EXIT_OK, "{}", run.err);
    let golden = std::fs::read_to_string(fixture("pair.solve.golden")).unwrap();
    assert_eq!(run.out, golden);
}

#[test]
fn solve_certificate_and_trace() {
    let run = smcc(&[
        "solve",
        &arg(&fixture("bench/four_jobs.inst")),
        "--certificate",
        "--trace",
    ]);
    assert_eq!(run.code, EXIT_OK, "{}", run.err);
    assert!(run.out.starts_with("makespan 5\n"));
    assert!(run.out.contains("\nratio_ok true\n"));
    assert!(run.out.contains("\nlower_bound lp 5 (5.000000)\n"));
    assert!(run.out.contains("\ntrace\niter=1 kind=F"));
}

#[test]
fn solve_malformed_names_the_line() {
    let run = smcc(&["solve", &arg(&fixture("malformed.inst"))]);
    assert_eq!(run.code, EXIT_INPUT);
    assert!(run.out.is_empty());
    assert!(run.err.contains("line 3"), "{}", run.err);
}

#[test]
fn solve_missing_file_is_an_input_error() {
    let run = smcc(&["solve", "/nonexistent/instance.inst"]);
    assert_eq!(run.code, EXIT_INPUT);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(smcc(&[]).code, EXIT_INPUT);
    assert_eq!(smcc(&["solve"]).code, EXIT_INPUT);
    assert_eq!(smcc(&["frobnicate"]).code, EXIT_INPUT);
    assert_eq!(smcc(&["--help"]).code, EXIT_OK);
}

#[test]
fn gen_is_deterministic_and_reparses() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.inst"), dir.path().join("b.inst"));
    for path in [&a, &b] {
        let run = smcc(&[
            "gen", "--k", "3", "--jobs", "8", "--cap-min", "1", "--cap-max", "4", "--t-max",
            "50", "--seed", "42", "--out", &arg(path),
        ]);
        assert_eq!(run.code, EXIT_OK, "{}", run.err);
    }
    let text = std::fs::read(&a).unwrap();
    assert_eq!(text, std::fs::read(&b).unwrap());
    let instance = parse_instance(std::str::from_utf8(&text).unwrap()).unwrap();
    assert_eq!((instance.machines(), instance.jobs()), (3, 8));
    assert!(instance.lengths().iter().all(|&t| t <= 50));
    assert!(instance.capacities().iter().all(|&m| (1..=4).contains(&m)));
}

#[test]
fn gen_rejects_impossible_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let out = arg(&dir.path().join("x.inst"));
    let too_many = smcc(&[
        "gen", "--k", "2", "--jobs", "3", "--cap-min", "1", "--cap-max", "1", "--t-max", "9",
        "--seed", "1", "--out", &out,
    ]);
    assert_eq!(too_many.code, EXIT_INPUT);
    assert!(!dir.path().join("x.inst").exists());
    let empty_range = smcc(&[
        "gen", "--k", "2", "--jobs", "1", "--cap-min", "3", "--cap-max", "2", "--t-max", "9",
        "--seed", "1", "--out", &out,
    ]);
    assert_eq!(empty_range.code, EXIT_INPUT);
}

#[test]
fn bench_fixtures_match_golden_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let run = smcc(&[
        "bench",
        &arg(&fixture("bench")),
        "--csv",
        &arg(&csv),
        "--no-timings",
    ]);
    assert_eq!(run.code, EXIT_OK, "{}", run.err);
    assert_eq!(run.out, "instances 3\nmax_ratio 1.000000\nindeterminate 0\n");
    let written = std::fs::read_to_string(&csv).unwrap();
    let golden = std::fs::read_to_string(fixture("bench.csv.golden")).unwrap();
    assert_eq!(written, golden);
    assert!(!written.contains('\r'));
}

#[test]
fn bench_with_timings_fills_the_columns() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let run = smcc(&["bench", &arg(&fixture("bench")), "--csv", &arg(&csv)]);
    assert_eq!(run.code, EXIT_OK, "{}", run.err);
    let text = std::fs::read_to_string(&csv).unwrap();
    for line in text.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 12);
        assert!(fields[9..].iter().all(|f| f.parse::<f64>().is_ok()), "{line}");
    }
}

#[test]
fn bench_empty_directory_writes_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let inputs = dir.path().join("empty");
    std::fs::create_dir(&inputs).unwrap();
    let csv = dir.path().join("out.csv");
    let run = smcc(&["bench", &arg(&inputs), "--csv", &arg(&csv)]);
    assert_eq!(run.code, EXIT_OK, "{}", run.err);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text, format!("{}\n", cli::BENCH_HEADER.join(",")));
    assert!(run.out.contains("instances 0\n"));
}

#[test]
fn bench_zero_budget_leaves_opt_blank() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let run = smcc(&[
        "bench",
        &arg(&fixture("bench")),
        "--csv",
        &arg(&csv),
        "--brute-budget",
        "0",
        "--no-timings",
    ]);
    assert_eq!(run.code, EXIT_OK, "{}", run.err);
    assert!(run.out.contains("indeterminate 3\n"));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().skip(1).all(|l| l.split(',').nth(7) == Some("")));
}

#[test]
fn verify_exit_statuses() {
    let instance = arg(&fixture("bench/pair.inst"));
    let ok = smcc(&["verify", &instance, &arg(&fixture("pair.schedule"))]);
    assert_eq!(ok.code, EXIT_OK, "{}", ok.err);
    assert!(ok.out.contains("feasible true"), "{}", ok.out);

    let over = smcc(&["verify", &instance, &arg(&fixture("pair_over_capacity.schedule"))]);
    assert_eq!(over.code, EXIT_INFEASIBLE);
    assert!(over.out.contains("machine 1"), "{}", over.out);

    let count = smcc(&["verify", &instance, &arg(&fixture("pair_wrong_count.schedule"))]);
    assert_eq!(count.code, EXIT_INPUT);
}

#[test]
fn binary_reports_exit_status_and_stderr() {
    let output = Command::new(env!("CARGO_BIN_EXE_smcc"))
        .args(["solve", &arg(&fixture("malformed.inst"))])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(EXIT_INPUT));
    assert!(output.stdout.is_empty());
    assert!(String::from_utf8_lossy(&output.stderr).starts_with("error: "));

    let output = Command::new(env!("CARGO_BIN_EXE_smcc"))
        .args(["solve", &arg(&fixture("bench/pair.inst"))])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(EXIT_OK));
    let golden = std::fs::read(fixture("pair.solve.golden")).unwrap();
    assert_eq!(output.stdout, golden);
}
