//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use eplab_core::ep::{ep_characterizations, ep_construct, is_normal};
use eplab_core::fuglede::catalog::{constructed_ep_inputs, ep_not_normal_t};
use eplab_core::fuglede::{evaluate_catalog, CatalogReport, TheoremVerdict};
use eplab_core::pinv::{pinv, pinv_rank1};
use eplab_core::subspace::Subspace;
use eplab_core::suite::{run_selected, SuiteConfig, SuiteReport, SweepKind};
use eplab_core::{c, ComplexMatrix, Tolerance};

const SEED: u64 = 42;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn max_entry_error(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn median(mut v: Vec<Duration>) -> Duration {
    v.sort();
    v[v.len() / 2]
}

fn tol() -> Tolerance {
    Tolerance::new(1e-9)
}

fn pinv_ground_truth() -> Outcome {
    let t = ComplexMatrix::from_real_rows(&[[1.0, 1.0], [2.0, 2.0]]);
    let expected = ComplexMatrix::from_real_rows(&[[0.1, 0.2], [0.1, 0.2]]);
    // rank one: T† = T* / trace(T*T), trace(T*T) = 1 + 1 + 4 + 4
    let alpha = 10.0;
    let formula = t.adjoint().scale(c(1.0 / alpha, 0.0));

    let times: Vec<Duration> = (0..11)
        .map(|_| {
            let start = Instant::now();
            let _ = pinv(&t, &tol()).unwrap();
            start.elapsed()
        })
        .collect();
    let g = pinv(&t, &tol()).unwrap();
    let g1 = pinv_rank1(&t, &tol()).unwrap();
    let e_svd = max_entry_error(&g, &expected);
    let e_formula = max_entry_error(&g1, &formula).max(max_entry_error(&g1, &g));
    let elapsed = median(times);
    outcome(
        e_svd <= 1e-12 && e_formula <= 1e-12 && elapsed < Duration::from_millis(1),
        format!("pinv error {e_svd:.2e}, rank-one formula error {e_formula:.2e}, median {elapsed:?}"),
    )
}

fn ep_not_normal_block() -> Outcome {
    let t = ep_not_normal_t();
    let rep = ep_characterizations(&t, &tol()).unwrap();
    let normal = is_normal(&t, &tol()).unwrap();
    let reference = Subspace::from_columns(&ComplexMatrix::from_real_rows(&[[1.0], [-1.0], [-1.0]]), &tol()).unwrap();
    let d_t = Subspace::nullspace(&t, &tol()).unwrap().distance(&reference).unwrap();
    let d_ts = Subspace::nullspace(&t.adjoint(), &tol())
        .unwrap()
        .distance(&reference)
        .unwrap();
    outcome(
        rep.flags().iter().all(|&b| b) && !normal && d_t <= 1e-9 && d_ts <= 1e-9,
        format!(
            "characterizations {:?}, normal {normal}, null-space distances {d_t:.2e} / {d_ts:.2e}",
            rep.flags()
        ),
    )
}

fn construction_example() -> Outcome {
    let (spec, x) = constructed_ep_inputs();
    let expected = ComplexMatrix::from_rows(&[
        vec![c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)],
        vec![c(1.0, 1.0), c(1.0, 1.0), c(0.0, 0.0)],
        vec![c(0.0, 1.0), c(-1.0, 1.0), c(-1.0, 0.0)],
    ]);
    let t = ep_construct(&spec, &x, &tol()).unwrap();
    let err = max_entry_error(&t, &expected);
    let ep = ep_characterizations(&t, &tol()).unwrap().verdict;
    let normal = is_normal(&t, &tol()).unwrap();
    // W = {(x1, x1 + x2, x2)}
    let w = Subspace::from_columns(
        &ComplexMatrix::from_real_rows(&[[1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]),
        &tol(),
    )
    .unwrap();
    let range = Subspace::from_columns(&t, &tol()).unwrap().distance(&w).unwrap();
    outcome(
        err <= 1e-12 && ep && !normal && range <= 1e-9,
        format!("entry error {err:.2e}, EP {ep}, normal {normal}, range distance {range:.2e}"),
    )
}

fn fact<'a>(report: &'a CatalogReport, case: &str, checker: &str) -> &'a TheoremVerdict {
    let case = report.cases.iter().find(|c| c.case_id == case).expect("case");
    &case
        .checks
        .iter()
        .find(|c| c.checker == checker)
        .expect("checker")
        .verdict
}

fn residual(v: &TheoremVerdict, name: &str) -> f64 {
    v.fact(name).and_then(|f| f.residual).expect("residual")
}

fn holds(v: &TheoremVerdict, name: &str) -> bool {
    v.fact(name).expect("fact").holds
}

fn catalog_reproduction() -> Outcome {
    let start = Instant::now();
    let report = evaluate_catalog(&tol()).unwrap();
    let in_process = start.elapsed();

    let commuting = fact(&report, "commuting-not-adjoint", "fuglede-mp");
    let classic = fact(&report, "commuting-not-adjoint", "fuglede-classic");
    let putnam = fact(&report, "putnam-ep-pair", "putnam-mp");
    let putnam_classic = fact(&report, "putnam-ep-pair", "putnam-classic");
    let non_ep = fact(&report, "non-ep-mp-failure", "fuglede-mp");
    let asym = fact(&report, "product-asymmetric", "product-ep");
    let squares_ok = ["squares-non-ep", "squares-second-power"]
        .iter()
        .all(|id| report.cases.iter().any(|c| c.case_id == *id && c.passed));
    let product_ok = report.cases.iter().any(|c| c.case_id == "product-not-ep" && c.passed);

    let checks = [
        holds(commuting, "AT = TA"),
        residual(classic, "AN* = N*A") > 0.5,
        residual(commuting, "AT† = T†A") <= 1e-9,
        holds(putnam, "AT = SA"),
        !holds(putnam_classic, "AN* = M*A"),
        residual(putnam, "AT† = S†A") <= 1e-9,
        residual(non_ep, "AT† = T†A") > 0.01,
        holds(asym, "ST EP") && !holds(asym, "TS EP"),
        squares_ok,
        product_ok,
    ];

    let start = Instant::now();
    let cli = Command::new(env!("CARGO_BIN_EXE_eplab"))
        .arg("verify-paper")
        .output()
        .expect("run eplab");
    let cli_time = start.elapsed();
    let stdout = String::from_utf8_lossy(&cli.stdout);
    let cli_ok = cli.status.code() == Some(0) && stdout.contains("11/11 cases PASS");

    outcome(
        report.passed
            && report.cases.len() == 11
            && checks.iter().all(|&b| b)
            && cli_ok
            && in_process < Duration::from_secs(1)
            && cli_time < Duration::from_secs(1),
        format!(
            "{} cases, fact checks {:?}, commuting pair AT* residual {:.3e}, non-EP AT† residual {:.3e}, cli exit {:?}, {in_process:?} in process, {cli_time:?} via cli",
            report.cases.len(),
            checks,
            residual(classic, "AN* = N*A"),
            residual(non_ep, "AT† = T†A"),
            cli.status.code()
        ),
    )
}

fn sweep_outcome(report: &SuiteReport, expected_sweeps: usize, elapsed: Option<(Duration, Duration)>) -> Outcome {
    let failing: Vec<String> = report
        .sweeps
        .iter()
        .filter(|s| !s.passed)
        .map(|s| {
            format!(
                "{} ({} violations, {} misses, {} errors)",
                s.name, s.violations, s.hypothesis_misses, s.errors
            )
        })
        .collect();
    let trials: usize = report.sweeps.iter().map(|s| s.trials).sum();
    let worst = report.sweeps.iter().filter_map(|s| s.max_residual).fold(0.0, f64::max);
    let mut passed = report.passed && failing.is_empty() && report.sweeps.len() == expected_sweeps;
    let mut detail = format!(
        "{} sweeps, {trials} trials, {} violations, max residual {worst:.2e}",
        report.sweeps.len(),
        report.violations
    );
    if let Some((took, limit)) = elapsed {
        passed &= took < limit;
        detail.push_str(&format!(", {took:?}"));
    }
    if !failing.is_empty() {
        detail.push_str(&format!("; failing: {}", failing.join(", ")));
    }
    outcome(passed, detail)
}

fn config(trials: usize, max_dim: usize) -> SuiteConfig {
    SuiteConfig {
        tol: tol(),
        ..SuiteConfig::new(trials, max_dim, SEED)
    }
}

fn soundness() -> Outcome {
    let start = Instant::now();
    let report = run_selected(&config(200, 12), |s| s.kind == SweepKind::Soundness);
    sweep_outcome(&report, 16, Some((start.elapsed(), Duration::from_secs(30))))
}

fn consistency() -> Outcome {
    let report = run_selected(&config(200, 12), |s| s.kind == SweepKind::Consistency);
    sweep_outcome(&report, 12, None)
}

fn unanimity() -> Outcome {
    let report = run_selected(&config(500, 16), |s| s.name == "ep-unanimity");
    sweep_outcome(&report, 1, None)
}

fn svd_quality() -> Outcome {
    let report = run_selected(&config(500, 32), |s| s.name == "svd-quality");
    sweep_outcome(&report, 1, None)
}

fn rank_one() -> Outcome {
    let report = run_selected(&config(200, 12), |s| s.kind == SweepKind::RankOne);
    sweep_outcome(&report, 2, None)
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_eplab"))
            .args(["random-suite", "--trials", "200", "--seed", "42", "--json"])
            .env_remove("EPLAB_SEED")
            .output()
            .expect("run eplab")
    };
    let (a, b) = (run(), run());
    let same = a.stdout == b.stdout && !a.stdout.is_empty();
    outcome(
        same && a.status.code() == Some(0) && b.status.code() == Some(0),
        format!(
            "{} bytes, identical {same}, exit codes {:?} / {:?}",
            a.stdout.len(),
            a.status.code(),
            b.status.code()
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("pseudoinverse ground truth", pinv_ground_truth),
        ("EP but not normal block", ep_not_normal_block),
        ("EP construction example", construction_example),
        ("catalog reproduction", catalog_reproduction),
        ("theorem soundness sweep", soundness),
        ("consistency sweep", consistency),
        ("characterization unanimity", unanimity),
        ("SVD quality gates", svd_quality),
        ("rank-one facts", rank_one),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    let mut err = std::io::stderr();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let status = if o.passed { "PASS" } else { "FAIL" };
        failed += usize::from(!o.passed);
        let _ = writeln!(
            err,
            "{status} {:>2} {name}: {} [{:.2?}]",
            i + 1,
            o.detail,
            start.elapsed()
        );
    }
    let _ = writeln!(
        err,
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
