//! Command-line front end for `eplab-core`.

pub mod document;
pub mod error;
pub mod report;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use eplab_core::ep::{is_ep, is_normal, normality_residual, EpReport};
use eplab_core::fuglede::{evaluate, evaluate_catalog, product_facts, Operands, Rule};
use eplab_core::pinv::{penrose_check, pinv};
use eplab_core::subspace::Subspace;
use eplab_core::suite::{run_suite, SuiteConfig};
use eplab_core::{ep, Tolerance};
use serde::Serialize;

use document::{read_matrix, read_spec, MatrixDocument};
use error::{exit, CliError, CliResult};
use report::{catalog_text, sci, suite_text, verdict_table, yes_no, RunReport, Table};

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(
    name = "eplab",
    version,
    about = "EP matrices, Moore-Penrose inverses and Fuglede-Putnam type theorem checks"
)]
pub struct Cli {
    /// Hybrid Frobenius threshold for matrix equality.
    #[arg(long, global = true, default_value_t = Tolerance::DEFAULT_EQ_TOL, value_parser = positive_f64)]
    pub eq_tol: f64,
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the primary output to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Seed for randomized runs.
    #[arg(long, global = true, env = "EPLAB_SEED")]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Re-run every built-in counterexample and compare with its expected facts.
    VerifyPaper,
    /// Evaluate the five EP characterizations of a square matrix.
    CheckEp {
        #[arg(value_name = "MATRIX")]
        matrix: PathBuf,
    },
    /// Moore-Penrose inverse of a matrix.
    Pinv {
        #[arg(value_name = "MATRIX")]
        matrix: PathBuf,
        /// Also report the four Penrose equations.
        #[arg(long)]
        verify: bool,
    },
    /// EP matrix with a prescribed range given in constraint form.
    Construct {
        #[arg(value_name = "SPEC")]
        spec: PathBuf,
        /// Verify only; do not emit the matrix.
        #[arg(long)]
        check_only: bool,
    },
    /// Evaluate one theorem checker on matrix files.
    Fuglede {
        /// Checker to run, e.g. fuglede-mp, putnam-classic, squares, two-sided, product-ep, polar-corollary.
        #[arg(long, value_parser = parse_rule)]
        rule: Rule,
        /// Operand A.
        #[arg(long = "A", value_name = "FILE")]
        a: Option<PathBuf>,
        /// Operand B.
        #[arg(long = "B", value_name = "FILE")]
        b: Option<PathBuf>,
        /// Operand T.
        #[arg(long = "T", value_name = "FILE")]
        t: Option<PathBuf>,
        /// Operand S.
        #[arg(long = "S", value_name = "FILE")]
        s: Option<PathBuf>,
    },
    /// Seeded randomized soundness and consistency sweeps.
    RandomSuite {
        /// Trials per sweep.
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// Largest matrix dimension drawn.
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(2..=64))]
        max_dim: u64,
    },
}

fn positive_f64(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err("must be a positive finite number".into())
    }
}

fn parse_rule(s: &str) -> Result<Rule, String> {
    s.parse().map_err(|_| {
        let ids: Vec<&str> = Rule::ALL.iter().map(|r| r.id()).collect();
        format!("unknown rule `{s}`; expected one of {}", ids.join(", "))
    })
}

/// Primary and secondary output sinks.
struct Output {
    out: Option<PathBuf>,
}

impl Output {
    /// Writes to `--out` when given, else stdout.
    fn primary(&self, text: &str) -> CliResult<()> {
        match &self.out {
            Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            }),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    /// Goes to stdout unless stdout carries the primary output.
    fn secondary(&self, text: &str) {
        if self.out.is_some() {
            print!("{text}");
        } else {
            eprint!("{text}");
        }
    }
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit::IO_OR_PARSE } else { exit::PASS };
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli) -> CliResult<i32> {
    let tol = Tolerance::new(cli.eq_tol);
    let out = Output { out: cli.out.clone() };
    match &cli.command {
        Command::VerifyPaper => verify_catalog(cli, &tol, &out),
        Command::CheckEp { matrix } => check_ep(cli, &tol, &out, matrix),
        Command::Pinv { matrix, verify } => pinv_cmd(&tol, &out, matrix, *verify),
        Command::Construct { spec, check_only } => construct(&tol, &out, spec, *check_only),
        Command::Fuglede { rule, a, b, t, s } => {
            let load = |p: &Option<PathBuf>| p.as_deref().map(read_matrix).transpose();
            let ops = Operands {
                a: load(a)?,
                b: load(b)?,
                t: load(t)?,
                s: load(s)?,
            };
            fuglede(cli, &tol, &out, *rule, &ops)
        }
        Command::RandomSuite { trials, max_dim } => random_suite(cli, &tol, &out, *trials as usize, *max_dim as usize),
    }
}

fn verify_catalog(cli: &Cli, tol: &Tolerance, out: &Output) -> CliResult<i32> {
    let start = Instant::now();
    let report = evaluate_catalog(tol)?;
    let elapsed = start.elapsed().as_secs_f64();
    if cli.json {
        #[derive(Serialize)]
        struct Body<'a> {
            cases: &'a [eplab_core::fuglede::catalog::CaseOutcome],
        }
        let run =
            RunReport::new("verify-paper", tol, Body { cases: &report.cases }, report.passed).with_elapsed(elapsed);
        out.primary(&run.to_json())?;
    } else {
        out.primary(&catalog_text(&report))?;
    }
    match report.first_mismatch() {
        None => Ok(exit::PASS),
        Some(e) => {
            eprintln!("error: {e}");
            Ok(exit::CATALOG_MISMATCH)
        }
    }
}

#[derive(Serialize)]
struct Characterization {
    name: &'static str,
    holds: bool,
    residual: f64,
}

fn characterizations(rep: &EpReport) -> Vec<Characterization> {
    EpReport::NAMES
        .iter()
        .zip(rep.flags())
        .zip(rep.residuals)
        .map(|((&name, holds), residual)| Characterization { name, holds, residual })
        .collect()
}

fn check_ep(cli: &Cli, tol: &Tolerance, out: &Output, path: &Path) -> CliResult<i32> {
    let start = Instant::now();
    let t = read_matrix(path)?;
    let rep = is_ep(&t, tol)?;
    let normal = is_normal(&t, tol)?;
    let normality = normality_residual(&t)?;
    let elapsed = start.elapsed().as_secs_f64();
    if cli.json {
        #[derive(Serialize)]
        struct Body {
            rows: usize,
            cols: usize,
            characterizations: Vec<Characterization>,
            ep: bool,
            normal: bool,
            normality_residual: f64,
        }
        let body = Body {
            rows: t.rows(),
            cols: t.cols(),
            characterizations: characterizations(&rep),
            ep: rep.verdict,
            normal,
            normality_residual: normality,
        };
        out.primary(
            &RunReport::new("check-ep", tol, body, rep.verdict)
                .with_elapsed(elapsed)
                .to_json(),
        )?;
    } else {
        let mut table = Table::new(&["characterization", "holds", "residual"]);
        for ch in characterizations(&rep) {
            table.row(vec![
                ch.name.to_string(),
                yes_no(ch.holds).to_string(),
                sci(ch.residual),
            ]);
        }
        let mut text = table.render();
        text.push_str(&format!("EP: {}, normal: {}\n", yes_no(rep.verdict), yes_no(normal)));
        out.primary(&text)?;
    }
    Ok(if rep.verdict {
        exit::PASS
    } else {
        exit::PREDICATE_NEGATIVE
    })
}

fn penrose_text(
    t: &eplab_core::ComplexMatrix,
    g: &eplab_core::ComplexMatrix,
    tol: &Tolerance,
) -> CliResult<(String, bool)> {
    let rep = penrose_check(t, g, tol)?;
    let names = ["TGT = T", "GTG = G", "(TG)* = TG", "(GT)* = GT"];
    let flags = [rep.eq1_holds, rep.eq2_holds, rep.eq3_holds, rep.eq4_holds];
    let mut table = Table::new(&["penrose equation", "holds", "residual"]);
    for ((name, holds), r) in names.iter().zip(flags).zip(rep.residuals) {
        table.row(vec![name.to_string(), yes_no(holds).to_string(), sci(r)]);
    }
    Ok((table.render(), rep.all_hold()))
}

fn pinv_cmd(tol: &Tolerance, out: &Output, path: &Path, verify: bool) -> CliResult<i32> {
    let t = read_matrix(path)?;
    let g = pinv(&t, tol)?;
    out.primary(&MatrixDocument::from_matrix(&g).to_json())?;
    if verify {
        let (text, ok) = penrose_text(&t, &g, tol)?;
        out.secondary(&text);
        if !ok {
            return Err(
                eplab_core::Error::Postcondition("Penrose equations fail for the computed inverse".into()).into(),
            );
        }
    }
    Ok(exit::PASS)
}

fn construct(tol: &Tolerance, out: &Output, path: &Path, check_only: bool) -> CliResult<i32> {
    let (spec, x) = read_spec(path)?;
    // ep_construct re-verifies EP-ness and the range before returning.
    let t = eplab_core::ep::ep_construct(&spec, &x, tol)?;
    let w = spec.to_subspace(tol)?;
    let distance = Subspace::from_columns(&t, tol)?.distance(&w)?;
    let summary = format!(
        "EP: yes, normal: {}, R(T) = W: yes (projector distance {})\n",
        yes_no(ep::is_normal(&t, tol)?),
        sci(distance)
    );
    if check_only {
        out.primary(&summary)?;
    } else {
        out.primary(&MatrixDocument::from_matrix(&t).to_json())?;
        out.secondary(&summary);
    }
    Ok(exit::PASS)
}

fn fuglede(cli: &Cli, tol: &Tolerance, out: &Output, rule: Rule, ops: &Operands) -> CliResult<i32> {
    let start = Instant::now();
    let v = evaluate(rule, ops, tol)?;
    let elapsed = start.elapsed().as_secs_f64();
    if cli.json {
        #[derive(Serialize)]
        struct Body<'a> {
            rule: Rule,
            verdict: &'a eplab_core::fuglede::TheoremVerdict,
        }
        let run = RunReport::new("fuglede", tol, Body { rule, verdict: &v }, v.consistent).with_elapsed(elapsed);
        out.primary(&run.to_json())?;
    } else {
        let mut text = format!("rule {rule}\n");
        text.push_str(&verdict_table(&v));
        if rule == Rule::ProductEp {
            let holds = |name| v.fact(name).is_some_and(|f| f.holds);
            text.push_str(&format!(
                "ST EP: {}, TS EP: {}\n",
                yes_no(holds(product_facts::ST_EP)),
                yes_no(holds(product_facts::TS_EP))
            ));
        }
        text.push_str(&format!("consistent: {}\n", yes_no(v.consistent)));
        out.primary(&text)?;
    }
    if v.consistent {
        Ok(exit::PASS)
    } else {
        eprintln!("error: {rule}: hypotheses hold but a conclusion fails");
        Ok(exit::THEOREM_VIOLATION)
    }
}

fn random_suite(cli: &Cli, tol: &Tolerance, out: &Output, trials: usize, max_dim: usize) -> CliResult<i32> {
    let start = Instant::now();
    let cfg = SuiteConfig {
        tol: *tol,
        ..SuiteConfig::new(trials, max_dim, cli.seed.unwrap_or(DEFAULT_SEED))
    };
    let report = run_suite(&cfg);
    if cli.json {
        // No timing in the report: equal flags give byte-identical output.
        out.primary(&RunReport::new("random-suite", tol, &report, report.passed).to_json())?;
    } else {
        out.primary(&suite_text(&report))?;
    }
    eprintln!("random-suite finished in {:.2} s", start.elapsed().as_secs_f64());
    Ok(if report.passed {
        exit::PASS
    } else {
        exit::THEOREM_VIOLATION
    })
}
