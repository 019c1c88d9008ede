//! Seeded randomized sweeps over the checkers.
//!
//! Soundness sweeps feed each statement inputs that satisfy its hypotheses
//! by construction and require every conclusion to hold. Consistency sweeps
//! feed unstructured inputs and require that no checker ever reports a
//! counterexample. The remaining sweeps gate the SVD, the agreement of the EP
//! characterizations, and the rank-one facts.
//!
//! Trial `i` of sweep `k` draws from stream `(k << 32) | i` of the suite
//! seed, so trials run in parallel and the report does not depend on
//! scheduling.

pub mod generators;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::ep::random::{
    gaussian_matrix, haar_unitary, random_low_rank, rank1_ep_complex, rank1_ep_real, rank1_general, rng_for, TestRng,
};
use crate::ep::{check_rank1_remarks, ep_characterizations, random::random_ep_with};
use crate::error::Result;
use crate::fuglede::{evaluate, product_facts, Operands, Rule, TheoremVerdict};
use crate::linalg::{svd, ComplexMatrix, Tolerance};
use generators::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepKind {
    Soundness,
    Consistency,
    SvdQuality,
    Unanimity,
    RankOne,
}

/// Run parameters.
#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub trials: usize,
    pub min_dim: usize,
    pub max_dim: usize,
    pub seed: u64,
    pub tol: Tolerance,
}

impl SuiteConfig {
    pub fn new(trials: usize, max_dim: usize, seed: u64) -> Self {
        Self {
            trials,
            min_dim: 2,
            max_dim,
            seed,
            tol: Tolerance::default(),
        }
    }
}

/// Outcome of one trial.
#[derive(Debug, Clone)]
pub struct Trial {
    pub dim: usize,
    pub hypotheses_hold: bool,
    pub conclusions_hold: bool,
    pub residual: Option<f64>,
    pub detail: String,
}

type TrialFn = fn(&mut TestRng, usize, &Tolerance) -> Result<Trial>;

/// A named sweep with its dimension range.
#[derive(Clone, Copy)]
pub struct Sweep {
    pub name: &'static str,
    pub kind: SweepKind,
    run: TrialFn,
    dims: Dims,
}

#[derive(Clone, Copy)]
enum Dims {
    /// `[min_dim, max_dim]` from the config.
    Config,
    Fixed(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialFailure {
    pub trial: usize,
    pub dim: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub name: &'static str,
    pub kind: SweepKind,
    pub trials: usize,
    /// Trials whose conclusions failed while the hypotheses held.
    pub violations: usize,
    /// Soundness trials whose generated input missed a hypothesis.
    pub hypothesis_misses: usize,
    pub errors: usize,
    pub max_residual: Option<f64>,
    pub first_failure: Option<TrialFailure>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub trials: usize,
    pub min_dim: usize,
    pub max_dim: usize,
    pub eq_tol: f64,
    pub sweeps: Vec<SweepSummary>,
    pub violations: usize,
    pub passed: bool,
}

fn describe(v: &TheoremVerdict) -> String {
    v.facts()
        .filter(|f| !f.holds)
        .map(|f| match f.residual {
            Some(r) => format!("{} fails ({r:.3e})", f.name),
            None => format!("{} fails", f.name),
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn from_verdict(dim: usize, v: &TheoremVerdict) -> Trial {
    Trial {
        dim,
        hypotheses_hold: v.hypotheses_hold(),
        conclusions_hold: v.conclusions_hold(),
        residual: Some(v.max_conclusion_residual()),
        detail: describe(v),
    }
}

/// Soundness trial from selected facts of a verdict.
fn from_facts(dim: usize, v: &TheoremVerdict, hyp: &[&str], conc: &[&str]) -> Trial {
    let all = |names: &[&str]| names.iter().all(|n| v.fact(n).is_some_and(|f| f.holds));
    let residual = conc
        .iter()
        .filter_map(|n| v.fact(n).and_then(|f| f.residual))
        .fold(None, |m: Option<f64>, r| Some(m.map_or(r, |m| m.max(r))));
    Trial {
        dim,
        hypotheses_hold: all(hyp),
        conclusions_hold: all(conc),
        residual,
        detail: describe(v),
    }
}

fn rule_trial(rule: Rule, ops: &Operands, n: usize, tol: &Tolerance) -> Result<Trial> {
    Ok(from_verdict(n, &evaluate(rule, ops, tol)?))
}

macro_rules! soundness {
    ($name:literal, $rule:expr, $gen:expr) => {
        Sweep {
            name: $name,
            kind: SweepKind::Soundness,
            run: |rng, n, tol| rule_trial($rule, &$gen(n, rng), n, tol),
            dims: Dims::Config,
        }
    };
}

fn fuglede_classic_input(n: usize, rng: &mut TestRng) -> Operands {
    putnam_classic(n, true, rng)
}

fn fuglede_mp_input(n: usize, rng: &mut TestRng) -> Operands {
    ep_intertwined(n, true, rng)
}

fn product_trial(ops: &Operands, n: usize, tol: &Tolerance, hyp: &[&str], conc: &[&str]) -> Result<Trial> {
    let v = evaluate(Rule::ProductEp, ops, tol)?;
    Ok(from_facts(n, &v, hyp, conc))
}

fn consistency_trial(rule: Rule, rng: &mut TestRng, n: usize, tol: &Tolerance) -> Result<Trial> {
    let v = evaluate(rule, &arbitrary_operands(n, rng), tol)?;
    Ok(Trial {
        dim: n,
        hypotheses_hold: true,
        conclusions_hold: v.consistent,
        residual: None,
        detail: describe(&v),
    })
}

macro_rules! consistency {
    ($name:literal, $rule:expr) => {
        Sweep {
            name: $name,
            kind: SweepKind::Consistency,
            run: |rng, n, tol| consistency_trial($rule, rng, n, tol),
            dims: Dims::Config,
        }
    };
}

/// Reconstruction and unitarity residuals relative to `max(1, ‖M‖_F)`.
fn svd_trial(rng: &mut TestRng, _n: usize, _tol: &Tolerance) -> Result<Trial> {
    let rows = rng.random_range(1..=32usize);
    let cols = rng.random_range(1..=32usize);
    let scale = 10f64.powf(rng.random_range(-3.0..3.0));
    let m = if rng.random_bool(0.3) {
        // rank-deficient
        let k = rows.min(cols);
        let r = rng.random_range(0..=k);
        &gaussian_matrix(rows, r, rng) * &gaussian_matrix(r, cols, rng)
    } else {
        gaussian_matrix(rows, cols, rng)
    }
    .scale(num_complex::Complex64::new(scale, 0.0));
    let f = svd(&m)?;
    let denom = m.frobenius_norm().max(1.0);
    let recon = f.reconstruct().distance(&m)?;
    let wl = (&f.left.adjoint() * &f.left).distance(&ComplexMatrix::identity(rows))?;
    let wr = (&f.right.adjoint() * &f.right).distance(&ComplexMatrix::identity(cols))?;
    let sorted = f.singular_values.windows(2).all(|w| w[0] >= w[1]) && f.singular_values.iter().all(|&s| s >= 0.0);
    let worst = recon.max(wl).max(wr) / denom;
    Ok(Trial {
        dim: rows.max(cols),
        hypotheses_hold: true,
        conclusions_hold: worst <= 1e-10 && sorted,
        residual: Some(worst),
        detail: format!("{rows}x{cols}: reconstruction {recon:.3e}, left {wl:.3e}, right {wr:.3e}, sorted {sorted}"),
    })
}

/// Mixed matrix families for the unanimity sweep.
fn mixed_matrix(n: usize, rng: &mut TestRng) -> ComplexMatrix {
    match rng.random_range(0..7u32) {
        0 => gaussian_matrix(n, n, rng),
        1 => {
            let r = rng.random_range(0..=n);
            random_ep_with(n, r, rng.random_bool(0.5), rng).expect("rank in range")
        }
        2 => {
            let r = rng.random_range(0..n);
            random_low_rank(n, r, rng)
        }
        3 => rank1_ep_complex(n, rng),
        4 => rank1_general(n, rng),
        5 => {
            // strictly upper triangular, nilpotent
            let g = gaussian_matrix(n, n, rng);
            ComplexMatrix::from_fn(n, n, |i, j| {
                if j > i {
                    g[(i, j)]
                } else {
                    num_complex::Complex64::new(0.0, 0.0)
                }
            })
        }
        _ => {
            // EP block padded by a non-EP tail
            let q = haar_unitary(n, rng);
            let r = rng.random_range(1..n);
            let mut core = gaussian_matrix(n, n, rng);
            for i in r..n {
                for j in 0..n {
                    core[(i, j)] = num_complex::Complex64::new(0.0, 0.0);
                }
            }
            &(&q * &core) * &q.adjoint()
        }
    }
}

fn unanimity_trial(rng: &mut TestRng, n: usize, tol: &Tolerance) -> Result<Trial> {
    let t = mixed_matrix(n, rng);
    let rep = ep_characterizations(&t, tol)?;
    Ok(Trial {
        dim: n,
        hypotheses_hold: true,
        conclusions_hold: rep.unanimous(),
        residual: None,
        detail: format!("flags {:?}, residuals {:?}", rep.flags(), rep.residuals),
    })
}

fn rank1_trial(real: bool, rng: &mut TestRng, n: usize, tol: &Tolerance) -> Result<Trial> {
    let t = if real {
        rank1_ep_real(n, rng)
    } else {
        rank1_ep_complex(n, rng)
    };
    let r = check_rank1_remarks(&t, tol)?;
    let residual = if real {
        r.symmetry_residual
    } else {
        r.normality_residual
    };
    Ok(Trial {
        dim: n,
        hypotheses_hold: r.is_rank1 && r.is_ep && (!real || r.is_real),
        conclusions_hold: residual <= 1e-9 && r.implications_hold(),
        residual: Some(residual),
        detail: format!("{r:?}"),
    })
}

/// Every sweep, in report order.
pub fn sweeps() -> Vec<Sweep> {
    use product_facts::*;
    vec![
        soundness!("fuglede-classic", Rule::FugledeClassic, fuglede_classic_input),
        soundness!("fuglede-mp", Rule::FugledeMp, fuglede_mp_input),
        soundness!("fuglede-star-product", Rule::FugledeStarProduct, |n, rng| {
            adjoint_commuting(n, true, rng)
        }),
        soundness!("fuglede-mp-star", Rule::FugledeMpStar, |n, rng| adjoint_commuting(
            n, true, rng
        )),
        soundness!("putnam-classic", Rule::PutnamClassic, |n, rng| putnam_classic(
            n, false, rng
        )),
        soundness!("putnam-mp", Rule::PutnamMp, |n, rng| ep_intertwined(n, false, rng)),
        soundness!("putnam-star-product", Rule::PutnamStarProduct, |n, rng| {
            adjoint_commuting(n, false, rng)
        }),
        soundness!("putnam-mp-star", Rule::PutnamMpStar, |n, rng| adjoint_commuting(
            n, false, rng
        )),
        soundness!("squares", Rule::Squares, squares),
        soundness!("two-sided", Rule::TwoSided, |n, rng| two_sided(n, true, rng)),
        soundness!("two-sided-pair", Rule::TwoSided, |n, rng| two_sided(n, false, rng)),
        Sweep {
            name: "product-range-null",
            kind: SweepKind::Soundness,
            run: |rng, n, tol| product_trial(&ep_pair(n, rng), n, tol, &[S_EP, T_EP], &[RANGE_NULL_CRITERION]),
            dims: Dims::Config,
        },
        Sweep {
            name: "reverse-order-forward",
            kind: SweepKind::Soundness,
            run: |rng, n, tol| {
                let ops = reverse_order_pair(n, &EP_PRODUCT_KINDS, rng);
                product_trial(
                    &ops,
                    n,
                    tol,
                    &[REVERSE_ORDER, ST_EP, TS_EP],
                    &[LEFT_COMMUTE, RIGHT_COMMUTE],
                )
            },
            dims: Dims::Config,
        },
        Sweep {
            name: "reverse-order-backward",
            kind: SweepKind::Soundness,
            run: |rng, n, tol| {
                let ops = reverse_order_pair(n, &EP_PRODUCT_KINDS, rng);
                product_trial(
                    &ops,
                    n,
                    tol,
                    &[REVERSE_ORDER, LEFT_COMMUTE, RIGHT_COMMUTE],
                    &[ST_EP, TS_EP],
                )
            },
            dims: Dims::Config,
        },
        Sweep {
            name: "reverse-order-biconditional",
            kind: SweepKind::Soundness,
            run: |rng, n, tol| {
                let ops = reverse_order_pair(n, &ALL_BLOCK_KINDS, rng);
                product_trial(&ops, n, tol, &[REVERSE_ORDER], &[REVERSE_ORDER_CRITERION])
            },
            dims: Dims::Config,
        },
        soundness!("polar-corollary", Rule::PolarCorollary, polar_pair),
        consistency!("consistency/fuglede-classic", Rule::FugledeClassic),
        consistency!("consistency/fuglede-mp", Rule::FugledeMp),
        consistency!("consistency/fuglede-star-product", Rule::FugledeStarProduct),
        consistency!("consistency/fuglede-mp-star", Rule::FugledeMpStar),
        consistency!("consistency/putnam-classic", Rule::PutnamClassic),
        consistency!("consistency/putnam-mp", Rule::PutnamMp),
        consistency!("consistency/putnam-star-product", Rule::PutnamStarProduct),
        consistency!("consistency/putnam-mp-star", Rule::PutnamMpStar),
        consistency!("consistency/squares", Rule::Squares),
        consistency!("consistency/two-sided", Rule::TwoSided),
        consistency!("consistency/product-ep", Rule::ProductEp),
        consistency!("consistency/polar-corollary", Rule::PolarCorollary),
        Sweep {
            name: "svd-quality",
            kind: SweepKind::SvdQuality,
            run: svd_trial,
            dims: Dims::Fixed(1, 32),
        },
        Sweep {
            name: "ep-unanimity",
            kind: SweepKind::Unanimity,
            run: unanimity_trial,
            dims: Dims::Fixed(2, 16),
        },
        Sweep {
            name: "rank-one-complex",
            kind: SweepKind::RankOne,
            run: |rng, n, tol| rank1_trial(false, rng, n, tol),
            dims: Dims::Config,
        },
        Sweep {
            name: "rank-one-real",
            kind: SweepKind::RankOne,
            run: |rng, n, tol| rank1_trial(true, rng, n, tol),
            dims: Dims::Config,
        },
    ]
}

impl Sweep {
    /// Runs `trials` trials; `index` selects the random stream family.
    pub fn run(&self, index: usize, cfg: &SuiteConfig) -> SweepSummary {
        let (lo, hi) = match self.dims {
            Dims::Config => (cfg.min_dim, cfg.max_dim.max(cfg.min_dim)),
            Dims::Fixed(lo, hi) => (lo, hi),
        };
        let outcomes: Vec<(usize, Result<Trial>)> = (0..cfg.trials)
            .into_par_iter()
            .map(|i| {
                let mut rng = rng_for(cfg.seed, ((index as u64) << 32) | i as u64);
                let n = rng.random_range(lo..=hi);
                (i, (self.run)(&mut rng, n, &cfg.tol))
            })
            .collect();

        let mut s = SweepSummary {
            name: self.name,
            kind: self.kind,
            trials: cfg.trials,
            violations: 0,
            hypothesis_misses: 0,
            errors: 0,
            max_residual: None,
            first_failure: None,
            passed: true,
        };
        for (i, outcome) in outcomes {
            let failure = match outcome {
                Err(e) => {
                    s.errors += 1;
                    Some(TrialFailure {
                        trial: i,
                        dim: 0,
                        detail: format!("error: {e}"),
                    })
                }
                Ok(t) if !t.hypotheses_hold => {
                    s.hypothesis_misses += 1;
                    Some(TrialFailure {
                        trial: i,
                        dim: t.dim,
                        detail: format!("hypothesis not met: {}", t.detail),
                    })
                }
                Ok(t) => {
                    if let Some(r) = t.residual {
                        s.max_residual = Some(s.max_residual.map_or(r, |m: f64| m.max(r)));
                    }
                    if t.conclusions_hold {
                        None
                    } else {
                        s.violations += 1;
                        Some(TrialFailure {
                            trial: i,
                            dim: t.dim,
                            detail: t.detail,
                        })
                    }
                }
            };
            if s.first_failure.is_none() {
                s.first_failure = failure;
            }
        }
        s.passed = s.violations == 0 && s.errors == 0 && s.hypothesis_misses == 0;
        s
    }
}

/// Runs the sweeps accepted by `filter`, keeping each sweep's stream family
/// fixed by its position in [`sweeps`].
pub fn run_selected(cfg: &SuiteConfig, filter: impl Fn(&Sweep) -> bool) -> SuiteReport {
    let summaries: Vec<SweepSummary> = sweeps()
        .iter()
        .enumerate()
        .filter(|(_, sw)| filter(sw))
        .map(|(k, sw)| sw.run(k, cfg))
        .collect();
    let violations = summaries.iter().map(|s| s.violations).sum();
    let passed = summaries.iter().all(|s| s.passed);
    SuiteReport {
        seed: cfg.seed,
        trials: cfg.trials,
        min_dim: cfg.min_dim,
        max_dim: cfg.max_dim,
        eq_tol: cfg.tol.eq_tol,
        sweeps: summaries,
        violations,
        passed,
    }
}

pub fn run_suite(cfg: &SuiteConfig) -> SuiteReport {
    run_selected(cfg, |_| true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes_and_is_deterministic() {
        let cfg = SuiteConfig::new(8, 6, 11);
        let a = run_suite(&cfg);
        for s in &a.sweeps {
            assert!(s.passed, "{s:#?}");
        }
        assert_eq!(a, run_suite(&cfg));
    }

    #[test]
    fn sweep_names_are_unique() {
        let all = sweeps();
        let mut names: Vec<_> = all.iter().map(|s| s.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), all.len());
    }
}
