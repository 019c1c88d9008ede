//! Concrete operators on which the theorem hypotheses are tight.
//!
//! Each operator on `ℓ₂` acts as the identity beyond a few leading
//! coordinates, so only the leading block is stored; direct sums with an
//! identity preserve EP-ness, commutation, adjoints and pseudoinverses.

use serde::Serialize;

use super::rules::{evaluate, Operands, Rule};
use super::verdict::{Fact, TheoremVerdict};
use crate::ep::{ep_characterizations, ep_construct, is_normal, normality_residual, EpReport};
use crate::error::{Error, Result};
use crate::linalg::{c, ComplexMatrix, Tolerance, ONE};
use crate::subspace::{ConstraintSpec, Subspace};

/// What a catalog check runs.
#[derive(Debug, Clone)]
pub enum Checker {
    Theorem(Rule),
    /// EP characterizations and normality of `T`, plus comparison of `N(T)`
    /// with the span of `null_reference` when given.
    EpProfile {
        null_reference: Option<ComplexMatrix>,
    },
    /// [`ep_construct`] on a constraint form, compared with a reference
    /// matrix.
    Construction {
        spec: ConstraintSpec,
        free_coords: ComplexMatrix,
        expected: ComplexMatrix,
    },
}

impl Checker {
    pub fn id(&self) -> &'static str {
        match self {
            Checker::Theorem(r) => r.id(),
            Checker::EpProfile { .. } => "ep-profile",
            Checker::Construction { .. } => "construction",
        }
    }
}

/// Bound on a fact's residual.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualBound {
    pub fact: &'static str,
    pub min: Option<f64>,
    pub max: Option<f64>,
}

impl ResidualBound {
    pub fn above(fact: &'static str, min: f64) -> Self {
        Self {
            fact,
            min: Some(min),
            max: None,
        }
    }

    pub fn below(fact: &'static str, max: f64) -> Self {
        Self {
            fact,
            min: None,
            max: Some(max),
        }
    }

    fn describe(&self) -> String {
        match (self.min, self.max) {
            (Some(lo), Some(hi)) => format!("residual of `{}` in [{lo:e}, {hi:e}]", self.fact),
            (Some(lo), None) => format!("residual of `{}` > {lo:e}", self.fact),
            (None, Some(hi)) => format!("residual of `{}` <= {hi:e}", self.fact),
            (None, None) => format!("residual of `{}`", self.fact),
        }
    }

    fn admits(&self, r: f64) -> bool {
        self.min.is_none_or(|lo| r > lo) && self.max.is_none_or(|hi| r <= hi)
    }
}

/// One checker run with the booleans it must reproduce.
#[derive(Debug, Clone)]
pub struct CaseCheck {
    pub checker: Checker,
    pub expected_hypotheses: Vec<(&'static str, bool)>,
    pub expected_conclusions: Vec<(&'static str, bool)>,
    pub expected_observations: Vec<(&'static str, bool)>,
    pub bounds: Vec<ResidualBound>,
}

impl CaseCheck {
    fn theorem(rule: Rule, hyp: &[(&'static str, bool)], conc: &[(&'static str, bool)]) -> Self {
        Self {
            checker: Checker::Theorem(rule),
            expected_hypotheses: hyp.to_vec(),
            expected_conclusions: conc.to_vec(),
            expected_observations: Vec::new(),
            bounds: Vec::new(),
        }
    }

    fn observing(mut self, obs: &[(&'static str, bool)]) -> Self {
        self.expected_observations = obs.to_vec();
        self
    }

    fn bounded(mut self, b: ResidualBound) -> Self {
        self.bounds.push(b);
        self
    }
}

#[derive(Debug, Clone)]
pub struct CounterexampleCase {
    pub case_id: &'static str,
    /// What the operators demonstrate.
    pub source: &'static str,
    /// Size of the stored leading block.
    pub block_size: usize,
    pub operands: Operands,
    pub checks: Vec<CaseCheck>,
}

fn real(rows: &[&[f64]]) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(rows)
}

fn ops(
    a: Option<ComplexMatrix>,
    b: Option<ComplexMatrix>,
    t: Option<ComplexMatrix>,
    s: Option<ComplexMatrix>,
) -> Operands {
    Operands { a, b, t, s }
}

/// `(x1 − x2, x1 + x3, 2x1 − x2 + x3)`: EP, not normal.
pub fn ep_commuting_t() -> ComplexMatrix {
    real(&[&[1.0, -1.0, 0.0], &[1.0, 0.0, 1.0], &[2.0, -1.0, 1.0]])
}

/// `(x2, −x1 + x2 − x3, −2x1 + x2)`: commutes with [`ep_commuting_t`].
pub fn ep_commuting_a() -> ComplexMatrix {
    real(&[&[0.0, 1.0, 0.0], &[-1.0, 1.0, -1.0], &[-2.0, 1.0, 0.0]])
}

/// `(x1 + x3, 0, x3)`: EP with range `span{e1, e3}`.
pub fn upper_shear_t() -> ComplexMatrix {
    real(&[&[1.0, 0.0, 1.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 1.0]])
}

/// `(x1 + x2, x2, 0)`: EP with range `span{e1, e2}`.
pub fn upper_shear_s() -> ComplexMatrix {
    real(&[&[1.0, 1.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 0.0]])
}

/// `(x1 + x2, 2x1 + x2 + x3, −x1 − x3)`: EP, not normal, null space spanned
/// by `(1, −1, −1)`.
pub fn ep_not_normal_t() -> ComplexMatrix {
    real(&[&[1.0, 1.0, 0.0], &[2.0, 1.0, 1.0], &[-1.0, 0.0, -1.0]])
}

/// `W = {(x1, x1 + x2, x2)}` with `x2` expressed through the free coordinates
/// 1 and 3, and the basis `v1 = (1, 1+i, i)`, `v2 = (1, 0, −1)`.
pub fn constructed_ep_inputs() -> (ConstraintSpec, ComplexMatrix) {
    let spec = ConstraintSpec::new(3, vec![0, 2], vec![1], vec![vec![ONE, ONE]]).expect("valid constraint form");
    let x = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.0, 1.0)], vec![c(1.0, 0.0), c(-1.0, 0.0)]]);
    (spec, x)
}

pub fn constructed_ep_expected() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[
        vec![c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)],
        vec![c(1.0, 1.0), c(1.0, 1.0), c(0.0, 0.0)],
        vec![c(0.0, 1.0), c(-1.0, 1.0), c(-1.0, 0.0)],
    ])
}

const T_EP: &str = "T EP";
const S_EP: &str = "S EP";

/// The encoded cases, in a fixed order.
pub fn catalog() -> Vec<CounterexampleCase> {
    let (spec, free_coords) = constructed_ep_inputs();
    let null_ref = ComplexMatrix::from_real_rows(&[[1.0], [-1.0], [-1.0]]);
    let ep_profile_names: Vec<(&'static str, bool)> = EpReport::NAMES.iter().map(|&n| (n, true)).collect();

    vec![
        CounterexampleCase {
            case_id: "ep-not-normal",
            source: "EP operator that is not normal; N(T) = N(T*) = span{(1, -1, -1)}",
            block_size: 3,
            operands: ops(None, None, Some(ep_not_normal_t()), None),
            checks: vec![CaseCheck {
                checker: Checker::EpProfile {
                    null_reference: Some(null_ref),
                },
                expected_hypotheses: vec![],
                expected_conclusions: vec![],
                expected_observations: [(T_EP, true), ("T normal", false), ("N(T) = span of reference", true)]
                    .into_iter()
                    .chain(ep_profile_names.clone())
                    .collect(),
                bounds: vec![ResidualBound::below("N(T) = span of reference", 1e-9)],
            }],
        },
        CounterexampleCase {
            case_id: "constructed-ep",
            source:
                "EP matrix with prescribed range W = {(x1, x1 + x2, x2)} built from the basis (1, 1+i, i), (1, 0, -1)",
            block_size: 3,
            operands: Operands::default(),
            checks: vec![CaseCheck {
                checker: Checker::Construction {
                    spec,
                    free_coords,
                    expected: constructed_ep_expected(),
                },
                expected_hypotheses: vec![],
                expected_conclusions: vec![],
                expected_observations: vec![
                    ("T = reference", true),
                    (T_EP, true),
                    ("T normal", false),
                    ("R(T) = W", true),
                ],
                bounds: vec![ResidualBound::below("T = reference", 1e-12)],
            }],
        },
        CounterexampleCase {
            case_id: "commuting-not-adjoint",
            source: "EP operator commuting with A whose adjoint does not commute with A",
            block_size: 3,
            operands: ops(Some(ep_commuting_a()), None, Some(ep_commuting_t()), None),
            checks: vec![
                CaseCheck::theorem(
                    Rule::FugledeClassic,
                    &[("N normal", false), ("AN = NA", true)],
                    &[("AN* = N*A", false)],
                )
                .bounded(ResidualBound::above("AN* = N*A", 0.5)),
                CaseCheck::theorem(
                    Rule::FugledeMp,
                    &[(T_EP, true), ("AT = TA", true)],
                    &[("AT† = T†A", true)],
                )
                .bounded(ResidualBound::below("AT† = T†A", 1e-9)),
                CaseCheck::theorem(
                    Rule::FugledeMpStar,
                    &[(T_EP, true), ("AT = TA", true), ("AT†T* = T†T*A", false)],
                    &[("AT* = T*A", false)],
                )
                .bounded(ResidualBound::above("AT* = T*A", 0.5)),
            ],
        },
        CounterexampleCase {
            case_id: "non-ep-mp-failure",
            source: "A = T = (x1 + x2, 2x1 + 2x2) is not EP; AT = TA but AT† != T†A",
            block_size: 2,
            operands: {
                let t = real(&[&[1.0, 1.0], &[2.0, 2.0]]);
                ops(Some(t.clone()), None, Some(t), None)
            },
            checks: vec![CaseCheck::theorem(
                Rule::FugledeMp,
                &[(T_EP, false), ("AT = TA", true)],
                &[("AT† = T†A", false)],
            )
            .bounded(ResidualBound::above("AT† = T†A", 0.01))],
        },
        CounterexampleCase {
            case_id: "star-product-needed",
            source: "EP T commuting with A where AT*T != T*TA and AT* != T*A",
            block_size: 3,
            operands: ops(
                Some(real(&[&[1.0, 0.0, 2.0], &[0.0, -1.0, 0.0], &[0.0, 0.0, 1.0]])),
                None,
                Some(upper_shear_t()),
                None,
            ),
            checks: vec![CaseCheck::theorem(
                Rule::FugledeStarProduct,
                &[(T_EP, true), ("AT = TA", true), ("AT*T = T*TA", false)],
                &[("AT* = T*A", false)],
            )],
        },
        CounterexampleCase {
            case_id: "putnam-ep-pair",
            source: "EP pair with AT = SA but AT* != S*A; S is read as (x1 + x2, x2, 0)",
            block_size: 3,
            operands: ops(
                Some(real(&[&[1.0, 0.0, -1.0], &[0.0, 0.0, 1.0], &[0.0, 2.0, 0.0]])),
                None,
                Some(upper_shear_t()),
                Some(upper_shear_s()),
            ),
            checks: vec![
                CaseCheck::theorem(
                    Rule::PutnamClassic,
                    &[("N normal", false), ("M normal", false), ("AN = MA", true)],
                    &[("AN* = M*A", false)],
                ),
                CaseCheck::theorem(
                    Rule::PutnamMp,
                    &[(T_EP, true), (S_EP, true), ("AT = SA", true)],
                    &[("AT† = S†A", true)],
                )
                .bounded(ResidualBound::below("AT† = S†A", 1e-9)),
                CaseCheck::theorem(
                    Rule::PutnamStarProduct,
                    &[(T_EP, true), (S_EP, true), ("AT = SA", true), ("AT*T = S*SA", false)],
                    &[("AT* = S*A", false)],
                ),
                CaseCheck::theorem(
                    Rule::PutnamMpStar,
                    &[(T_EP, true), (S_EP, true), ("AT = SA", true), ("AT†T* = S†S*A", false)],
                    &[("AT* = S*A", false)],
                ),
            ],
        },
        CounterexampleCase {
            case_id: "putnam-non-ep",
            source: "EP T and non-EP S = (x1 + x2, 0, 0) with AT = SA but AT† != S†A",
            block_size: 3,
            operands: ops(
                Some(real(&[&[0.0, 1.0, 2.0], &[0.0, -1.0, 0.0], &[0.0, -1.0, 0.0]])),
                None,
                Some(upper_shear_t()),
                Some(real(&[&[1.0, 1.0, 0.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 0.0]])),
            ),
            checks: vec![CaseCheck::theorem(
                Rule::PutnamMp,
                &[(T_EP, true), (S_EP, false), ("AT = SA", true)],
                &[("AT† = S†A", false)],
            )],
        },
        CounterexampleCase {
            case_id: "squares-non-ep",
            source: "non-EP T, S with AT = SB and AT² = S²B but AT† != S†B",
            block_size: 2,
            operands: ops(
                Some(real(&[&[0.0, 1.0], &[1.0, 0.0]])),
                Some(ComplexMatrix::identity(2)),
                Some(real(&[&[1.0, 1.0], &[-1.0, -1.0]])),
                Some(real(&[&[-1.0, -1.0], &[1.0, 1.0]])),
            ),
            checks: vec![CaseCheck::theorem(
                Rule::Squares,
                &[(T_EP, false), (S_EP, false), ("AT = SB", true), ("AT² = S²B", true)],
                &[("AT† = S†B", false)],
            )],
        },
        CounterexampleCase {
            case_id: "squares-second-power",
            source: "EP T, S with AT² != S²B and AT† != S†B; with these entries AT = SB fails in the third row",
            block_size: 3,
            operands: ops(
                Some(real(&[&[1.0, 2.0, -1.0], &[-1.0, -1.0, 1.0], &[2.0, 2.0, -2.0]])),
                Some(real(&[&[1.0, 0.0, 1.0], &[0.0, 0.0, 0.0], &[1.0, 1.0, 0.0]])),
                Some(ep_commuting_t()),
                Some(real(&[&[1.0, 1.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]])),
            ),
            checks: vec![CaseCheck::theorem(
                Rule::Squares,
                &[(T_EP, true), (S_EP, true), ("AT = SB", false), ("AT² = S²B", false)],
                &[("AT† = S†B", false)],
            )],
        },
        CounterexampleCase {
            case_id: "product-not-ep",
            source: "EP S = (x1 + x2, x1 + x2) and T = (0, x2) whose products are not EP",
            block_size: 2,
            operands: ops(
                None,
                None,
                Some(ComplexMatrix::from_real_diag(&[0.0, 1.0])),
                Some(real(&[&[1.0, 1.0], &[1.0, 1.0]])),
            ),
            checks: vec![product_check(&[
                (S_EP, true),
                (T_EP, true),
                ("ST EP", false),
                ("TS EP", false),
                ("R(ST) = R(S) ∩ R(T)", false),
                ("N(ST) = N(S) + N(T)", false),
                ("(ST)† = T†S†", false),
            ])],
        },
        CounterexampleCase {
            case_id: "product-asymmetric",
            source: "EP S = (x1 + x2, x2) and T = (x1, 0) with ST EP but TS not EP",
            block_size: 2,
            operands: ops(
                None,
                None,
                Some(ComplexMatrix::from_real_diag(&[1.0, 0.0])),
                Some(real(&[&[1.0, 1.0], &[0.0, 1.0]])),
            ),
            checks: vec![product_check(&[
                (S_EP, true),
                (T_EP, true),
                ("ST EP", true),
                ("TS EP", false),
                ("R(ST) = R(S) ∩ R(T)", true),
                ("N(ST) = N(S) + N(T)", true),
                ("(ST)† = T†S†", false),
            ])],
        },
    ]
}

fn product_check(obs: &[(&'static str, bool)]) -> CaseCheck {
    use super::checks::product_facts::*;
    CaseCheck::theorem(
        Rule::ProductEp,
        &[],
        &[(RANGE_NULL_CRITERION, true), (REVERSE_ORDER_CRITERION, true)],
    )
    .observing(obs)
}

fn ep_profile(t: &ComplexMatrix, null_reference: Option<&ComplexMatrix>, tol: &Tolerance) -> Result<TheoremVerdict> {
    let report = ep_characterizations(t, tol)?;
    let mut obs = vec![
        Fact::new(T_EP, report.verdict, report.residuals[1]),
        Fact::new("T normal", is_normal(t, tol)?, normality_residual(t)?),
    ];
    for ((name, holds), r) in EpReport::NAMES.iter().zip(report.flags()).zip(report.residuals) {
        obs.push(Fact::new(*name, holds, r));
    }
    if let Some(reference) = null_reference {
        let r = Subspace::nullspace(t, tol)?.distance(&Subspace::from_columns(reference, tol)?)?;
        obs.push(Fact::new("N(T) = span of reference", r <= tol.eq_tol, r));
    }
    Ok(TheoremVerdict::with_observations("ep-profile", vec![], vec![], obs))
}

fn construction(
    spec: &ConstraintSpec,
    free_coords: &ComplexMatrix,
    expected: &ComplexMatrix,
    tol: &Tolerance,
) -> Result<TheoremVerdict> {
    let t = ep_construct(spec, free_coords, tol)?;
    let entry_err = t.try_sub(expected)?.max_abs();
    let report = ep_characterizations(&t, tol)?;
    let w = spec.to_subspace(tol)?;
    let r = Subspace::from_columns(&t, tol)?.distance(&w)?;
    Ok(TheoremVerdict::with_observations(
        "construction",
        vec![],
        vec![],
        vec![
            Fact::new("T = reference", entry_err <= 1e-12, entry_err),
            Fact::new(T_EP, report.verdict, report.residuals[1]),
            Fact::new("T normal", is_normal(&t, tol)?, normality_residual(&t)?),
            Fact::new("R(T) = W", r <= tol.eq_tol, r),
        ],
    ))
}

fn run_check(case: &CounterexampleCase, check: &CaseCheck, tol: &Tolerance) -> Result<TheoremVerdict> {
    match &check.checker {
        Checker::Theorem(rule) => evaluate(*rule, &case.operands, tol),
        Checker::EpProfile { null_reference } => {
            let t = case.operands.t.as_ref().ok_or(Error::MissingOperand {
                rule: "ep-profile".into(),
                operand: "T",
            })?;
            ep_profile(t, null_reference.as_ref(), tol)
        }
        Checker::Construction {
            spec,
            free_coords,
            expected,
        } => construction(spec, free_coords, expected, tol),
    }
}

/// A single disagreement between a check and its expectations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Mismatch {
    pub field: String,
    pub expected: bool,
    pub got: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub checker: &'static str,
    pub verdict: TheoremVerdict,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseOutcome {
    pub case_id: &'static str,
    pub source: &'static str,
    pub block_size: usize,
    pub checks: Vec<CheckOutcome>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogReport {
    pub cases: Vec<CaseOutcome>,
    pub passed: bool,
}

impl CatalogReport {
    pub fn first_mismatch(&self) -> Option<Error> {
        self.cases.iter().find_map(|case| {
            case.checks.iter().find_map(|ch| {
                ch.mismatches.first().map(|m| Error::CatalogMismatch {
                    case: case.case_id.to_string(),
                    field: format!("{}: {}", ch.checker, m.field),
                    expected: m.expected,
                    got: m.got,
                })
            })
        })
    }
}

type Expected<'a> = &'a [(&'static str, bool)];

fn compare(verdict: &TheoremVerdict, check: &CaseCheck) -> Vec<Mismatch> {
    let mut out = Vec::new();
    let groups: [(&[Fact], Expected); 3] = [
        (&verdict.hypotheses, &check.expected_hypotheses),
        (&verdict.conclusions, &check.expected_conclusions),
        (&verdict.observations, &check.expected_observations),
    ];
    for (facts, expected) in groups {
        for &(name, want) in expected {
            match facts.iter().find(|f| f.name == name) {
                Some(f) if f.holds == want => {}
                Some(f) => out.push(Mismatch {
                    field: name.to_string(),
                    expected: want,
                    got: f.holds,
                }),
                None => out.push(Mismatch {
                    field: format!("{name} (not reported)"),
                    expected: want,
                    got: !want,
                }),
            }
        }
    }
    for b in &check.bounds {
        let ok = verdict
            .fact(b.fact)
            .and_then(|f| f.residual)
            .is_some_and(|r| b.admits(r));
        if !ok {
            out.push(Mismatch {
                field: b.describe(),
                expected: true,
                got: false,
            });
        }
    }
    if !verdict.consistent {
        out.push(Mismatch {
            field: "consistent".into(),
            expected: true,
            got: false,
        });
    }
    out
}

/// Runs every case and collects all mismatches.
pub fn evaluate_catalog(tol: &Tolerance) -> Result<CatalogReport> {
    let mut cases = Vec::new();
    for case in catalog() {
        let mut checks = Vec::new();
        for check in &case.checks {
            let verdict = run_check(&case, check, tol)?;
            let mismatches = compare(&verdict, check);
            checks.push(CheckOutcome {
                checker: check.checker.id(),
                verdict,
                mismatches,
            });
        }
        let passed = checks.iter().all(|c| c.mismatches.is_empty());
        cases.push(CaseOutcome {
            case_id: case.case_id,
            source: case.source,
            block_size: case.block_size,
            checks,
            passed,
        });
    }
    let passed = cases.iter().all(|c| c.passed);
    Ok(CatalogReport { cases, passed })
}

/// Runs every case and fails on the first mismatch.
pub fn run_catalog(tol: &Tolerance) -> Result<CatalogReport> {
    let report = evaluate_catalog(tol)?;
    match report.first_mismatch() {
        Some(err) => Err(err),
        None => Ok(report),
    }
}
