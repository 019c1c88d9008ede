use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::checks::*;
use super::verdict::TheoremVerdict;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, Tolerance};

/// Every checker, addressable by a stable kebab-case id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "&'static str")]
pub enum Rule {
    FugledeClassic,
    FugledeMp,
    FugledeStarProduct,
    FugledeMpStar,
    PutnamClassic,
    PutnamMp,
    PutnamStarProduct,
    PutnamMpStar,
    Squares,
    TwoSided,
    ProductEp,
    PolarCorollary,
}

/// Operator slot used by a rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    A,
    B,
    T,
    S,
}

impl Slot {
    pub fn name(self) -> &'static str {
        match self {
            Slot::A => "A",
            Slot::B => "B",
            Slot::T => "T",
            Slot::S => "S",
        }
    }
}

impl Rule {
    pub const ALL: [Rule; 12] = [
        Rule::FugledeClassic,
        Rule::FugledeMp,
        Rule::FugledeStarProduct,
        Rule::FugledeMpStar,
        Rule::PutnamClassic,
        Rule::PutnamMp,
        Rule::PutnamStarProduct,
        Rule::PutnamMpStar,
        Rule::Squares,
        Rule::TwoSided,
        Rule::ProductEp,
        Rule::PolarCorollary,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Rule::FugledeClassic => "fuglede-classic",
            Rule::FugledeMp => "fuglede-mp",
            Rule::FugledeStarProduct => "fuglede-star-product",
            Rule::FugledeMpStar => "fuglede-mp-star",
            Rule::PutnamClassic => "putnam-classic",
            Rule::PutnamMp => "putnam-mp",
            Rule::PutnamStarProduct => "putnam-star-product",
            Rule::PutnamMpStar => "putnam-mp-star",
            Rule::Squares => "squares",
            Rule::TwoSided => "two-sided",
            Rule::ProductEp => "product-ep",
            Rule::PolarCorollary => "polar-corollary",
        }
    }

    /// Slots that must be supplied. For the classic rules `T` plays `N` and
    /// `S` plays `M`.
    pub fn required(self) -> &'static [Slot] {
        use Slot::*;
        match self {
            Rule::FugledeClassic | Rule::FugledeMp | Rule::FugledeStarProduct | Rule::FugledeMpStar => &[A, T],
            Rule::PutnamClassic | Rule::PutnamMp | Rule::PutnamStarProduct | Rule::PutnamMpStar => &[A, T, S],
            Rule::Squares => &[A, B, T, S],
            Rule::TwoSided => &[A, B, T],
            Rule::ProductEp | Rule::PolarCorollary => &[S, T],
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl From<Rule> for &'static str {
    fn from(r: Rule) -> Self {
        r.id()
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Rule::ALL
            .into_iter()
            .find(|r| r.id() == s)
            .ok_or_else(|| Error::UnknownRule(s.to_string()))
    }
}

/// Operator arguments for [`evaluate`].
#[derive(Debug, Clone, Default)]
pub struct Operands {
    pub a: Option<ComplexMatrix>,
    pub b: Option<ComplexMatrix>,
    pub t: Option<ComplexMatrix>,
    pub s: Option<ComplexMatrix>,
}

impl Operands {
    pub fn get(&self, slot: Slot) -> Option<&ComplexMatrix> {
        match slot {
            Slot::A => self.a.as_ref(),
            Slot::B => self.b.as_ref(),
            Slot::T => self.t.as_ref(),
            Slot::S => self.s.as_ref(),
        }
    }

    fn need(&self, rule: Rule, slot: Slot) -> Result<&ComplexMatrix> {
        self.get(slot).ok_or_else(|| Error::MissingOperand {
            rule: rule.id().to_string(),
            operand: slot.name(),
        })
    }
}

/// Runs the checker for `rule` on the supplied operators.
pub fn evaluate(rule: Rule, ops: &Operands, tol: &Tolerance) -> Result<TheoremVerdict> {
    use Slot::*;
    let get = |slot| ops.need(rule, slot);
    match rule {
        Rule::FugledeClassic => check_fuglede_classic(get(A)?, get(T)?, tol),
        Rule::FugledeMp => check_fuglede_mp(get(A)?, get(T)?, tol),
        Rule::FugledeStarProduct => check_fuglede_adjoint(get(A)?, get(T)?, AdjointVariant::StarProduct, tol),
        Rule::FugledeMpStar => check_fuglede_adjoint(get(A)?, get(T)?, AdjointVariant::MpStar, tol),
        Rule::PutnamClassic => check_putnam_classic(get(A)?, get(T)?, get(S)?, tol),
        Rule::PutnamMp => check_putnam_mp(get(A)?, get(T)?, get(S)?, tol),
        Rule::PutnamStarProduct => check_putnam_adjoint(get(A)?, get(T)?, get(S)?, AdjointVariant::StarProduct, tol),
        Rule::PutnamMpStar => check_putnam_adjoint(get(A)?, get(T)?, get(S)?, AdjointVariant::MpStar, tol),
        Rule::Squares => check_squares(get(A)?, get(B)?, get(T)?, get(S)?, tol),
        Rule::TwoSided => check_two_sided(get(A)?, get(B)?, get(T)?, ops.s.as_ref(), tol),
        Rule::ProductEp => check_product_ep(get(S)?, get(T)?, tol),
        Rule::PolarCorollary => check_polar_corollary(get(S)?, get(T)?, tol),
    }
}
