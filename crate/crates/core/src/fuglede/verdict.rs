use serde::Serialize;

use crate::error::Result;
use crate::linalg::{eq_residual, ComplexMatrix, Tolerance};

/// One evaluated statement. Logical combinations of other facts carry no
/// residual.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fact {
    pub name: String,
    pub holds: bool,
    pub residual: Option<f64>,
}

impl Fact {
    pub fn new(name: impl Into<String>, holds: bool, residual: f64) -> Self {
        Self {
            name: name.into(),
            holds,
            residual: Some(residual),
        }
    }

    pub fn logical(name: impl Into<String>, holds: bool) -> Self {
        Self {
            name: name.into(),
            holds,
            residual: None,
        }
    }

    /// `lhs = rhs` under the hybrid Frobenius criterion, with residual
    /// `‖lhs − rhs‖_F`.
    pub fn equality(
        name: impl Into<String>,
        lhs: &ComplexMatrix,
        rhs: &ComplexMatrix,
        tol: &Tolerance,
    ) -> Result<Self> {
        let (residual, holds) = eq_residual(lhs, rhs, tol)?;
        Ok(Self::new(name, holds, residual))
    }
}

/// Outcome of a theorem checker.
///
/// `consistent` is false exactly when every hypothesis holds and some
/// conclusion fails, i.e. when the inputs witness a counterexample to the
/// theorem. `observations` records auxiliary quantities that take no part in
/// that decision.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremVerdict {
    pub theorem_id: String,
    pub hypotheses: Vec<Fact>,
    pub conclusions: Vec<Fact>,
    pub observations: Vec<Fact>,
    pub consistent: bool,
}

impl TheoremVerdict {
    pub fn new(theorem_id: impl Into<String>, hypotheses: Vec<Fact>, conclusions: Vec<Fact>) -> Self {
        Self::with_observations(theorem_id, hypotheses, conclusions, Vec::new())
    }

    pub fn with_observations(
        theorem_id: impl Into<String>,
        hypotheses: Vec<Fact>,
        conclusions: Vec<Fact>,
        observations: Vec<Fact>,
    ) -> Self {
        let hyp = hypotheses.iter().all(|f| f.holds);
        let conc = conclusions.iter().all(|f| f.holds);
        Self {
            theorem_id: theorem_id.into(),
            hypotheses,
            conclusions,
            observations,
            consistent: !hyp || conc,
        }
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|f| f.holds)
    }

    pub fn conclusions_hold(&self) -> bool {
        self.conclusions.iter().all(|f| f.holds)
    }

    /// Looks a fact up by name among hypotheses, conclusions and observations.
    pub fn fact(&self, name: &str) -> Option<&Fact> {
        self.facts().find(|f| f.name == name)
    }

    pub fn facts(&self) -> impl Iterator<Item = &Fact> {
        self.hypotheses
            .iter()
            .chain(&self.conclusions)
            .chain(&self.observations)
    }

    /// Largest residual among the conclusions.
    pub fn max_conclusion_residual(&self) -> f64 {
        self.conclusions.iter().filter_map(|f| f.residual).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn consistency_truth_table() {
        let t = |h: bool, c: bool| {
            TheoremVerdict::new("x", vec![Fact::logical("h", h)], vec![Fact::logical("c", c)]).consistent
        };
        assert!(t(true, true));
        assert!(!t(true, false));
        assert!(t(false, true));
        assert!(t(false, false));
    }

    #[test]
    fn fact_lookup() {
        let v = TheoremVerdict::with_observations(
            "x",
            vec![Fact::new("h", true, 0.0)],
            vec![Fact::new("c", true, 1e-12)],
            vec![Fact::logical("o", false)],
        );
        assert_eq!(v.fact("o").map(|f| f.holds), Some(false));
        assert!(v.fact("missing").is_none());
        assert_eq!(v.max_conclusion_residual(), 1e-12);
    }
}
