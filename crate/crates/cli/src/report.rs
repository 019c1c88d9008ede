//! Run reports and their text rendering.

use std::fmt::Write as _;

use eplab_core::fuglede::{CatalogReport, Fact, TheoremVerdict};
use eplab_core::suite::SuiteReport;
use eplab_core::Tolerance;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct ToleranceSettings {
    pub eq_tol: f64,
    /// `null` selects `max(m, n) * eps`, scaled by `sigma_max`.
    pub rank_tol_factor: Option<f64>,
}

impl From<&Tolerance> for ToleranceSettings {
    fn from(t: &Tolerance) -> Self {
        Self {
            eq_tol: t.eq_tol,
            rank_tol_factor: t.rank_tol_factor,
        }
    }
}

/// Envelope shared by every JSON report.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport<B: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub tolerance: ToleranceSettings,
    pub result: B,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_seconds: Option<f64>,
}

impl<B: Serialize> RunReport<B> {
    pub fn new(command: &'static str, tol: &Tolerance, result: B, passed: bool) -> Self {
        Self {
            tool: "eplab",
            version: env!("CARGO_PKG_VERSION"),
            command,
            tolerance: tol.into(),
            result,
            passed,
            elapsed_seconds: None,
        }
    }

    pub fn with_elapsed(mut self, seconds: f64) -> Self {
        self.elapsed_seconds = Some(seconds);
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Three significant digits in scientific notation.
pub fn sci(x: f64) -> String {
    format!("{x:.2e}")
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn residual_cell(r: Option<f64>) -> String {
    r.map_or_else(|| "-".to_string(), sci)
}

/// Fixed-width table with left-aligned columns.
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.header.len());
        self.rows.push(cells);
    }

    pub fn render(&self) -> String {
        let width = |col: usize| {
            std::iter::once(&self.header[col])
                .chain(self.rows.iter().map(|r| &r[col]))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        };
        let widths: Vec<usize> = (0..self.header.len()).map(width).collect();
        let line = |cells: &[String]| {
            let mut s = String::new();
            for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
                if i + 1 == cells.len() {
                    s.push_str(cell);
                } else {
                    let pad = w - cell.chars().count();
                    let _ = write!(s, "{cell}{}  ", " ".repeat(pad));
                }
            }
            s.push('\n');
            s
        };
        let mut out = line(&self.header);
        for r in &self.rows {
            out.push_str(&line(r));
        }
        out
    }
}

fn push_facts(table: &mut Table, role: &str, facts: &[Fact]) {
    for f in facts {
        table.row(vec![
            role.to_string(),
            f.name.clone(),
            yes_no(f.holds).to_string(),
            residual_cell(f.residual),
        ]);
    }
}

pub fn verdict_table(v: &TheoremVerdict) -> String {
    let mut t = Table::new(&["role", "fact", "holds", "residual"]);
    push_facts(&mut t, "hypothesis", &v.hypotheses);
    push_facts(&mut t, "conclusion", &v.conclusions);
    push_facts(&mut t, "observation", &v.observations);
    t.render()
}

pub fn catalog_text(report: &CatalogReport) -> String {
    let mut t = Table::new(&["case", "block", "checker", "consistent", "status"]);
    let mut notes = String::new();
    for case in &report.cases {
        for ch in &case.checks {
            let status = if ch.mismatches.is_empty() { "PASS" } else { "FAIL" };
            t.row(vec![
                case.case_id.to_string(),
                case.block_size.to_string(),
                ch.checker.to_string(),
                yes_no(ch.verdict.consistent).to_string(),
                status.to_string(),
            ]);
            for m in &ch.mismatches {
                let _ = writeln!(
                    notes,
                    "mismatch in {} ({}): {} expected {}, got {}",
                    case.case_id, ch.checker, m.field, m.expected, m.got
                );
            }
        }
    }
    let passed = report.cases.iter().filter(|c| c.passed).count();
    let mut out = t.render();
    out.push_str(&notes);
    let _ = writeln!(out, "{passed}/{} cases PASS", report.cases.len());
    let _ = writeln!(out, "overall: {}", if report.passed { "PASS" } else { "FAIL" });
    out
}

pub fn suite_text(report: &SuiteReport) -> String {
    let mut t = Table::new(&[
        "sweep",
        "trials",
        "violations",
        "misses",
        "errors",
        "max residual",
        "status",
    ]);
    let mut notes = String::new();
    for s in &report.sweeps {
        t.row(vec![
            s.name.to_string(),
            s.trials.to_string(),
            s.violations.to_string(),
            s.hypothesis_misses.to_string(),
            s.errors.to_string(),
            residual_cell(s.max_residual),
            if s.passed { "PASS" } else { "FAIL" }.to_string(),
        ]);
        if let (false, Some(f)) = (s.passed, &s.first_failure) {
            let _ = writeln!(notes, "{} trial {} (n = {}): {}", s.name, f.trial, f.dim, f.detail);
        }
    }
    let mut out = format!(
        "seed {}, {} trials per sweep, dims {}..={}, eq_tol {}\n",
        report.seed,
        report.trials,
        report.min_dim,
        report.max_dim,
        sci(report.eq_tol)
    );
    out.push_str(&t.render());
    out.push_str(&notes);
    let _ = writeln!(out, "{} violations", report.violations);
    let _ = writeln!(out, "overall: {}", if report.passed { "PASS" } else { "FAIL" });
    out
}
