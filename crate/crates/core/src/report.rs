//! Check records shared by every verification suite.

use serde::Serialize;

/// What a check's outcome means.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// Passes when the residual is within tolerance.
    Gating,
    /// A printed formula that is known to be wrong. Passes when the residual
    /// exceeds the tolerance, i.e. the discrepancy is reproduced.
    DocumentedDivergence,
    /// Reported only; always passes.
    Diagnostic,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub suite: String,
    pub check: String,
    pub residual: f64,
    pub tolerance: f64,
    pub kind: CheckKind,
    pub within_tolerance: bool,
    pub pass: bool,
}

impl CheckRecord {
    pub fn new(suite: &str, check: impl Into<String>, residual: f64, tolerance: f64, kind: CheckKind) -> Self {
        let within_tolerance = residual <= tolerance;
        let pass = match kind {
            CheckKind::Gating => within_tolerance,
            CheckKind::DocumentedDivergence => residual > tolerance,
            CheckKind::Diagnostic => true,
        };
        CheckRecord {
            suite: suite.into(),
            check: check.into(),
            residual,
            tolerance,
            kind,
            within_tolerance,
            pass,
        }
    }

    pub fn gating(suite: &str, check: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self::new(suite, check, residual, tolerance, CheckKind::Gating)
    }

    /// A gating check that holds when `value ≥ minimum`; stored as the
    /// residual `minimum/value` against tolerance 1.
    pub fn at_least(suite: &str, check: impl Into<String>, value: f64, minimum: f64) -> Self {
        let residual = if value > 0.0 { minimum / value } else { f64::INFINITY };
        Self::new(suite, check, residual, 1.0, CheckKind::Gating)
    }

    /// Pass/fail from a predicate, recorded with residual 0 or 1.
    pub fn flag(suite: &str, check: impl Into<String>, ok: bool) -> Self {
        Self::new(suite, check, if ok { 0.0 } else { 1.0 }, 0.5, CheckKind::Gating)
    }
}

pub fn all_pass(records: &[CheckRecord]) -> bool {
    records.iter().all(|r| r.pass)
}
