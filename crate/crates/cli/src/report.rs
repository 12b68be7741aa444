//! Suite reports.
//!
//! Every individual check inside a suite produces a violation in units of
//! its own allowed tolerance: `residual / (tol · scale)` for residual
//! checks, 0 or 2 for discrete checks (exact identities, rank equalities,
//! strict bounds). A suite then reports the worst violation it saw, and the
//! pass boundary is uniformly 1.0. This keeps one threshold per suite
//! meaningful even when a suite mixes checks with different raw tolerances.

use serde::{Deserialize, Serialize};

use crate::config::Suite;

/// The uniform pass boundary for normalized violations.
pub const NORMALIZED_THRESHOLD: f64 = 1.0;

/// Violation value assigned to a failed discrete check (an exact identity,
/// a rank equality, a strict bound): decisively past the boundary.
pub const DISCRETE_FAIL: f64 = 2.0;

/// Worst violation observed at one truncation size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeStat {
    /// The truncation (n_plus, n_minus).
    pub size: (usize, usize),
    /// Worst normalized violation across the checks run at this size.
    pub max_violation: f64,
}

/// Outcome of one suite over all sizes and trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    /// Which battery ran.
    pub suite: Suite,
    /// Trials per size that were requested.
    pub trials: u32,
    /// Worst normalized violation over all sizes; 0.0 when nothing ran.
    pub max_violation: f64,
    /// The pass boundary, [`NORMALIZED_THRESHOLD`].
    pub threshold: f64,
    /// `max_violation <= threshold`, by construction.
    pub passed: bool,
    /// Per-size worst violations, in the order the sizes were visited.
    pub per_size_stats: Vec<SizeStat>,
}

impl SuiteReport {
    /// Assembles a report; `passed` and `max_violation` are derived from
    /// the stats, never stated independently.
    pub fn from_stats(suite: Suite, trials: u32, per_size_stats: Vec<SizeStat>) -> Self {
        let max_violation = per_size_stats
            .iter()
            .map(|s| s.max_violation)
            .fold(0.0, f64::max);
        Self {
            suite,
            trials,
            max_violation,
            threshold: NORMALIZED_THRESHOLD,
            passed: max_violation <= NORMALIZED_THRESHOLD,
            per_size_stats,
        }
    }
}

/// Serializes reports as a pretty JSON array with a trailing newline: the
/// canonical byte-exact report format.
pub fn reports_to_json(reports: &[SuiteReport]) -> String {
    let mut text = serde_json::to_string_pretty(reports).expect("reports are serializable");
    text.push('\n');
    text
}

/// Running maximum of normalized violations.
#[derive(Debug, Clone, Copy, Default)]
pub struct Worst(f64);

impl Worst {
    /// Starts at zero, the vacuous pass.
    pub fn new() -> Self {
        Self(0.0)
    }

    /// Absorbs one normalized violation.
    pub fn see(&mut self, violation: f64) {
        // NaN must never pass silently: treat it as a discrete failure.
        if violation.is_nan() {
            self.0 = self.0.max(DISCRETE_FAIL);
        } else {
            self.0 = self.0.max(violation);
        }
    }

    /// Absorbs a residual check: `residual` against `tol · scale`.
    pub fn residual(&mut self, residual: f64, tol: f64, scale: f64) {
        self.see(residual / (tol * scale));
    }

    /// Absorbs a discrete check: pass contributes 0, fail contributes
    /// [`DISCRETE_FAIL`].
    pub fn check(&mut self, ok: bool) {
        if !ok {
            self.0 = self.0.max(DISCRETE_FAIL);
        }
    }

    /// The worst violation seen so far.
    pub fn value(self) -> f64 {
        self.0
    }
}
