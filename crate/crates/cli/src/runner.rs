//! Orchestrates a full experiment run.

use crate::config::{CliError, ExperimentConfig, Suite};
use crate::convergence;
use crate::report::SuiteReport;
use crate::suites;

/// Validates the config and runs every configured suite, in order.
///
/// With zero trials every suite, including the convergence study, passes
/// vacuously with an empty stat list.
///
/// # Errors
/// Propagates config validation failures.
pub fn run(cfg: &ExperimentConfig) -> Result<Vec<SuiteReport>, CliError> {
    run_full(cfg).map(|(reports, _)| reports)
}

/// Like [`run`], additionally returning the convergence table as CSV when
/// that suite was part of the run.
///
/// # Errors
/// Propagates config validation failures.
pub fn run_full(cfg: &ExperimentConfig) -> Result<(Vec<SuiteReport>, Option<String>), CliError> {
    cfg.validate()?;
    let mut reports = Vec::with_capacity(cfg.suites.len());
    let mut csv = None;
    for &suite in &cfg.suites {
        let report = if cfg.trials == 0 {
            SuiteReport::from_stats(suite, 0, vec![])
        } else if suite == Suite::Convergence {
            let (report, rows) = convergence::suite(cfg);
            csv = Some(convergence::rows_to_csv(&rows));
            report
        } else {
            suites::run_suite(cfg, suite)
        };
        reports.push(report);
    }
    Ok((reports, csv))
}
