//! Truncation-convergence studies.
//!
//! Three scalar quantities are tracked along the configured ladder of
//! truncation sizes. Each quantity is evaluated on a nested random family:
//! the entry at position (j, k) is identical at every truncation that
//! contains it, so successive values genuinely measure the truncation tail
//! and not resampling noise.
//!
//! A quantity converges when its final relative change falls below
//! [`CONVERGING_THRESHOLD`]; it diverges when the value sequence is
//! strictly increasing and the final change exceeds [`DIVERGING_THRESHOLD`];
//! anything else is undetermined.

use serde::Serialize;

use resgrass_core::ensemble::{random_predual, random_skew, EnsembleSpec};
use resgrass_core::grassmann::{act, membership_defect, GrassmannPoint};
use resgrass_core::operator::{commutator, exp_skew, make_d, PolarizedSpace};
use resgrass_core::schatten::{l1q_norm, schatten_norm, SchattenExponent};

use crate::config::{CliError, ExperimentConfig, Suite};
use crate::report::{SizeStat, SuiteReport, Worst};
use crate::seeds::child_seed;

/// Final relative change below which a quantity counts as converging.
pub const CONVERGING_THRESHOLD: f64 = 0.05;

/// Final relative change above which a strictly increasing sequence counts
/// as diverging.
pub const DIVERGING_THRESHOLD: f64 = 0.2;

/// One line of the study: a quantity evaluated at one truncation size.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    /// Truncation size (n₊, n₋).
    pub size: (usize, usize),
    /// Name of the tracked quantity.
    pub quantity: String,
    /// Value at this truncation.
    pub value: f64,
    /// Relative change from the previous size; absent on the first row of
    /// each quantity.
    pub rel_change: Option<f64>,
    /// Verdict for the whole sequence, repeated on each of its rows.
    pub status: String,
}

/// Runs the study at the configured ensemble magnitude.
///
/// # Errors
/// When fewer than three sizes are configured: two values give a single
/// change, which cannot distinguish convergence from coincidence.
pub fn convergence_study(cfg: &ExperimentConfig) -> Result<Vec<ConvergenceRow>, CliError> {
    study_with_magnitude(cfg, 1.0)
}

/// Runs the study with an explicit ensemble magnitude. A magnitude of zero
/// produces identically vanishing quantities with zero relative changes.
pub fn study_with_magnitude(
    cfg: &ExperimentConfig,
    magnitude: f64,
) -> Result<Vec<ConvergenceRow>, CliError> {
    if cfg.sizes.len() < 3 {
        return Err(CliError::Config(format!(
            "the convergence study needs at least 3 sizes, got {}",
            cfg.sizes.len()
        )));
    }
    let idx = Suite::Convergence.index();
    let pe = SchattenExponent::Finite(cfg.p);
    let qe = pe.conjugate();
    let p = cfg.p;
    let alpha = cfg.decay_alpha;

    let spec =
        |seed: u64| EnsembleSpec::new(seed, alpha, magnitude).expect("decay_alpha is validated");

    type Quantity<'a> = (&'a str, Box<dyn Fn(PolarizedSpace) -> f64 + 'a>);
    let quantities: Vec<Quantity> = vec![
        (
            "commutator_p_norm",
            Box::new(|sp| {
                let a = random_skew(sp, &spec(child_seed(cfg.seed, idx, 0)), p)
                    .expect("p is validated");
                let d = make_d(sp);
                schatten_norm(&commutator(d.as_operator(), a.as_operator()), pe)
            }),
        ),
        (
            "predual_l1q_norm",
            Box::new(|sp| {
                let rho = random_predual(sp, &spec(child_seed(cfg.seed, idx, 1)), qe)
                    .expect("the conjugate exponent is admissible");
                l1q_norm(rho.as_operator(), qe)
            }),
        ),
        (
            "membership_defect",
            Box::new(|sp| {
                let x = random_skew(sp, &spec(child_seed(cfg.seed, idx, 2)), p)
                    .expect("p is validated");
                let w = act(&exp_skew(&x), &GrassmannPoint::h_plus(sp));
                membership_defect(&w, pe)
            }),
        ),
    ];

    let mut rows = Vec::with_capacity(quantities.len() * cfg.sizes.len());
    for (name, eval) in &quantities {
        let values: Vec<f64> = cfg
            .sizes
            .iter()
            .map(|&(np, nm)| {
                let sp = PolarizedSpace::new(np, nm).expect("sizes are validated");
                eval(sp)
            })
            .collect();
        let changes: Vec<Option<f64>> = std::iter::once(None)
            .chain(
                values
                    .windows(2)
                    .map(|w| Some((w[1] - w[0]).abs() / w[0].abs().max(f64::MIN_POSITIVE))),
            )
            .collect();
        let status = classify(&values, &changes);
        for (i, &(np, nm)) in cfg.sizes.iter().enumerate() {
            rows.push(ConvergenceRow {
                size: (np, nm),
                quantity: (*name).to_string(),
                value: values[i],
                rel_change: changes[i],
                status: status.to_string(),
            });
        }
    }
    Ok(rows)
}

fn classify(values: &[f64], changes: &[Option<f64>]) -> &'static str {
    let last = changes
        .last()
        .and_then(|c| *c)
        .expect("at least three sizes");
    if last < CONVERGING_THRESHOLD {
        "converging"
    } else if values.windows(2).all(|w| w[1] > w[0]) && last > DIVERGING_THRESHOLD {
        "diverging"
    } else {
        "undetermined"
    }
}

/// Renders the study as CSV with a fixed header. The rel_change field is
/// empty on the first row of each quantity.
pub fn rows_to_csv(rows: &[ConvergenceRow]) -> String {
    let mut out = String::from("size,quantity,value,rel_change,status\n");
    for row in rows {
        let rel = row.rel_change.map(|c| c.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{}x{},{},{},{},{}\n",
            row.size.0, row.size.1, row.quantity, row.value, rel, row.status
        ));
    }
    out
}

/// Wraps the study as a suite report. The verdict is the final relative
/// change of each quantity measured against the converging threshold, so a
/// violation above 1 means some quantity failed to settle. The stat row of
/// the last size carries that verdict; earlier sizes are transient and
/// contribute zero.
pub fn suite(cfg: &ExperimentConfig) -> (SuiteReport, Vec<ConvergenceRow>) {
    let rows = convergence_study(cfg).expect("size count is validated before dispatch");
    let last_size = *cfg.sizes.last().expect("sizes are nonempty");
    let mut worst = Worst::new();
    for row in rows.iter().filter(|r| r.size == last_size) {
        let change = row.rel_change.expect("later rows always carry a change");
        worst.residual(change, CONVERGING_THRESHOLD, 1.0);
    }
    let stats = cfg
        .sizes
        .iter()
        .map(|&size| SizeStat {
            size,
            max_violation: if size == last_size {
                worst.value()
            } else {
                0.0
            },
        })
        .collect();
    (SuiteReport::from_stats(Suite::Convergence, 1, stats), rows)
}
