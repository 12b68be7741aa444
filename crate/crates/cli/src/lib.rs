//! Experiment driver for the restricted-Grassmannian crate.
//!
//! The library behind the `resgrass` binary: a JSON-configured runner that
//! executes seeded property-test batteries over a list of truncation sizes
//! and emits machine-readable reports.
//!
//! - [`config`]: the experiment configuration, the registered suite names,
//!   and validation.
//! - [`seeds`]: the splittable child-seed scheme that makes every trial
//!   independent of execution order.
//! - [`report`]: suite reports with violations in units of the allowed
//!   tolerance (1.0 is the pass boundary).
//! - [`suites`]: the six property batteries (trace, duality, cocycle,
//!   grassmann, orbit, symplectic).
//! - [`convergence`]: truncation-convergence studies and their CSV tables.
//! - [`runner`]: dispatches a validated config to the suites.

pub mod config;
pub mod convergence;
pub mod report;
pub mod runner;
pub mod seeds;
pub mod suites;

pub use config::{parse_sizes, CliError, ExperimentConfig, Suite};
pub use report::{SizeStat, SuiteReport};
pub use runner::run;
