//! Experiment configuration: schema, defaults, parsing, validation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors surfaced to the command line. Everything here maps to exit
/// code 2 (config error); suite violations are not errors but reported
/// results.
#[derive(Debug, Error)]
pub enum CliError {
    /// A config field violates an invariant.
    #[error("invalid config: {0}")]
    Config(String),
    /// A suite name outside the registered set.
    #[error("unknown suite name `{0}` (known: trace, duality, cocycle, grassmann, orbit, symplectic, convergence)")]
    UnknownSuite(String),
    /// A `--sizes` or config sizes entry that does not parse.
    #[error("invalid sizes: {0}")]
    Sizes(String),
    /// Filesystem failure reading the config or writing reports.
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    /// Malformed config JSON.
    #[error("config parse error: {0}")]
    Parse(#[from] serde_json::Error),
}

/// The registered property suites, in their canonical order. The position
/// in this list is the suite index fed to the child-seed scheme, so a run
/// of a subset reproduces exactly the reports of the full run.
pub const REGISTERED_SUITES: [Suite; 7] = [
    Suite::Trace,
    Suite::Duality,
    Suite::Cocycle,
    Suite::Grassmann,
    Suite::Orbit,
    Suite::Symplectic,
    Suite::Convergence,
];

/// A property battery selectable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Restricted-trace cyclicity and conjugation invariance.
    Trace,
    /// Pairing symmetry, Hölder bounds, reality, Gram nondegeneracy.
    Duality,
    /// Schwinger cocycle identities and the extended bracket.
    Cocycle,
    /// Atlas roundtrips, transitions, transitivity, regularizer ranks.
    Grassmann,
    /// Cocycle sigma, affine action, isotropy, moment-map identification.
    Orbit,
    /// The two 2-forms, their proportionality, and the Poisson bracket.
    Symplectic,
    /// Truncation-convergence study of the tracked norms.
    Convergence,
}

impl Suite {
    /// Canonical lowercase name.
    pub fn name(self) -> &'static str {
        match self {
            Suite::Trace => "trace",
            Suite::Duality => "duality",
            Suite::Cocycle => "cocycle",
            Suite::Grassmann => "grassmann",
            Suite::Orbit => "orbit",
            Suite::Symplectic => "symplectic",
            Suite::Convergence => "convergence",
        }
    }

    /// Position in [`REGISTERED_SUITES`]; stable across subset runs.
    pub fn index(self) -> u64 {
        REGISTERED_SUITES
            .iter()
            .position(|s| *s == self)
            .expect("every suite is registered") as u64
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        REGISTERED_SUITES
            .iter()
            .copied()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| CliError::UnknownSuite(s.to_string()))
    }
}

/// One experiment: a Schatten exponent, a central charge, a list of
/// truncation sizes, and the suites to run over them.
///
/// Every field has a default, so `{}` is a valid config file; the default
/// configuration is the acceptance run (p = 2, sizes (4,4), (8,8), (16,16),
/// 50 trials, decay 2, all suites).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Schatten exponent of the restricted algebra, in [1, 2].
    pub p: f64,
    /// Central charge of the orbit; any nonzero finite real.
    pub gamma: f64,
    /// Truncation sizes (n_plus, n_minus), strictly increasing total
    /// dimension, every part at least 1.
    pub sizes: Vec<(usize, usize)>,
    /// Random trials per suite and size; 0 is allowed and passes vacuously.
    pub trials: u32,
    /// Root seed; every trial derives its own child seed from it.
    pub seed: u64,
    /// Entry-decay exponent of the random ensembles. 2 produces convergent
    /// families, 0 the deliberately divergent control.
    pub decay_alpha: f64,
    /// Suites to run, a subset of the registered set, no duplicates.
    pub suites: Vec<Suite>,
    /// Where the JSON report goes; stdout when absent.
    pub output_path: Option<String>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            p: 2.0,
            gamma: 1.0,
            sizes: vec![(4, 4), (8, 8), (16, 16)],
            trials: 50,
            seed: 42,
            decay_alpha: 2.0,
            suites: REGISTERED_SUITES.to_vec(),
            output_path: None,
        }
    }
}

impl ExperimentConfig {
    /// Checks every config invariant.
    ///
    /// # Errors
    /// [`CliError::Config`] naming the violated invariant: p outside [1, 2],
    /// gamma zero or non-finite, sizes empty / containing a zero part / not
    /// strictly increasing in total dimension, decay_alpha negative or
    /// non-finite, duplicate suites, or a convergence suite with fewer than
    /// three sizes.
    pub fn validate(&self) -> Result<(), CliError> {
        if !self.p.is_finite() || !(1.0..=2.0).contains(&self.p) {
            return Err(CliError::Config(format!(
                "p must lie in [1, 2], got {}",
                self.p
            )));
        }
        if !self.gamma.is_finite() || self.gamma == 0.0 {
            return Err(CliError::Config(format!(
                "gamma must be a nonzero finite real, got {}",
                self.gamma
            )));
        }
        if !self.decay_alpha.is_finite() || self.decay_alpha < 0.0 {
            return Err(CliError::Config(format!(
                "decay_alpha must be a finite nonnegative real, got {}",
                self.decay_alpha
            )));
        }
        if self.sizes.is_empty() {
            return Err(CliError::Config("sizes must be nonempty".to_string()));
        }
        let mut prev_total = 0usize;
        for &(np, nm) in &self.sizes {
            if np == 0 || nm == 0 {
                return Err(CliError::Config(format!(
                    "every size needs both parts at least 1, got ({np}, {nm})"
                )));
            }
            let total = np + nm;
            if total <= prev_total {
                return Err(CliError::Config(format!(
                    "sizes must strictly increase in total dimension; ({np}, {nm}) does not"
                )));
            }
            prev_total = total;
        }
        for (i, suite) in self.suites.iter().enumerate() {
            if self.suites[..i].contains(suite) {
                return Err(CliError::Config(format!("suite `{suite}` listed twice")));
            }
        }
        if self.suites.contains(&Suite::Convergence) && self.sizes.len() < 3 {
            return Err(CliError::Config(
                "the convergence suite needs at least three sizes".to_string(),
            ));
        }
        Ok(())
    }

    /// Loads and validates a JSON config file.
    ///
    /// # Errors
    /// [`CliError::Io`] if the file is unreadable, [`CliError::Parse`] on
    /// malformed JSON (including unknown fields or unknown suite names),
    /// plus everything [`validate`](Self::validate) rejects.
    pub fn from_path(path: impl AsRef<std::path::Path>) -> Result<Self, CliError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let config: Self = serde_json::from_str(&text)?;
        config.validate()?;
        Ok(config)
    }
}

/// Parses the `--sizes` flag syntax `"a,b;c,d"` into size pairs.
///
/// # Errors
/// [`CliError::Sizes`] when a group is not exactly two comma-separated
/// nonnegative integers.
pub fn parse_sizes(text: &str) -> Result<Vec<(usize, usize)>, CliError> {
    text.split(';')
        .map(|group| {
            let parts: Vec<&str> = group.split(',').map(str::trim).collect();
            if parts.len() != 2 {
                return Err(CliError::Sizes(format!(
                    "expected `n_plus,n_minus`, got `{group}`"
                )));
            }
            let np = parts[0]
                .parse::<usize>()
                .map_err(|e| CliError::Sizes(format!("bad n_plus `{}`: {e}", parts[0])))?;
            let nm = parts[1]
                .parse::<usize>()
                .map_err(|e| CliError::Sizes(format!("bad n_minus `{}`: {e}", parts[1])))?;
            Ok((np, nm))
        })
        .collect()
}
