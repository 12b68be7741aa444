//! Command-line entry point for the experiment runner.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::Parser;

use resgrass::config::{parse_sizes, CliError, ExperimentConfig, Suite};
use resgrass::report::reports_to_json;
use resgrass::runner::run_full;

/// Numerical experiment runner for the restricted Grassmannian and its
/// coadjoint-orbit realization.
#[derive(Debug, Parser)]
#[command(name = "resgrass", version, about)]
struct Args {
    /// Path to a JSON experiment config; defaults apply for absent fields.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Suite to run (repeatable); overrides the config's suite list.
    #[arg(long = "suite", value_name = "NAME")]
    suites: Vec<String>,

    /// Root seed; overrides both the config and RESGRASS_SEED.
    #[arg(long)]
    seed: Option<u64>,

    /// Write the JSON report here (and the convergence CSV next to it)
    /// instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Truncation sizes as "n+,n-;n+,n-;..."; overrides the config.
    #[arg(long)]
    sizes: Option<String>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(args) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn execute(args: Args) -> Result<bool, CliError> {
    let mut cfg = match &args.config {
        Some(path) => ExperimentConfig::from_path(path)?,
        None => ExperimentConfig::default(),
    };

    if !args.suites.is_empty() {
        cfg.suites = args
            .suites
            .iter()
            .map(|name| Suite::from_str(name))
            .collect::<Result<Vec<_>, _>>()?;
    }
    if let Some(sizes) = &args.sizes {
        cfg.sizes = parse_sizes(sizes)?;
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    } else if let Ok(text) = std::env::var("RESGRASS_SEED") {
        cfg.seed = text
            .parse()
            .map_err(|_| CliError::Config(format!("RESGRASS_SEED is not a u64: {text:?}")))?;
    }
    if let Some(out) = &args.out {
        cfg.output_path = Some(out.display().to_string());
    }
    cfg.validate()?;

    let (reports, csv) = run_full(&cfg)?;
    for report in &reports {
        let verdict = if report.passed { "pass" } else { "FAIL" };
        eprintln!(
            "{:<12} {} (max violation {:.3e}, threshold {})",
            report.suite, verdict, report.max_violation, report.threshold
        );
    }

    let json = reports_to_json(&reports);
    match cfg.output_path.as_deref() {
        Some(path) => {
            write_text(Path::new(path), &json)?;
            if let Some(table) = csv {
                write_text(&csv_path(Path::new(path)), &table)?;
            }
        }
        None => {
            print!("{json}");
            if let Some(table) = csv {
                print!("{table}");
            }
        }
    }
    Ok(reports.iter().all(|r| r.passed))
}

/// The CSV lands next to the JSON report, never on top of it.
fn csv_path(json_path: &Path) -> PathBuf {
    let candidate = json_path.with_extension("csv");
    if candidate == json_path {
        let mut name = json_path.as_os_str().to_owned();
        name.push(".table.csv");
        PathBuf::from(name)
    } else {
        candidate
    }
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}
