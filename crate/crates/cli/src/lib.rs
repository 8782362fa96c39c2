//! Report-producing commands behind the `isominimal` binary.
//!
//! Every command returns a [`Report`] with top-level keys `schema_version`,
//! `command`, `config`, `results` and `timing`, rendered as JSON or CSV.

pub mod args;
pub mod config;
pub mod render;

use std::time::Instant;

use isominimal::catalog::{all_models, cartan_level, equator_model, ModelSummary};
use isominimal::identities::{run_sweep, IdentityVerdict, SweepConfig};
use isominimal::shape::{sweep_analyze, ShapeError, SurfaceStats, SweepTolerances};
use isominimal::sphere::LevelSpec;
use isominimal::ScalarFieldSpec;
use serde::Serialize;
use thiserror::Error;

pub use config::{Command, ConfigError, Format, RunConfig, Surface};

pub const SCHEMA_VERSION: &str = "1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot encode report: {0}")]
    Encode(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Numerical(_) => EXIT_NUMERICAL,
            _ => EXIT_CONFIG,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Results {
    Analyze(SurfaceStats),
    Verify(Vec<IdentityVerdict>),
    Catalog(Vec<ModelSummary>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub command: Command,
    pub config: RunConfig,
    pub results: Results,
    /// Wall-clock seconds; `None` when timing is omitted.
    pub timing: Option<f64>,
}

impl Report {
    /// Exit status implied by the results.
    pub fn exit_code(&self) -> i32 {
        let ok = match &self.results {
            Results::Analyze(_) => true,
            Results::Verify(v) => v.iter().all(IdentityVerdict::passed),
            Results::Catalog(m) => m.iter().all(|s| s.checks_passed),
        };
        if ok {
            EXIT_OK
        } else {
            EXIT_NUMERICAL
        }
    }
}

fn level_spec(cfg: &RunConfig) -> Result<LevelSpec, RunError> {
    match (cfg.surface, cfg.t) {
        (Some(Surface::Equator), None) => {
            let m = equator_model();
            Ok(LevelSpec::new(m.field.expect("equator has a field"), m.level.expect("equator has a level")))
        }
        (Some(Surface::Cartan), Some(t)) => {
            let level = cartan_level(t).map_err(|e| ConfigError::BadAngle(e.to_string()))?;
            Ok(LevelSpec::new(ScalarFieldSpec::CartanQuartic, level))
        }
        _ => Err(RunError::Config(ConfigError::MissingSurface)),
    }
}

pub fn run_analyze(cfg: &RunConfig) -> Result<SurfaceStats, RunError> {
    cfg.validate()?;
    let spec = level_spec(cfg)?;
    let tols = SweepTolerances { minimal_tol: cfg.tol, s_tol: cfg.tol, ..SweepTolerances::default() };
    match sweep_analyze(&spec, cfg.samples, cfg.seed, &tols, cfg.workers) {
        Ok((stats, _)) => Ok(stats),
        Err(ShapeError::NoSamples) => Err(ConfigError::NotPositive { name: "samples" }.into()),
        Err(e) => Err(RunError::Numerical(e.to_string())),
    }
}

pub fn run_verify(cfg: &RunConfig) -> Result<Vec<IdentityVerdict>, RunError> {
    cfg.validate()?;
    let kind = cfg.identity.ok_or(ConfigError::MissingIdentity)?;
    let sweep = SweepConfig { trials: cfg.trials, seed: cfg.seed, height: cfg.height, workers: cfg.workers };
    let verdict = run_sweep(kind, &sweep).map_err(|e| RunError::Numerical(e.to_string()))?;
    Ok(vec![verdict])
}

pub fn run_catalog(cfg: &RunConfig) -> Result<Vec<ModelSummary>, RunError> {
    cfg.validate()?;
    Ok(all_models().iter().map(|m| m.summary()).collect())
}

/// Runs the configured command and assembles its report.
pub fn run(cfg: &RunConfig) -> Result<Report, RunError> {
    let start = Instant::now();
    let results = match cfg.command {
        Command::Analyze => Results::Analyze(run_analyze(cfg)?),
        Command::Verify => Results::Verify(run_verify(cfg)?),
        Command::Catalog => Results::Catalog(run_catalog(cfg)?),
    };
    let elapsed = start.elapsed().as_secs_f64();
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        command: cfg.command,
        config: cfg.clone(),
        results,
        timing: (!cfg.omit_timing).then_some(elapsed),
    })
}
