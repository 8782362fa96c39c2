//! Run configuration and its validation.

use std::f64::consts::{FRAC_PI_4, PI};
use std::path::PathBuf;

use isominimal::identities::IdentityKind;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("--surface is required for analyze")]
    MissingSurface,
    #[error("--t is required for the cartan surface")]
    MissingT,
    #[error("--t applies only to the cartan surface")]
    UnexpectedT,
    #[error("--identity is required for verify")]
    MissingIdentity,
    #[error("cannot parse angle '{0}': expected decimal radians or pi/<number>")]
    BadAngle(String),
    #[error("t = {0} must lie in (0, pi/4)")]
    AngleOutOfRange(f64),
    #[error("{name} must be at least 1")]
    NotPositive { name: &'static str },
    #[error("tol must be positive and finite, got {0}")]
    BadTolerance(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Analyze,
    Verify,
    Catalog,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Verify => "verify",
            Command::Catalog => "catalog",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Surface {
    Equator,
    Cartan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

fn identity_name<S: Serializer>(id: &Option<IdentityKind>, s: S) -> Result<S::Ok, S::Error> {
    match id {
        Some(k) => s.serialize_some(k.name()),
        None => s.serialize_none(),
    }
}

/// Everything a run depends on. Serialized as the `config` echo of a report,
/// without the output path.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub surface: Option<Surface>,
    pub t: Option<f64>,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub trials: u64,
    #[serde(serialize_with = "identity_name")]
    pub identity: Option<IdentityKind>,
    pub height: u64,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    pub format: Format,
    pub workers: usize,
    #[serde(skip)]
    pub omit_timing: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            surface: None,
            t: None,
            samples: 1000,
            seed: 0,
            tol: 1e-6,
            trials: 1000,
            identity: None,
            height: 1000,
            output: None,
            format: Format::Json,
            workers: 1,
            omit_timing: false,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.samples == 0 {
            return Err(ConfigError::NotPositive { name: "samples" });
        }
        if self.trials == 0 {
            return Err(ConfigError::NotPositive { name: "trials" });
        }
        if self.height == 0 {
            return Err(ConfigError::NotPositive { name: "height" });
        }
        if self.workers == 0 {
            return Err(ConfigError::NotPositive { name: "workers" });
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(ConfigError::BadTolerance(self.tol));
        }
        if let Some(t) = self.t {
            if !(t > 0.0 && t < FRAC_PI_4) {
                return Err(ConfigError::AngleOutOfRange(t));
            }
        }
        match self.command {
            Command::Analyze => match (self.surface, self.t) {
                (None, _) => Err(ConfigError::MissingSurface),
                (Some(Surface::Cartan), None) => Err(ConfigError::MissingT),
                (Some(Surface::Equator), Some(_)) => Err(ConfigError::UnexpectedT),
                _ => Ok(()),
            },
            Command::Verify if self.identity.is_none() => Err(ConfigError::MissingIdentity),
            _ => Ok(()),
        }
    }
}

/// Decimal radians, or `pi/<divisor>`.
pub fn parse_angle(s: &str) -> Result<f64, ConfigError> {
    let bad = || ConfigError::BadAngle(s.to_string());
    let t = s.trim();
    let value = match t.strip_prefix("pi/") {
        Some(div) => {
            let d: f64 = div.trim().parse().map_err(|_| bad())?;
            PI / d
        }
        None if t == "pi" => PI,
        None => t.parse().map_err(|_| bad())?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}
