//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use isominimal::identities::IdentityKind;

use crate::config::{parse_angle, Command, ConfigError, Format, RunConfig, Surface};

#[derive(Debug, Parser)]
#[command(name = "isominimal", version, about = "Curvature analyses, identity sweeps and catalog checks for minimal hypersurfaces of S^5")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Sample a level hypersurface and classify it.
    Analyze(AnalyzeArgs),
    /// Run a randomized exact sweep of one identity.
    Verify(VerifyArgs),
    /// List the isoparametric minimal models with their checks.
    Catalog(CommonArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Minimality and catalog-matching tolerance.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Report path; standard output when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Write `timing: null` so reports are byte-for-byte reproducible.
    #[arg(long)]
    pub omit_timing: bool,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long, value_enum)]
    pub surface: Option<Surface>,
    /// Level parameter in radians, or `pi/8`.
    #[arg(long)]
    pub t: Option<String>,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// g2, g3, vandermonde, i-closed, i-sign, dpsi or recover.
    #[arg(long)]
    pub identity: Option<IdentityKind>,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    /// Bound on numerators and denominators of random rationals.
    #[arg(long, default_value_t = 1000)]
    pub height: u64,
    #[command(flatten)]
    pub common: CommonArgs,
}

fn apply(cfg: &mut RunConfig, c: CommonArgs) {
    cfg.seed = c.seed;
    cfg.tol = c.tol;
    cfg.output = c.output;
    cfg.format = c.format;
    cfg.workers = c.workers;
    cfg.omit_timing = c.omit_timing;
}

impl Cli {
    /// Builds and validates the run configuration.
    pub fn into_config(self) -> Result<RunConfig, ConfigError> {
        let cfg = match self.command {
            Cmd::Analyze(a) => {
                let mut cfg = RunConfig::new(Command::Analyze);
                cfg.surface = a.surface;
                cfg.t = a.t.as_deref().map(parse_angle).transpose()?;
                cfg.samples = a.samples;
                apply(&mut cfg, a.common);
                cfg
            }
            Cmd::Verify(v) => {
                let mut cfg = RunConfig::new(Command::Verify);
                cfg.identity = v.identity;
                cfg.trials = v.trials;
                cfg.height = v.height;
                apply(&mut cfg, v.common);
                cfg
            }
            Cmd::Catalog(c) => {
                let mut cfg = RunConfig::new(Command::Catalog);
                apply(&mut cfg, c);
                cfg
            }
        };
        cfg.validate()?;
        Ok(cfg)
    }
}
