use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::output::CliError;

pub const CONFIG_ENV: &str = "MFXYZ_CONFIG";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Realization {
    Exact,
    Gaussian,
    Numeric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

/// Settings shared by every command. Defaults, then the config file, then
/// command-line flags.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub realization: Realization,
    pub degree: i32,
    pub tol: f64,
    pub format: Format,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            realization: Realization::Exact,
            degree: 8,
            tol: 1e-9,
            format: Format::Text,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }

    pub fn numeric(&self) -> bool {
        self.realization == Realization::Numeric
    }

    pub fn json(&self) -> bool {
        self.format == Format::Json
    }
}

/// Global flags that override the loaded configuration.
#[derive(Clone, Debug, Default, clap::Args)]
pub struct GlobalOpts {
    /// JSON config file with defaults for the flags below.
    #[arg(long, global = true, env = CONFIG_ENV)]
    pub config: Option<PathBuf>,
    /// Seed for randomized suites.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Truncation degree for series and membership checks.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub degree: Option<i32>,
    /// Tolerance for the numeric realization.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Coefficient field.
    #[arg(long, global = true, value_enum)]
    pub realization: Option<Realization>,
    /// Shorthand for `--realization numeric`.
    #[arg(long, global = true)]
    pub numeric: bool,
    /// Emit JSON instead of aligned text.
    #[arg(long, global = true)]
    pub json: bool,
}

impl GlobalOpts {
    pub fn resolve(&self, base: Option<&RunConfig>) -> Result<RunConfig, CliError> {
        let mut cfg = match (base, &self.config) {
            (_, Some(p)) => RunConfig::load(p)?,
            (Some(b), None) => b.clone(),
            (None, None) => RunConfig::default(),
        };
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(d) = self.degree {
            cfg.degree = d;
        }
        if let Some(t) = self.tol {
            cfg.tol = t;
        }
        if let Some(r) = self.realization {
            cfg.realization = r;
        }
        if self.numeric {
            cfg.realization = Realization::Numeric;
        }
        if self.json {
            cfg.format = Format::Json;
        }
        if cfg.degree < 0 {
            return Err(CliError::Usage("degree must be non-negative".into()));
        }
        if !(cfg.tol > 0.0) {
            return Err(CliError::Usage("tolerance must be positive".into()));
        }
        Ok(cfg)
    }
}
