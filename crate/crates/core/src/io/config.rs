use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{read_file, IoError};
use crate::classify::ClassifierConfig;
use crate::ontic::{REFERENCE_BORN_TOL, REFERENCE_GRID};
use crate::zoo::MIN_SPHERE_GRID;

/// Overrides [`RunConfig::seed`] when set to an unsigned integer.
pub const SEED_ENV: &str = "ONTOSCOPE_SEED";

/// Settings shared by every command. All randomness derives from `seed`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub grid_size: usize,
    pub tolerance: f64,
    pub seed: u64,
    pub pair_budget: usize,
    pub coverage_floor: usize,
    pub output_dir: PathBuf,
    pub report_path: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            grid_size: REFERENCE_GRID,
            tolerance: REFERENCE_BORN_TOL,
            seed: 42,
            pair_budget: 200,
            coverage_floor: ClassifierConfig::default().coverage_floor,
            output_dir: PathBuf::from("."),
            report_path: None,
        }
    }
}

impl RunConfig {
    pub fn from_toml_str(s: &str) -> Result<Self, IoError> {
        let config: Self = toml::from_str(s).map_err(|e| IoError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: &Path) -> Result<Self, IoError> {
        Self::from_toml_str(&read_file(path)?)
    }

    /// Applies [`SEED_ENV`] if present.
    pub fn with_env(self) -> Result<Self, IoError> {
        self.with_seed_override(std::env::var(SEED_ENV).ok().as_deref())
    }

    pub fn with_seed_override(mut self, value: Option<&str>) -> Result<Self, IoError> {
        if let Some(v) = value {
            self.seed = v
                .trim()
                .parse()
                .map_err(|_| IoError::Config(format!("{SEED_ENV}=`{v}` is not an unsigned integer")))?;
        }
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), IoError> {
        if self.grid_size < MIN_SPHERE_GRID {
            return Err(IoError::Config(format!(
                "grid_size {} is below the minimum {MIN_SPHERE_GRID}",
                self.grid_size
            )));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(IoError::Config(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        Ok(())
    }

    pub fn classifier(&self) -> ClassifierConfig {
        ClassifierConfig {
            tolerance: self.tolerance,
            coverage_floor: self.coverage_floor,
        }
    }
}
