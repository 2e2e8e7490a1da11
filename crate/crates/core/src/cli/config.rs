use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dynamics::DynamicsConfig;
use crate::error::{Error, Result};
use crate::model::{ModelParams, ValidatedModel};

/// Overrides `output.directory` when set.
pub const OUTPUT_DIR_ENV: &str = "CASIMIR_LAB_OUT";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub y_min: f64,
    pub y_max: f64,
    pub points: usize,
}

impl GridConfig {
    pub fn values(&self) -> Vec<f64> {
        let step = (self.y_max - self.y_min) / (self.points - 1) as f64;
        (0..self.points).map(|i| if i + 1 == self.points { self.y_max } else { self.y_min + step * i as f64 }).collect()
    }
}

fn default_n_max() -> usize {
    40
}

fn default_tol() -> f64 {
    1e-6
}

fn default_orders() -> Vec<usize> {
    vec![10, 11, 12, 13]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleConfig {
    #[serde(default = "default_n_max")]
    pub n_max: usize,
    #[serde(default = "default_tol")]
    pub convergence_tol: f64,
    /// Point at which `oracle-check` runs; defaults to the grid start.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<f64>,
    /// Expansion orders for the annihilation-residual scan.
    #[serde(default = "default_orders")]
    pub annihilation_orders: Vec<usize>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { n_max: default_n_max(), convergence_tol: default_tol(), y: None, annihilation_orders: default_orders() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

fn default_precision() -> usize {
    12
}

fn default_directory() -> PathBuf {
    PathBuf::from("out")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default = "default_directory")]
    pub directory: PathBuf,
    #[serde(default)]
    pub format: OutputFormat,
    /// Significant digits written per number.
    #[serde(default = "default_precision")]
    pub precision: usize,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self { directory: default_directory(), format: OutputFormat::Csv, precision: default_precision() }
    }
}

/// Initial condition for the `classical` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassicalConfig {
    #[serde(default)]
    pub x1: f64,
    #[serde(default)]
    pub x2: f64,
    pub y: f64,
    #[serde(default)]
    pub p1: f64,
    #[serde(default)]
    pub p2: f64,
    #[serde(default)]
    pub p_y: f64,
    pub dt: f64,
    pub t_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelParams,
    pub grid: GridConfig,
    #[serde(default)]
    pub oracle: OracleConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dynamics: Option<DynamicsConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classical: Option<ClassicalConfig>,
    #[serde(default)]
    pub output: OutputConfig,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            if path == "." {
                Error::Config(e.inner().to_string())
            } else {
                Error::Config(format!("{path}: {}", e.inner()))
            }
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Applies the output-directory environment override.
    pub fn with_env_overrides(mut self) -> Self {
        if let Some(dir) = std::env::var_os(OUTPUT_DIR_ENV) {
            self.output.directory = PathBuf::from(dir);
        }
        self
    }

    /// Validates the model and every run-level invariant.
    pub fn validate(&self) -> Result<ValidatedModel> {
        let model = self.model.clone().validate()?;
        if self.grid.points < 2 {
            return Err(Error::Config(format!("grid.points must be at least 2, got {}", self.grid.points)));
        }
        if !(self.grid.y_min < self.grid.y_max) {
            return Err(Error::Config(format!(
                "grid.y_min = {} must be below grid.y_max = {}",
                self.grid.y_min, self.grid.y_max
            )));
        }
        if !(6..=17).contains(&self.output.precision) {
            return Err(Error::Config(format!("output.precision must lie in [6, 17], got {}", self.output.precision)));
        }
        if self.oracle.n_max < 1 {
            return Err(Error::Config("oracle.n_max must be at least 1".into()));
        }
        if !(self.oracle.convergence_tol > 0.0) {
            return Err(Error::Config("oracle.convergence_tol must be positive".into()));
        }
        let c = model.coupling();
        for y in [self.grid.y_min, self.grid.y_max] {
            if !c.contains(y) {
                return Err(Error::Domain { y, y_min: c.y_min(), y_max: c.y_max() });
            }
        }
        Ok(model)
    }
}
