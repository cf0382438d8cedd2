//! Run configuration: a JSON document whose keys command-line flags override.

use std::path::{Path, PathBuf};

use fracineq::functions::lookup;
use fracineq::quadrature::{DEFAULT_ABS_TOL, DEFAULT_REL_TOL};
use fracineq::QuadConfig;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepGrid {
    pub alphas: Vec<f64>,
    pub ss: Vec<f64>,
    pub qs: Vec<f64>,
    pub intervals: Vec<(f64, f64)>,
    /// Points per interval, linearly spaced over `[a, b]` inclusive.
    pub x_count: usize,
}

impl Default for SweepGrid {
    fn default() -> Self {
        Self {
            alphas: vec![0.5, 1.0, 2.0],
            ss: vec![0.5, 1.0],
            qs: vec![1.0, 2.0],
            intervals: vec![(1.0, 2.0), (0.5, 3.0)],
            x_count: 5,
        }
    }
}

impl SweepGrid {
    pub fn validate(&self) -> CliResult<()> {
        let usage = |m: &str| Err(CliError::Usage(format!("grid: {m}")));
        if self.alphas.is_empty() || self.ss.is_empty() || self.qs.is_empty() || self.intervals.is_empty() {
            return usage("alphas, ss, qs and intervals must be non-empty");
        }
        if self.x_count == 0 {
            return usage("x_count must be at least 1");
        }
        if !self.alphas.iter().all(|a| a.is_finite() && *a > 0.0) {
            return usage("every alpha must be positive");
        }
        if !self.ss.iter().all(|s| *s > 0.0 && *s <= 1.0) {
            return usage("every s must lie in (0, 1]");
        }
        if !self.qs.iter().all(|q| q.is_finite() && *q >= 1.0) {
            return usage("every q must be >= 1");
        }
        if !self.intervals.iter().all(|&(a, b)| a > 0.0 && a < b && b.is_finite()) {
            return usage("every interval needs 0 < a < b");
        }
        Ok(())
    }

    pub fn xs(&self, a: f64, b: f64) -> Vec<f64> {
        if self.x_count == 1 {
            return vec![0.5 * (a + b)];
        }
        let n = (self.x_count - 1) as f64;
        (0..self.x_count)
            .map(|i| match i {
                0 => a,
                _ if i == self.x_count - 1 => b,
                _ => a + (b - a) * i as f64 / n,
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { rel: DEFAULT_REL_TOL, abs: DEFAULT_ABS_TOL }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub function_name: String,
    pub grid: SweepGrid,
    pub tolerances: Tolerances,
    pub output: OutputSpec,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            function_name: "identity".into(),
            grid: SweepGrid::default(),
            tolerances: Tolerances::default(),
            output: OutputSpec::default(),
            seed: 0,
        }
    }
}

impl RunConfig {
    /// Reads a config file; a missing file is an I/O error, bad JSON a usage
    /// error.
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
    }

    pub fn validate(&self) -> CliResult<()> {
        lookup(&self.function_name)?;
        self.grid.validate()?;
        let Tolerances { rel, abs } = self.tolerances;
        if !(rel > 0.0 && abs > 0.0 && rel.is_finite() && abs.is_finite()) {
            return Err(CliError::Usage(format!("tolerances must be positive, got rel {rel}, abs {abs}")));
        }
        Ok(())
    }

    pub fn quad(&self) -> QuadConfig {
        QuadConfig::with_tolerances(self.tolerances.rel, self.tolerances.abs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_json_fills_defaults() {
        let cfg: RunConfig = serde_json::from_str(r#"{"function_name": "neg_log", "seed": 9}"#).unwrap();
        assert_eq!(cfg.function_name, "neg_log");
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.grid, SweepGrid::default());
        cfg.validate().unwrap();
    }

    #[test]
    fn unknown_keys_and_bad_values_rejected() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"functon": "x"}"#).is_err());
        let cfg: RunConfig = serde_json::from_str(r#"{"output": {"path": null, "format": "json"}}"#).unwrap();
        assert_eq!(cfg.output.format, Format::Json);
        assert!(serde_json::from_str::<RunConfig>(r#"{"output": {"path": null, "format": "xml"}}"#).is_err());
        let mut cfg = RunConfig::default();
        cfg.grid.ss = vec![1.5];
        assert!(matches!(cfg.validate(), Err(CliError::Usage(_))));
    }

    #[test]
    fn x_points_cover_interval() {
        let g = SweepGrid { x_count: 3, ..SweepGrid::default() };
        assert_eq!(g.xs(1.0, 2.0), vec![1.0, 1.5, 2.0]);
        let g = SweepGrid { x_count: 1, ..SweepGrid::default() };
        assert_eq!(g.xs(1.0, 2.0), vec![1.5]);
    }
}
