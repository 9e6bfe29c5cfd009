//! Run configuration: command-line flags layered over an optional TOML file.

use std::path::Path;

use quatcs::quantize::GridOrders;
use serde::{Deserialize, Serialize};

use crate::report::{ser_f64, ser_opt_f64};
use crate::CliError;

pub const DEFAULT_TRUNC_DIM: usize = 16;
pub const DEFAULT_SEED: u64 = 20240917;
/// Largest symbol degree any suite quantizes (`|q|²` and `q c q̄`).
pub const SUITE_SYMBOL_DEGREE: usize = 2;

/// Values read from a `--config` file. Every key is optional.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub trunc_dim: Option<usize>,
    pub radial_order: Option<usize>,
    pub theta_nodes: Option<usize>,
    pub phi_order: Option<usize>,
    pub psi_nodes: Option<usize>,
    pub tolerance: Option<f64>,
    pub seed: Option<u64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// `self` with every key set in `over` replaced.
    pub fn overlay(self, over: FileConfig) -> Self {
        Self {
            trunc_dim: over.trunc_dim.or(self.trunc_dim),
            radial_order: over.radial_order.or(self.radial_order),
            theta_nodes: over.theta_nodes.or(self.theta_nodes),
            phi_order: over.phi_order.or(self.phi_order),
            psi_nodes: over.psi_nodes.or(self.psi_nodes),
            tolerance: over.tolerance.or(self.tolerance),
            seed: over.seed.or(self.seed),
        }
    }
}

/// Fully resolved configuration, echoed in every report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub trunc_dim: usize,
    pub radial_order: usize,
    pub theta_nodes: usize,
    pub phi_order: usize,
    pub psi_nodes: usize,
    /// Replaces every per-check tolerance when set.
    #[serde(serialize_with = "ser_opt_f64")]
    pub tolerance: Option<f64>,
    pub seed: u64,
    /// Truncation used by the coherent-state checks.
    pub cs_dim: usize,
    /// Hermite parameter of the one-index suite.
    #[serde(serialize_with = "ser_f64")]
    pub hermite_s: f64,
}

impl Config {
    /// Fill unset grid orders from the certificate rule for `trunc_dim` and
    /// validate the result.
    pub fn resolve(raw: FileConfig) -> Result<Self, CliError> {
        let n = raw.trunc_dim.unwrap_or(DEFAULT_TRUNC_DIM);
        if n < 3 {
            return Err(CliError::Config(format!("trunc-dim must be at least 3, got {n}")));
        }
        let auto = GridOrders::for_problem(n, SUITE_SYMBOL_DEGREE);
        let cfg = Self {
            trunc_dim: n,
            radial_order: raw.radial_order.unwrap_or(auto.radial),
            theta_nodes: raw.theta_nodes.unwrap_or(auto.theta),
            phi_order: raw.phi_order.unwrap_or(auto.phi),
            psi_nodes: raw.psi_nodes.unwrap_or(auto.psi),
            tolerance: raw.tolerance,
            seed: raw.seed.unwrap_or(DEFAULT_SEED),
            cs_dim: 2 * n,
            hermite_s: 0.5,
        };
        for (name, v) in [
            ("radial-order", cfg.radial_order),
            ("theta-nodes", cfg.theta_nodes),
            ("phi-order", cfg.phi_order),
            ("psi-nodes", cfg.psi_nodes),
        ] {
            if v == 0 {
                return Err(CliError::Config(format!("{name} must be positive")));
            }
        }
        if let Some(t) = cfg.tolerance {
            if !(t.is_finite() && t > 0.0) {
                return Err(CliError::Config(format!("tolerance must be positive, got {t}")));
            }
        }
        Ok(cfg)
    }

    pub fn grid_orders(&self) -> GridOrders {
        GridOrders {
            radial: self.radial_order,
            theta: self.theta_nodes,
            phi: self.phi_order,
            psi: self.psi_nodes,
        }
    }
}

impl Default for Config {
    fn default() -> Self {
        Self::resolve(FileConfig::default()).expect("defaults are valid")
    }
}
