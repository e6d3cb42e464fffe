use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const CONFIG_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Sixth-derivative part implicit and diagonal in Fourier space, remainder explicit.
    #[default]
    ImexSpectral,
    /// Classical fourth-order Runge-Kutta; needs `dt = O(N^-6)`.
    ExplicitRk4,
}

/// Time-stepping and termination parameters. Times are in units of length^6.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FlowConfig {
    pub schema_version: u32,
    pub dt_initial: f64,
    pub dt_min: f64,
    pub dt_max: f64,
    /// Growth of the proposed step after an acceptance.
    pub dt_growth: f64,
    pub scheme: Scheme,
    /// Accept when `E_new <= E_old + tol * dt * ||K||^2`.
    pub energy_increase_tolerance: f64,
    /// Resample to uniform arc length every this many accepted steps.
    pub resample_every: u64,
    pub t_end: f64,
    /// Emit a diagnostics record every this many accepted steps.
    pub snapshot_stride: u64,
    /// Smallness threshold on `L^3 E`. Empirical; no value is implied by the analysis.
    pub small_energy_threshold: f64,
    /// Convergence requires `L^9 ||K||^2 < tol_conv` ...
    pub tol_conv: f64,
    /// ... and a circle-fit residual below `tol_circ` ...
    pub tol_circ: f64,
    /// ... on this many consecutive snapshots.
    pub convergence_window: usize,
}

impl Default for FlowConfig {
    fn default() -> Self {
        Self {
            schema_version: CONFIG_SCHEMA_VERSION,
            dt_initial: 1e-4,
            dt_min: 1e-12,
            dt_max: 1e-3,
            dt_growth: 1.1,
            scheme: Scheme::ImexSpectral,
            energy_increase_tolerance: 0.0,
            resample_every: 10,
            t_end: 1.0,
            snapshot_stride: 1,
            small_energy_threshold: 1e-2,
            tol_conv: 1e-10,
            tol_circ: 1e-6,
            convergence_window: 10,
        }
    }
}

impl FlowConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::BadParams(msg));
        if self.schema_version > CONFIG_SCHEMA_VERSION {
            return bad(format!(
                "config schema version {} is newer than supported {CONFIG_SCHEMA_VERSION}",
                self.schema_version
            ));
        }
        if !(self.dt_min > 0.0 && self.dt_min <= self.dt_initial && self.dt_initial <= self.dt_max)
        {
            return bad(format!(
                "need 0 < dt_min <= dt_initial <= dt_max, got {} / {} / {}",
                self.dt_min, self.dt_initial, self.dt_max
            ));
        }
        if !(self.dt_growth >= 1.0) {
            return bad(format!("dt_growth must be >= 1, got {}", self.dt_growth));
        }
        if !(self.small_energy_threshold > 0.0) {
            return bad("small_energy_threshold must be positive".into());
        }
        if !(self.energy_increase_tolerance >= 0.0) {
            return bad("energy_increase_tolerance must be non-negative".into());
        }
        if !(self.t_end >= 0.0) {
            return bad("t_end must be non-negative".into());
        }
        if self.resample_every == 0 || self.snapshot_stride == 0 || self.convergence_window == 0 {
            return bad(
                "resample_every, snapshot_stride and convergence_window must be >= 1".into(),
            );
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_json_fills_defaults() {
        let c: FlowConfig =
            serde_json::from_str(r#"{"t_end": 0.5, "scheme": "explicit_rk4"}"#).unwrap();
        assert_eq!(c.t_end, 0.5);
        assert_eq!(c.scheme, Scheme::ExplicitRk4);
        assert_eq!(c.resample_every, 10);
        c.validate().unwrap();
    }

    #[test]
    fn invalid_bounds_rejected() {
        let c = FlowConfig {
            dt_min: 1e-2,
            ..FlowConfig::default()
        };
        assert!(c.validate().is_err());
        let c = FlowConfig {
            small_energy_threshold: 0.0,
            ..FlowConfig::default()
        };
        assert!(c.validate().is_err());
    }
}
