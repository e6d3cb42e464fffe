use serde::{Deserialize, Serialize};

use super::config::FlowConfig;
use super::stepper::{step, FlowState};
use crate::error::{Error, Result};
use crate::geometry::{resample_uniform_arclength, CurveState};
use crate::validate::circle::{fit_circle, CircleFit};

/// Header of the diagnostics CSV stream.
pub const DIAGNOSTICS_HEADER: &str = "t,L,E,L3E,K_l2sq,k_sup,Q_blowup,circle_residual,min_speed";

/// One row of the diagnostics time series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsRecord {
    pub t: f64,
    #[serde(rename = "L")]
    pub length: f64,
    #[serde(rename = "E")]
    pub energy: f64,
    #[serde(rename = "L3E")]
    pub scale_invariant_energy: f64,
    #[serde(rename = "K_l2sq")]
    pub el_norm_sq: f64,
    pub k_sup: f64,
    /// `L + int k_{s^5}^2 ds`.
    #[serde(rename = "Q_blowup")]
    pub blowup: f64,
    pub circle_residual: f64,
    pub min_speed: f64,
}

impl DiagnosticsRecord {
    pub fn from_state(state: &FlowState) -> Self {
        let g = &state.geometry;
        let circle_residual = fit_circle(&g.curve).map(|f| f.residual).unwrap_or(1.0);
        Self {
            t: state.time,
            length: g.length,
            energy: g.energy,
            scale_invariant_energy: g.scale_invariant_energy(),
            el_norm_sq: state.el.l2_norm_sq,
            k_sup: g.sup_curvature(),
            blowup: g.length + g.l2_norm_sq(5),
            circle_residual,
            min_speed: g.min_speed(),
        }
    }

    /// `L^9 ||K||^2`.
    pub fn scale_invariant_el(&self) -> f64 {
        self.length.powi(9) * self.el_norm_sq
    }

    pub fn fields(&self) -> [f64; 9] {
        [
            self.t,
            self.length,
            self.energy,
            self.scale_invariant_energy,
            self.el_norm_sq,
            self.k_sup,
            self.blowup,
            self.circle_residual,
            self.min_speed,
        ]
    }

    pub fn from_fields(f: [f64; 9]) -> Self {
        Self {
            t: f[0],
            length: f[1],
            energy: f[2],
            scale_invariant_energy: f[3],
            el_norm_sq: f[4],
            k_sup: f[5],
            blowup: f[6],
            circle_residual: f[7],
            min_speed: f[8],
        }
    }

    pub fn all_finite(&self) -> bool {
        self.fields().iter().all(|x| x.is_finite())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    Converged,
    TEnd,
    StepFloor,
    ImmersionLost,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub records: Vec<DiagnosticsRecord>,
    pub final_state: FlowState,
    pub termination: Termination,
    /// Circle fitted to the final curve; recorded, not asserted on.
    pub limit_circle: Option<CircleFit>,
    pub initial_energy: f64,
}

pub fn run(initial: &CurveState, config: &FlowConfig) -> Result<RunOutput> {
    run_with(initial, config, |_, _| {})
}

/// Run the flow from `initial`, calling `observer` on every emitted snapshot.
///
/// The initial curve is redistributed uniformly in arc length first. A record
/// is emitted at `t = 0`, every `snapshot_stride` accepted steps and at
/// termination. Step-floor and immersion failures end the run and are reported
/// through [`RunOutput::termination`] together with the last accepted state.
pub fn run_with(
    initial: &CurveState,
    config: &FlowConfig,
    mut observer: impl FnMut(&DiagnosticsRecord, &FlowState),
) -> Result<RunOutput> {
    config.validate()?;
    let start = resample_uniform_arclength(initial, initial.n_samples())?;
    let mut state = FlowState::new(start, config.dt_initial)?;
    let initial_energy = state.energy();
    let mut records = Vec::new();
    let mut streak = 0usize;

    let mut emit = |state: &FlowState, records: &mut Vec<DiagnosticsRecord>, streak: &mut usize| {
        let record = DiagnosticsRecord::from_state(state);
        if record.scale_invariant_el() < config.tol_conv && record.circle_residual < config.tol_circ
        {
            *streak += 1;
        } else {
            *streak = 0;
        }
        observer(&record, state);
        records.push(record);
    };

    emit(&state, &mut records, &mut streak);
    let mut last_recorded = 0u64;
    let termination = loop {
        if streak >= config.convergence_window {
            break Termination::Converged;
        }
        let remaining = config.t_end - state.time;
        if remaining <= 1e-14 * config.t_end.max(1e-300) || remaining <= 0.0 {
            break Termination::TEnd;
        }
        state.dt = state.dt.min(remaining);
        match step(&state, config) {
            Ok(next) => state = next,
            Err(Error::StepFloorReached { .. }) => break Termination::StepFloor,
            Err(Error::ImmersionLost { .. }) => break Termination::ImmersionLost,
            Err(e) => return Err(e),
        }
        if state.steps % config.snapshot_stride == 0 {
            emit(&state, &mut records, &mut streak);
            last_recorded = state.steps;
        }
    };
    if last_recorded != state.steps {
        emit(&state, &mut records, &mut streak);
    }

    Ok(RunOutput {
        limit_circle: fit_circle(state.curve()).ok(),
        records,
        final_state: state,
        termination,
        initial_energy,
    })
}
