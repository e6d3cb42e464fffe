use std::io;

use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Error)]
pub enum Error {
    #[error("curve needs at least {min} samples, got {got}")]
    TooFewSamples { got: usize, min: usize },
    #[error("sample {index} is not finite")]
    NonFinite { index: usize },
    #[error("curve is not immersed: min speed {min_speed:e} below threshold {threshold:e}")]
    NotImmersed { min_speed: f64, threshold: f64 },
    #[error("total curvature / 2pi = {total} is {residual:e} away from an integer")]
    AmbiguousWinding { total: f64, residual: f64 },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("truncation order {p_max} exceeds limit {limit}")]
    TruncationTooHigh { p_max: usize, limit: usize },
    #[error("winding number {0} is not admissible here (need |omega| >= 1)")]
    BadWinding(i64),
    #[error("immersion lost at t = {t}")]
    ImmersionLost { t: f64 },
    #[error("step size fell below dt_min = {dt_min:e} at t = {t} without an accepted step")]
    StepFloorReached { t: f64, dt_min: f64 },
    #[error("corrupt checkpoint: {0}")]
    CorruptCheckpoint(String),
    #[error("denominator at stationarity floor")]
    DegenerateDenominator,
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("insufficient data: need {needed} samples, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("non-positive value in log-linear fit at index {index}")]
    NonPositiveEnergy { index: usize },
    #[error("degenerate circle fit (points collinear or coincident)")]
    DegenerateFit,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
