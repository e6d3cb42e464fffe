//! Gradient flow of `E = 1/2 int k_s^2 ds` for closed plane curves: spectral
//! geometry, the flow itself, and executable checks of its quantitative theory.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod flow;
pub mod geometry;
pub mod io;
pub mod presets;
pub mod spectral;
pub mod svg;
pub mod validate;

pub use analysis::{
    c_omega, decompose_curvature, k0_operator, mode_gap_report, ModeGapReport,
    SpectralDecomposition,
};
pub use error::{Error, Result};
pub use geometry::{
    build_geometry, resample_uniform_arclength, winding_number, CurveState, GeometryCache,
};
pub use presets::{preset_curve, Preset, PresetSpec};
