//! Executable checks over single curves and flow trajectories.

pub mod circle;
pub mod corpus;
pub mod decay;
pub mod inequalities;
pub mod report;
pub mod rigidity;
pub mod suite;

pub use circle::{fit_circle, CircleFit};
pub use corpus::{
    perturbed_circle_corpus, random_band_limited_field, random_perturbed_circle, reference_corpus,
    CorpusCurve,
};
pub use decay::{fit_energy_decay, fit_exponential_decay, fit_trailing_half, DecayFit};
pub use inequalities::{
    check_curvature_bound, check_gap_estimate, check_length_bounds, check_mode_gap,
    check_monotone_scale_invariant_energy, check_stability_estimate, check_stability_estimate_with,
    default_gap_floor, linearised_gap_ratio, LENGTH_BAND, MONOTONE_ALLOWANCE,
    STABILITY_RATIO_CEILING,
};
pub use report::{CheckStatus, InequalityReport};
pub use rigidity::{rigidity_profile, RigidityProfile, STATIONARITY_FLOOR};
pub use suite::{curve_checks, trajectory_checks};

use crate::geometry::GeometryCache;

/// `-int V K ds`; shares its code path with the flow's first-variation check.
pub fn variation_functional(cache: &GeometryCache, field: &[f64]) -> f64 {
    crate::flow::predicted_variation(cache, field)
}
