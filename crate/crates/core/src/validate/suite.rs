//! The standard batteries of checks run by `verify`.

use crate::error::{Error, Result};
use crate::flow::DiagnosticsRecord;
use crate::geometry::GeometryCache;

use super::decay::{fit_trailing_half, MIN_FIT_SAMPLES};
use super::inequalities::{
    check_curvature_bound, check_gap_estimate, check_length_bounds, check_mode_gap,
    check_monotone_scale_invariant_energy, check_stability_estimate,
};
use super::report::{CheckStatus, InequalityReport};
use super::rigidity::rigidity_profile;

/// Relative tolerance of the rigidity integral identities.
pub const IDENTITY_TOLERANCE: f64 = 1e-8;
/// Largest acceptable log-residual of a trailing-window decay fit.
pub const DECAY_RESIDUAL_CEILING: f64 = 1e-2;
/// Runs whose `L^3 E` never exceeds this are treated as sitting at an equilibrium.
pub const EQUILIBRIUM_L3E: f64 = 1e-20;

/// Curvature bound, stability ratio, gap estimate, mode gap and the rigidity
/// integral identities on one curve.
pub fn curve_checks(
    cache: &GeometryCache,
    small_energy_threshold: f64,
) -> Result<Vec<InequalityReport>> {
    let mut out = vec![check_curvature_bound(cache)?];
    out.push(match check_stability_estimate(cache) {
        Ok(r) => r,
        Err(Error::DegenerateDenominator) => {
            InequalityReport::new("stability_estimate", 0.0, 0.0, 0.0, 0.0)
                .with_status(CheckStatus::Stationary)
        }
        Err(e) => return Err(e),
    });
    out.push(check_gap_estimate(cache, small_energy_threshold, None)?);
    out.push(match check_mode_gap(cache) {
        Ok(r) => r,
        Err(Error::BadWinding(w)) => InequalityReport::new("mode_gap", 0.0, 0.0, 0.0, 0.0)
            .with_status(CheckStatus::HypothesisNotMet)
            .extra("winding", w as f64),
        Err(e) => return Err(e),
    });
    let profile = rigidity_profile(cache);
    let m = profile.m_identity_residual(cache.length);
    out.push(
        InequalityReport::new(
            "rigidity_int_M",
            m,
            IDENTITY_TOLERANCE,
            IDENTITY_TOLERANCE - m,
            0.0,
        )
        .extra("int_M", profile.m_integral),
    );
    let n = profile.n_identity_residual();
    out.push(
        InequalityReport::new(
            "rigidity_int_N",
            n,
            IDENTITY_TOLERANCE,
            IDENTITY_TOLERANCE - n,
            0.0,
        )
        .extra("int_N", profile.n_integral)
        .extra("minus_3E", -3.0 * profile.energy),
    );
    Ok(out)
}

/// Monotonicity of `L^3 E`, the length band and the trailing-half decay fit.
pub fn trajectory_checks(
    records: &[DiagnosticsRecord],
    small_energy_threshold: f64,
    band: f64,
) -> Result<Vec<InequalityReport>> {
    let mut out = vec![
        check_monotone_scale_invariant_energy(records, small_energy_threshold)?,
        check_length_bounds(records, band)?,
    ];
    let at_equilibrium = records
        .iter()
        .all(|r| r.scale_invariant_energy < EQUILIBRIUM_L3E);
    out.push(if at_equilibrium {
        InequalityReport::new("decay_fit", 0.0, 0.0, 0.0, 0.0).with_status(CheckStatus::Stationary)
    } else {
        match fit_trailing_half(records) {
            Ok(fit) => {
                let mut r = InequalityReport::new(
                    "decay_fit",
                    fit.residual,
                    DECAY_RESIDUAL_CEILING,
                    DECAY_RESIDUAL_CEILING - fit.residual,
                    0.0,
                )
                .extra("rate", fit.rate)
                .extra("amplitude", fit.amplitude)
                .extra("samples", fit.samples as f64);
                if !(fit.rate > 0.0) {
                    r.status = CheckStatus::Fail;
                    r.pass = false;
                }
                r
            }
            Err(Error::InsufficientData { got, .. }) => {
                InequalityReport::new("decay_fit", 0.0, 0.0, 0.0, 0.0)
                    .with_status(CheckStatus::HypothesisNotMet)
                    .extra("samples", got as f64)
                    .extra("needed", MIN_FIT_SAMPLES as f64)
            }
            Err(e) => return Err(e),
        }
    });
    Ok(out)
}
