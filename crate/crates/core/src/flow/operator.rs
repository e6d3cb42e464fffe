use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{build_geometry, CurveState, GeometryCache};

/// The Euler-Lagrange operator `K = k_{s^4} + k^2 k_ss - 1/2 k k_s^2`,
/// i.e. the normal velocity of the flow.
#[derive(Debug, Clone)]
pub struct ElOperatorField {
    pub values: Vec<f64>,
    /// `int K^2 ds`.
    pub l2_norm_sq: f64,
}

pub fn el_operator(cache: &GeometryCache) -> ElOperatorField {
    let k = cache.curvature();
    let k1 = cache.k_s(1);
    let k2 = cache.k_s(2);
    let k4 = cache.k_s(4);
    let values: Vec<f64> = (0..k.len())
        .map(|i| k4[i] + k[i] * k[i] * k2[i] - 0.5 * k[i] * k1[i] * k1[i])
        .collect();
    let l2_norm_sq = cache.integrate_with(|i| values[i] * values[i]);
    ElOperatorField { values, l2_norm_sq }
}

/// `-int V K ds`, the first variation of `E` along the normal field `V nu`.
pub fn predicted_variation(cache: &GeometryCache, field: &[f64]) -> f64 {
    let el = el_operator(cache);
    -cache.integrate_with(|i| field[i] * el.values[i])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VariationRow {
    pub h: f64,
    /// `(E[gamma + h V nu] - E[gamma]) / h`.
    pub quotient: f64,
    pub deviation: f64,
    /// Linear extrapolation to `h = 0` from this and the previous row.
    pub extrapolated_deviation: Option<f64>,
    /// `(L[gamma + h V nu] - L[gamma]) / h`.
    pub length_quotient: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariationReport {
    pub energy: f64,
    /// `-int V K ds`.
    pub predicted: f64,
    /// `-int k V ds`, the first variation of length.
    pub predicted_length: f64,
    /// `||V||_2 ||K||_2`, the largest `|predicted|` any field of this norm can give.
    pub dual_scale: f64,
    pub rows: Vec<VariationRow>,
}

impl VariationReport {
    /// Ratio of consecutive deviations; about `h_i / h_{i+1}` for first-order convergence.
    pub fn deviation_ratios(&self) -> Vec<f64> {
        self.rows
            .windows(2)
            .map(|w| w[0].deviation.abs() / w[1].deviation.abs())
            .collect()
    }

    /// Smallest deviation, raw or extrapolated, relative to `max(||V|| ||K||, E)`.
    /// `|predicted|` itself is a poor scale since it can cancel to nearly zero.
    pub fn relative_floor(&self) -> f64 {
        let scale = self.dual_scale.max(self.energy).max(f64::MIN_POSITIVE);
        self.rows
            .iter()
            .filter_map(|r| r.extrapolated_deviation)
            .chain(self.rows.iter().map(|r| r.deviation))
            .map(|d| d.abs() / scale)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Compare finite-difference directional derivatives of `E` along `V nu`
/// with `-int V K ds` for each step size in `h_list`.
pub fn first_variation_check(
    curve: &CurveState,
    field: &[f64],
    h_list: &[f64],
) -> Result<VariationReport> {
    if field.len() != curve.n_samples() {
        return Err(Error::BadParams(format!(
            "variation field has {} samples, curve has {}",
            field.len(),
            curve.n_samples()
        )));
    }
    let base = build_geometry(curve)?;
    let el = el_operator(&base);
    let predicted = -base.integrate_with(|i| field[i] * el.values[i]);
    let dual_scale = (base.integrate_with(|i| field[i] * field[i]) * el.l2_norm_sq).sqrt();
    let predicted_length = -base.integrate_with(|i| base.curvature()[i] * field[i]);

    let mut rows: Vec<VariationRow> = Vec::with_capacity(h_list.len());
    for &h in h_list {
        let moved = curve.displaced_along(&base.normal, field, h)?;
        let g = build_geometry(&moved).map_err(|e| match e {
            Error::NotImmersed { .. } => Error::ImmersionLost { t: h },
            other => other,
        })?;
        let quotient = (g.energy - base.energy) / h;
        let deviation = quotient - predicted;
        let extrapolated_deviation = rows.last().map(|prev: &VariationRow| {
            let q0 = (prev.h * quotient - h * prev.quotient) / (prev.h - h);
            q0 - predicted
        });
        rows.push(VariationRow {
            h,
            quotient,
            deviation,
            extrapolated_deviation,
            length_quotient: (g.length - base.length) / h,
        });
    }
    Ok(VariationReport {
        energy: base.energy,
        predicted,
        predicted_length,
        dual_scale,
        rows,
    })
}
