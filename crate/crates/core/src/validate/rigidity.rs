use serde::{Deserialize, Serialize};

use crate::flow::el_operator;
use crate::geometry::GeometryCache;

/// `L^9 ||K||^2` below which a curve counts as numerically stationary.
pub const STATIONARITY_FLOOR: f64 = 1e-10;

/// The first integral `Q = k_{s^3}^2 + k_ss^2 k^2 + 1/4 k_s^4 - k_ss k_s^2 k`
/// of the stationary equation, and its parts `M = k_{s^3}` (length^-4) and
/// `N = k_ss k - 1/2 k_s^2` (length^-4), so `Q = M^2 + N^2` (length^-8).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RigidityProfile {
    pub q: Vec<f64>,
    pub m: Vec<f64>,
    pub n: Vec<f64>,
    pub q_mean: f64,
    pub q_max_deviation: f64,
    /// `(2 pi |omega| / L)^8`, or `sup|k|^8` when `omega = 0`.
    pub q_scale: f64,
    /// `int M ds`; vanishes on closed curves.
    pub m_integral: f64,
    /// `int N ds`; equals `-(3/2) int k_s^2 ds = -3E`.
    pub n_integral: f64,
    /// `int |N| ds`.
    pub n_abs_integral: f64,
    pub energy: f64,
    /// `L^9 ||K||^2`.
    pub scale_invariant_el: f64,
}

impl RigidityProfile {
    pub fn is_stationary(&self) -> bool {
        self.scale_invariant_el < STATIONARITY_FLOOR
    }

    /// `|int M ds| <= rel * scale` where `scale = sqrt(int k_{s^3}^2 ds * L)` bounds `int |M|`.
    pub fn m_identity_residual(&self, length: f64) -> f64 {
        let norm: f64 = self.m.iter().map(|x| x * x).sum::<f64>() / self.m.len() as f64;
        let scale = (norm.sqrt() * length).max(f64::MIN_POSITIVE);
        self.m_integral.abs() / scale
    }

    /// Error of `int N ds = -3E` relative to `3E`. The denominator is floored
    /// at `1e-6 int |N| ds`: near a circle both sides are rounding-dominated.
    pub fn n_identity_residual(&self) -> f64 {
        let scale = (3.0 * self.energy).max(1e-6 * self.n_abs_integral);
        if scale == 0.0 {
            self.n_integral.abs()
        } else {
            (self.n_integral + 3.0 * self.energy).abs() / scale
        }
    }

    /// `max |Q - mean Q| < 1e-6 |mean Q| + 1e-12 q_scale`.
    pub fn q_is_constant(&self) -> bool {
        self.q_max_deviation < 1e-6 * self.q_mean.abs() + 1e-12 * self.q_scale
    }
}

pub fn rigidity_profile(cache: &GeometryCache) -> RigidityProfile {
    let k = cache.curvature();
    let (k1, k2, k3) = (cache.k_s(1), cache.k_s(2), cache.k_s(3));
    let len = k.len();
    let m: Vec<f64> = k3.to_vec();
    let n: Vec<f64> = (0..len)
        .map(|i| k2[i] * k[i] - 0.5 * k1[i] * k1[i])
        .collect();
    let q: Vec<f64> = (0..len)
        .map(|i| {
            k3[i] * k3[i] + k2[i] * k2[i] * k[i] * k[i] + 0.25 * k1[i].powi(4)
                - k2[i] * k1[i] * k1[i] * k[i]
        })
        .collect();
    let q_mean = cache.integrate(&q) / cache.length;
    let q_max_deviation = q.iter().map(|x| (x - q_mean).abs()).fold(0.0, f64::max);
    let q_scale = if cache.winding != 0 {
        cache.mean_curvature().abs().powi(8)
    } else {
        cache.sup_curvature().powi(8)
    };
    RigidityProfile {
        m_integral: cache.integrate(&m),
        n_integral: cache.integrate(&n),
        n_abs_integral: cache.integrate_with(|i| n[i].abs()),
        q,
        m,
        n,
        q_mean,
        q_max_deviation,
        q_scale,
        energy: cache.energy,
        scale_invariant_el: cache.length.powi(9) * el_operator(cache).l2_norm_sq,
    }
}
