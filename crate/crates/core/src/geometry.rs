//! Closed plane curves sampled uniformly in parameter, and their intrinsic geometry.
//!
//! Parameter derivatives are spectral; arc-length derivatives of curvature are
//! built recursively as `d/ds = v^{-1} d/du`. Integrals over the curve use the
//! rectangle rule with weight `v`, which is spectrally exact for band-limited
//! integrands.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::spectral::{self, TrigInterpolant};

/// Immersion test: `min v >= IMMERSION_THRESHOLD * mean v`.
pub const IMMERSION_THRESHOLD: f64 = 1e-6;
/// Maximum distance of `(1/2pi) int k ds` from an integer.
pub const WINDING_TOLERANCE: f64 = 1e-4;
/// Highest arc-length derivative of curvature kept in the cache.
pub const MAX_DERIVATIVE: usize = 5;

/// A closed planar curve given by `N` samples `gamma(2 pi i / N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveState {
    points: Vec<[f64; 2]>,
}

impl CurveState {
    pub const MIN_SAMPLES: usize = 16;

    pub fn new(points: Vec<[f64; 2]>) -> Result<Self> {
        if points.len() < Self::MIN_SAMPLES {
            return Err(Error::TooFewSamples {
                got: points.len(),
                min: Self::MIN_SAMPLES,
            });
        }
        if let Some(index) = points
            .iter()
            .position(|p| !p[0].is_finite() || !p[1].is_finite())
        {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { points })
    }

    /// Sample `f(u)` on the uniform grid.
    pub fn from_fn(n: usize, f: impl Fn(f64) -> [f64; 2]) -> Result<Self> {
        Self::new(spectral::grid(n).map(f).collect())
    }

    pub fn points(&self) -> &[[f64; 2]] {
        &self.points
    }

    pub fn into_points(self) -> Vec<[f64; 2]> {
        self.points
    }

    pub fn n_samples(&self) -> usize {
        self.points.len()
    }

    pub fn xs(&self) -> Vec<f64> {
        self.points.iter().map(|p| p[0]).collect()
    }

    pub fn ys(&self) -> Vec<f64> {
        self.points.iter().map(|p| p[1]).collect()
    }

    /// Apply a pointwise map. Finite output is re-checked.
    pub fn map(&self, f: impl Fn([f64; 2]) -> [f64; 2]) -> Result<Self> {
        Self::new(self.points.iter().map(|&p| f(p)).collect())
    }

    pub fn scaled(&self, rho: f64) -> Result<Self> {
        self.map(|[x, y]| [rho * x, rho * y])
    }

    /// Rotate by `angle` about the origin, then translate by `shift`.
    pub fn rigid_motion(&self, angle: f64, shift: [f64; 2]) -> Result<Self> {
        let (s, c) = angle.sin_cos();
        self.map(|[x, y]| [c * x - s * y + shift[0], s * x + c * y + shift[1]])
    }

    /// Displace every sample along the (inward) unit normal by `h * field[i]`.
    pub fn displaced_along(&self, normal: &[[f64; 2]], field: &[f64], h: f64) -> Result<Self> {
        Self::new(
            self.points
                .iter()
                .zip(normal)
                .zip(field)
                .map(|((p, nu), v)| [p[0] + h * v * nu[0], p[1] + h * v * nu[1]])
                .collect(),
        )
    }
}

/// Intrinsic geometry of a [`CurveState`].
#[derive(Debug, Clone)]
pub struct GeometryCache {
    pub curve: CurveState,
    pub tangent: Vec<[f64; 2]>,
    /// `nu = (-tau_2, tau_1)`; points inward for counter-clockwise curves.
    pub normal: Vec<[f64; 2]>,
    /// `|gamma_u|`.
    pub speed: Vec<f64>,
    /// `derivs[l]` holds the `l`-th arc-length derivative of curvature.
    pub derivs: [Vec<f64>; MAX_DERIVATIVE + 1],
    pub length: f64,
    /// `(1/2pi) int k ds` before rounding.
    pub total_turning: f64,
    pub winding: i64,
    /// `1/2 int k_s^2 ds`.
    pub energy: f64,
}

impl GeometryCache {
    pub fn n_samples(&self) -> usize {
        self.speed.len()
    }

    pub fn curvature(&self) -> &[f64] {
        &self.derivs[0]
    }

    /// `l`-th arc-length derivative of curvature, `0 <= l <= 5`.
    pub fn k_s(&self, l: usize) -> &[f64] {
        &self.derivs[l]
    }

    /// `int f ds` by the rectangle rule with weight `v`.
    pub fn integrate(&self, f: &[f64]) -> f64 {
        debug_assert_eq!(f.len(), self.speed.len());
        let sum: f64 = f.iter().zip(&self.speed).map(|(a, v)| a * v).sum();
        TAU * sum / f.len() as f64
    }

    pub fn integrate_with(&self, f: impl Fn(usize) -> f64) -> f64 {
        let sum: f64 = (0..self.speed.len()).map(|i| f(i) * self.speed[i]).sum();
        TAU * sum / self.speed.len() as f64
    }

    /// `L^3 E`, invariant under scaling.
    pub fn scale_invariant_energy(&self) -> f64 {
        self.length.powi(3) * self.energy
    }

    pub fn sup_curvature(&self) -> f64 {
        self.derivs[0].iter().fold(0.0, |m, k| m.max(k.abs()))
    }

    pub fn min_speed(&self) -> f64 {
        self.speed.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `int k_s^l squared ds`.
    pub fn l2_norm_sq(&self, l: usize) -> f64 {
        self.integrate_with(|i| self.derivs[l][i] * self.derivs[l][i])
    }

    /// `2 pi omega / L`, the curvature of the limiting omega-circle of the same length.
    pub fn mean_curvature(&self) -> f64 {
        TAU * self.winding as f64 / self.length
    }
}

pub fn build_geometry(curve: &CurveState) -> Result<GeometryCache> {
    let n = curve.n_samples();
    let xs = curve.xs();
    let ys = curve.ys();
    let cx = spectral::forward(&xs);
    let cy = spectral::forward(&ys);
    let scale = spectral::oscillation_scale(&cx).max(spectral::oscillation_scale(&cy));
    let xu = spectral::derivative(&xs, 1, scale);
    let yu = spectral::derivative(&ys, 1, scale);
    let xuu = spectral::derivative(&xs, 2, scale);
    let yuu = spectral::derivative(&ys, 2, scale);

    let speed: Vec<f64> = xu.iter().zip(&yu).map(|(a, b)| a.hypot(*b)).collect();
    let mean_speed = speed.iter().sum::<f64>() / n as f64;
    let min_speed = speed.iter().copied().fold(f64::INFINITY, f64::min);
    let threshold = IMMERSION_THRESHOLD * mean_speed;
    if !(min_speed >= threshold) || !(mean_speed > 0.0) {
        return Err(Error::NotImmersed {
            min_speed,
            threshold,
        });
    }

    let tangent: Vec<[f64; 2]> = (0..n)
        .map(|i| [xu[i] / speed[i], yu[i] / speed[i]])
        .collect();
    let normal: Vec<[f64; 2]> = tangent.iter().map(|t| [-t[1], t[0]]).collect();
    let k: Vec<f64> = (0..n)
        .map(|i| (xu[i] * yuu[i] - yu[i] * xuu[i]) / speed[i].powi(3))
        .collect();

    let length = TAU * mean_speed;
    let sup_k = k.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let reference = sup_k.max(TAU / length);

    let mut derivs: [Vec<f64>; MAX_DERIVATIVE + 1] = Default::default();
    derivs[0] = k;
    for l in 1..=MAX_DERIVATIVE {
        let prev = &derivs[l - 1];
        let own = prev.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let du = spectral::derivative(prev, 1, own.max(reference.powi(l as i32)));
        derivs[l] = du.iter().zip(&speed).map(|(d, v)| d / v).collect();
    }

    let mut cache = GeometryCache {
        curve: curve.clone(),
        tangent,
        normal,
        speed,
        derivs,
        length,
        total_turning: 0.0,
        winding: 0,
        energy: 0.0,
    };
    cache.total_turning = cache.integrate(cache.curvature()) / TAU;
    cache.winding = cache.total_turning.round() as i64;
    cache.energy = 0.5 * cache.l2_norm_sq(1);
    Ok(cache)
}

/// `round((1/2pi) int k ds)`, refusing when the turning number is not close to an integer.
pub fn winding_number(cache: &GeometryCache) -> Result<i64> {
    let residual = (cache.total_turning - cache.total_turning.round()).abs();
    if residual > WINDING_TOLERANCE {
        return Err(Error::AmbiguousWinding {
            total: cache.total_turning,
            residual,
        });
    }
    Ok(cache.winding)
}

/// Resample onto `n_out` points equally spaced in arc length along the
/// trigonometric interpolant of `curve`. The first output point is `gamma(0)`.
pub fn resample_uniform_arclength(curve: &CurveState, n_out: usize) -> Result<CurveState> {
    let cache = build_geometry(curve)?;
    resample_with(&cache, n_out)
}

pub(crate) fn resample_with(cache: &GeometryCache, n_out: usize) -> Result<CurveState> {
    let x = TrigInterpolant::new(&cache.curve.xs());
    let y = TrigInterpolant::new(&cache.curve.ys());
    let v = TrigInterpolant::new(&cache.speed);
    let arc = v.antiderivative();
    let length = TAU * arc.slope;

    let mut points = Vec::with_capacity(n_out);
    let mut lo = 0.0;
    for j in 0..n_out {
        let target = length * j as f64 / n_out as f64;
        let u = invert_monotone(
            |u| arc.eval(u) - target,
            |u| v.eval(u),
            lo,
            TAU,
            target / arc.slope,
        );
        lo = u;
        points.push([x.eval(u), y.eval(u)]);
    }
    CurveState::new(points)
}

/// Safeguarded Newton for an increasing function with a sign change on `[lo, hi]`.
fn invert_monotone(
    f: impl Fn(f64) -> f64,
    df: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    guess: f64,
) -> f64 {
    let mut u = guess.clamp(lo, hi);
    for _ in 0..100 {
        let val = f(u);
        if val == 0.0 {
            return u;
        }
        if val < 0.0 {
            lo = u;
        } else {
            hi = u;
        }
        let slope = df(u);
        let mut next = u - val / slope;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        if (next - u).abs() <= 4.0 * f64::EPSILON * TAU {
            return next;
        }
        u = next;
    }
    u
}
