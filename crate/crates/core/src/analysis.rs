//! Fourier analysis of curvature in arc length, the operator linearised about
//! the omega-circle, and the mode-gap inequality it satisfies.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{build_geometry, resample_with, GeometryCache};
use crate::spectral;

/// Curvature coefficients `a_p = (1/L) int k exp(+i 2 pi p s / L) ds`, `|p| <= p_max`.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    coefficients: Vec<Complex64>,
    pub p_max: usize,
    pub length: f64,
    pub winding: i64,
}

impl SpectralDecomposition {
    pub fn coefficient(&self, p: i64) -> Complex64 {
        if p.unsigned_abs() as usize > self.p_max {
            return Complex64::new(0.0, 0.0);
        }
        self.coefficients[(p + self.p_max as i64) as usize]
    }

    /// `(p, a_p)` for `p = -p_max ..= p_max`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let offset = self.p_max as i64;
        self.coefficients
            .iter()
            .enumerate()
            .map(move |(j, &a)| (j as i64 - offset, a))
    }

    /// `L sum |a_p|^2`, equal to `int k^2 ds` at adequate truncation.
    pub fn parseval(&self) -> f64 {
        self.length * self.iter().map(|(_, a)| a.norm_sqr()).sum::<f64>()
    }

    /// `sum |a_p|^2 (4 pi^2 / L^2)^4 p^4 (p^2 - omega^2)^2 L`.
    pub fn k0_norm_sq(&self) -> f64 {
        let w2 = (self.winding * self.winding) as f64;
        let base = (4.0 * PI * PI / (self.length * self.length)).powi(4);
        self.iter()
            .map(|(p, a)| {
                let p2 = (p * p) as f64;
                a.norm_sqr() * p2 * p2 * (p2 - w2).powi(2)
            })
            .sum::<f64>()
            * base
            * self.length
    }

    /// `sum (4 pi^2 / L^2)^4 p^8 |a_p|^2 L`, the spectral form of `int k_{s^4}^2 ds`.
    pub fn p_functional(&self) -> f64 {
        let base = (4.0 * PI * PI / (self.length * self.length)).powi(4);
        self.iter()
            .map(|(p, a)| a.norm_sqr() * (p as f64).powi(8))
            .sum::<f64>()
            * base
            * self.length
    }
}

/// Fourier coefficients of curvature with respect to arc length.
///
/// The curve is first resampled to uniform arc length (same sample count), so
/// that the discrete transform realises the arc-length integral directly.
/// `p_max` defaults to `N/4` and may not exceed `N/2 - 1`.
pub fn decompose_curvature(
    cache: &GeometryCache,
    p_max: Option<usize>,
) -> Result<SpectralDecomposition> {
    let n = cache.n_samples();
    let limit = n / 2 - 1;
    let p_max = p_max.unwrap_or(n / 4);
    if p_max > limit {
        return Err(Error::TruncationTooHigh { p_max, limit });
    }
    let uniform = build_geometry(&resample_with(cache, n)?)?;
    let c = spectral::forward(uniform.curvature());
    // a_p uses exp(+i...), so it is the forward coefficient of -p.
    let coefficients = (-(p_max as i64)..=p_max as i64)
        .map(|p| {
            let j = (-p).rem_euclid(n as i64) as usize;
            c[j]
        })
        .collect();
    Ok(SpectralDecomposition {
        coefficients,
        p_max,
        length: uniform.length,
        winding: uniform.winding,
    })
}

/// `K0 = k_{s^4} + (2 pi omega / L)^2 k_ss` sampled on the curve.
#[derive(Debug, Clone)]
pub struct K0Field {
    pub values: Vec<f64>,
    pub l2_norm_sq: f64,
}

pub fn k0_operator(cache: &GeometryCache) -> K0Field {
    let mean = cache.mean_curvature();
    let values: Vec<f64> = cache
        .k_s(4)
        .iter()
        .zip(cache.k_s(2))
        .map(|(k4, k2)| k4 + mean * mean * k2)
        .collect();
    let l2_norm_sq = cache.integrate_with(|i| values[i] * values[i]);
    K0Field { values, l2_norm_sq }
}

/// Smallest value of `(1 - omega^2/p^2)^2` over integers `p` other than `0` and `+-omega`.
///
/// The neighbours `p = omega +- 1` are binding; for `omega = 1` the `p = 0`
/// neighbour is excluded, leaving `(1 - 1/4)^2 = 9/16`.
pub fn c_omega(omega: i64) -> Result<f64> {
    if omega <= 0 {
        return Err(Error::BadWinding(omega));
    }
    // (1 - w^2/p^2)^2 = (p^2 - w^2)^2 / p^4, compared as exact fractions and
    // divided once so the result is the correctly rounded rational.
    let frac = |p: i64| {
        let num = (p * p - omega * omega).pow(2);
        (num, p.pow(4))
    };
    let (mut num, mut den) = frac(omega + 1);
    if omega > 1 {
        let (n2, d2) = frac(omega - 1);
        if (n2 as i128) * (den as i128) < (num as i128) * (d2 as i128) {
            (num, den) = (n2, d2);
        }
    }
    Ok(num as f64 / den as f64)
}

/// Both sides of `int K0^2 ds >= C_omega P - 4^5 omega^8 pi^8 L^-3 E^2`,
/// together with the intermediate estimate `|a_{+-omega}| <= 2 L^2 E`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeGapReport {
    pub winding: i64,
    /// `int K0^2 ds`.
    pub lhs: f64,
    /// `int k_{s^4}^2 ds`.
    pub p_functional: f64,
    pub c_omega: f64,
    /// `4^5 omega^8 pi^8 L^-3 E^2`.
    pub energy_penalty: f64,
    /// `lhs - (c_omega * p_functional - energy_penalty)`.
    pub slack: f64,
    pub tolerance: f64,
    pub a_omega: f64,
    /// `2 L^2 E`.
    pub a_omega_bound: f64,
}

impl ModeGapReport {
    pub fn gap_holds(&self) -> bool {
        self.slack >= -self.tolerance
    }

    pub fn coefficient_bound_holds(&self) -> bool {
        self.a_omega <= self.a_omega_bound * (1.0 + 1e-8) + 1e-14
    }
}

/// Discretisation allowance on the mode-gap slack, relative to `max(1, C_omega P)`.
pub const GAP_TOLERANCE: f64 = 1e-8;

pub fn mode_gap_report(cache: &GeometryCache) -> Result<ModeGapReport> {
    let omega = cache.winding.abs();
    let c = c_omega(omega).map_err(|_| Error::BadWinding(cache.winding))?;
    let lhs = k0_operator(cache).l2_norm_sq;
    let p_functional = cache.l2_norm_sq(4);
    let e = cache.energy;
    let l = cache.length;
    let energy_penalty = 4f64.powi(5) * (omega as f64).powi(8) * PI.powi(8) * e * e / l.powi(3);
    let slack = lhs - (c * p_functional - energy_penalty);

    let decomposition = decompose_curvature(cache, None)?;
    let a_omega = decomposition
        .coefficient(omega)
        .norm()
        .max(decomposition.coefficient(-omega).norm());

    Ok(ModeGapReport {
        winding: omega,
        lhs,
        p_functional,
        c_omega: c,
        energy_penalty,
        slack,
        tolerance: GAP_TOLERANCE * (c * p_functional).max(1.0),
        a_omega,
        a_omega_bound: 2.0 * l * l * e,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::PresetSpec;
    use num_complex::Complex64;
    use std::f64::consts::TAU;

    fn cache(spec: &str) -> GeometryCache {
        build_geometry(&spec.parse::<PresetSpec>().unwrap().build().unwrap()).unwrap()
    }

    #[test]
    fn c_omega_closed_forms() {
        assert_eq!(c_omega(1).unwrap(), 9.0 / 16.0);
        assert_eq!(c_omega(2).unwrap(), 25.0 / 81.0);
        assert_eq!(c_omega(3).unwrap(), 49.0 / 256.0);
        assert!(matches!(c_omega(0), Err(Error::BadWinding(0))));
        assert!(matches!(c_omega(-2), Err(Error::BadWinding(-2))));
    }

    #[test]
    fn circle_has_only_mean_mode() {
        let d = decompose_curvature(&cache("circle:r=2"), None).unwrap();
        assert!((d.coefficient(0).re - 0.5).abs() < 1e-12);
        for (p, a) in d.iter().filter(|(p, _)| *p != 0) {
            assert!(a.norm() < 1e-12, "p={p}");
        }
    }

    #[test]
    fn mean_mode_is_mean_curvature() {
        let g = cache("fourier_perturbed_circle:m=3,eps=0.04,w=2");
        let d = decompose_curvature(&g, None).unwrap();
        assert!((d.coefficient(0).re - g.mean_curvature()).abs() < 1e-12);
    }

    #[test]
    fn conjugate_symmetry_and_parseval() {
        let g = cache("limacon:a=0.4,b=1");
        let d = decompose_curvature(&g, Some(g.n_samples() / 2 - 1)).unwrap();
        for p in 0..=d.p_max as i64 {
            assert!((d.coefficient(-p) - d.coefficient(p).conj()).norm() < 1e-12);
        }
        let k2 = g.l2_norm_sq(0);
        assert!((d.parseval() / k2 - 1.0).abs() < 1e-8);
    }

    #[test]
    fn ellipse_has_only_even_modes() {
        let d = decompose_curvature(&cache("ellipse:a=1.2,b=1"), None).unwrap();
        for (p, a) in d.iter().filter(|(p, _)| p % 2 != 0) {
            assert!(a.norm() < 1e-12, "p={p}: {a}");
        }
        assert!(d.coefficient(2).norm() > 1e-3);
    }

    /// Independent dense-quadrature evaluation of `(1/L) int k exp(i 2 pi p s/L) ds`
    /// for the polar curve `rho = r + eps cos(m u)` from its closed-form curvature.
    fn polar_oracle(r: f64, m: f64, eps: f64, p: f64) -> Complex64 {
        let n = 20000;
        let h = TAU / n as f64;
        let rho = |u: f64| r + eps * (m * u).cos();
        let d1 = |u: f64| -eps * m * (m * u).sin();
        let d2 = |u: f64| -eps * m * m * (m * u).cos();
        let speed = |u: f64| (rho(u).powi(2) + d1(u).powi(2)).sqrt();
        let kappa =
            |u: f64| (rho(u).powi(2) + 2.0 * d1(u).powi(2) - rho(u) * d2(u)) / speed(u).powi(3);
        // cumulative arc length, Simpson's rule on each grid interval
        let mut s = vec![0.0; n + 1];
        for j in 1..=n {
            let (u0, u1) = ((j - 1) as f64 * h, j as f64 * h);
            s[j] = s[j - 1] + h / 6.0 * (speed(u0) + 4.0 * speed(0.5 * (u0 + u1)) + speed(u1));
        }
        let length = s[n];
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..n {
            let u = j as f64 * h;
            let phase = TAU * p * s[j] / length;
            acc += kappa(u) * speed(u) * Complex64::new(phase.cos(), phase.sin());
        }
        acc * h / length
    }

    #[test]
    fn coefficients_match_quadrature_oracle() {
        let d =
            decompose_curvature(&cache("fourier_perturbed_circle:r=1,m=3,eps=0.01"), None).unwrap();
        let dominant = (1..=d.p_max as i64)
            .max_by(|a, b| {
                d.coefficient(*a)
                    .norm()
                    .total_cmp(&d.coefficient(*b).norm())
            })
            .unwrap();
        assert_eq!(dominant, 3);
        for p in [0i64, 3, -3, 6] {
            let oracle = polar_oracle(1.0, 3.0, 0.01, p as f64);
            assert!(
                (d.coefficient(p) - oracle).norm() < 1e-8,
                "p={p}: {} vs {oracle}",
                d.coefficient(p)
            );
        }
    }

    #[test]
    fn frequency_and_physical_forms_agree() {
        for spec in [
            "fourier_perturbed_circle:r=1,m=3,eps=0.01",
            "fourier_perturbed_circle:m=2,eps=0.05",
            "ellipse:a=1.2,b=1",
            "limacon:a=0.3,b=1",
            "fourier_perturbed_circle:m=3,eps=0.02,w=2",
        ] {
            let g = cache(spec);
            let d = decompose_curvature(&g, Some(g.n_samples() / 2 - 1)).unwrap();
            let k0 = k0_operator(&g).l2_norm_sq;
            assert!((d.k0_norm_sq() / k0 - 1.0).abs() < 1e-6, "{spec}");
            assert!(
                (d.p_functional() / g.l2_norm_sq(4) - 1.0).abs() < 1e-6,
                "{spec}"
            );
        }
    }

    #[test]
    fn k0_vanishes_on_circles() {
        for spec in [
            "circle:r=3",
            "omega_circle:r=1,w=2",
            "omega_circle:r=0.5,w=3",
        ] {
            let g = cache(spec);
            let scale = g.mean_curvature().abs().powi(5);
            assert!(
                k0_operator(&g)
                    .values
                    .iter()
                    .all(|v| v.abs() < 1e-8 * scale),
                "{spec}"
            );
        }
    }

    #[test]
    fn resonant_mode_is_quartic() {
        let value = |eps: f64| {
            k0_operator(&cache(&format!(
                "fourier_perturbed_circle:m=2,w=2,eps={eps}"
            )))
            .l2_norm_sq
        };
        let ratio = value(0.01) / value(0.005);
        assert!((ratio / 16.0 - 1.0).abs() < 0.1, "{ratio}");
        let off = |eps: f64| {
            k0_operator(&cache(&format!(
                "fourier_perturbed_circle:m=3,w=2,eps={eps}"
            )))
            .l2_norm_sq
        };
        let ratio = off(0.001) / off(0.0005);
        assert!((ratio / 4.0 - 1.0).abs() < 0.05, "{ratio}");
    }

    #[test]
    fn mode_gap_examples() {
        let r = mode_gap_report(&cache("circle:r=1")).unwrap();
        assert!(r.lhs.abs() < 1e-12 && r.p_functional.abs() < 1e-12 && r.slack.abs() < 1e-12);
        for spec in [
            "fourier_perturbed_circle:m=2,eps=0.02",
            "fourier_perturbed_circle:m=3,eps=0.01,w=2",
        ] {
            let r = mode_gap_report(&cache(spec)).unwrap();
            assert!(r.slack >= 0.0, "{spec}: {r:?}");
            assert!(r.coefficient_bound_holds(), "{spec}: {r:?}");
        }
    }

    #[test]
    fn truncation_limit() {
        let g = cache("circle:r=1");
        let n = g.n_samples();
        assert!(decompose_curvature(&g, Some(n / 2 - 1)).is_ok());
        assert!(matches!(
            decompose_curvature(&g, Some(n / 2)),
            Err(Error::TruncationTooHigh { .. })
        ));
    }
}
