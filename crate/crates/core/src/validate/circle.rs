use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::CurveState;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleFit {
    pub center: [f64; 2],
    pub radius: f64,
    /// `rms(|gamma_i - c| - r) / r`.
    pub residual: f64,
}

/// Algebraic least-squares circle: minimises `sum (|gamma_i - c|^2 - r^2)^2`,
/// solved in closed form on mean-centred coordinates.
pub fn fit_circle(curve: &CurveState) -> Result<CircleFit> {
    let pts = curve.points();
    let n = pts.len() as f64;
    let (mx, my) = pts
        .iter()
        .fold((0.0, 0.0), |(a, b), p| (a + p[0], b + p[1]));
    let (mx, my) = (mx / n, my / n);

    let (mut suu, mut svv, mut suv) = (0.0, 0.0, 0.0);
    let (mut suuu, mut svvv, mut suvv, mut svuu) = (0.0, 0.0, 0.0, 0.0);
    for p in pts {
        let (u, v) = (p[0] - mx, p[1] - my);
        suu += u * u;
        svv += v * v;
        suv += u * v;
        suuu += u * u * u;
        svvv += v * v * v;
        suvv += u * v * v;
        svuu += v * u * u;
    }
    let det = suu * svv - suv * suv;
    if !(det > 1e-12 * (suu + svv).powi(2)) {
        return Err(Error::DegenerateFit);
    }
    let ru = 0.5 * (suuu + suvv);
    let rv = 0.5 * (svvv + svuu);
    let a = (ru * svv - rv * suv) / det;
    let b = (rv * suu - ru * suv) / det;
    let radius = (a * a + b * b + (suu + svv) / n).sqrt();
    let center = [a + mx, b + my];
    let ss: f64 = pts
        .iter()
        .map(|p| ((p[0] - center[0]).hypot(p[1] - center[1]) - radius).powi(2))
        .sum();
    Ok(CircleFit {
        center,
        radius,
        residual: (ss / n).sqrt() / radius,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_circle_recovered() {
        let c = CurveState::from_fn(64, |u| [2.0 + 3.0 * u.cos(), -1.0 + 3.0 * u.sin()]).unwrap();
        let fit = fit_circle(&c).unwrap();
        assert!((fit.center[0] - 2.0).abs() < 1e-12);
        assert!((fit.center[1] + 1.0).abs() < 1e-12);
        assert!((fit.radius - 3.0).abs() < 1e-12);
        assert!(fit.residual < 1e-12);
    }

    #[test]
    fn segment_is_degenerate() {
        let c = CurveState::from_fn(32, |u| [u.cos(), 2.0 * u.cos()]).unwrap();
        assert!(matches!(fit_circle(&c), Err(Error::DegenerateFit)));
        let point = CurveState::new(vec![[1.0, 1.0]; 16]).unwrap();
        assert!(matches!(fit_circle(&point), Err(Error::DegenerateFit)));
    }
}
