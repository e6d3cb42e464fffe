use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::DiagnosticsRecord;

/// Minimum number of samples in a decay-fit window.
pub const MIN_FIT_SAMPLES: usize = 20;

/// `y(t) ~ amplitude * exp(-rate * t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub rate: f64,
    pub amplitude: f64,
    /// RMS of the residuals of the log-linear fit (a relative residual in `y`).
    pub residual: f64,
    pub samples: usize,
}

/// Least squares on `(t, ln y)`.
pub fn fit_exponential_decay(samples: &[(f64, f64)]) -> Result<DecayFit> {
    if samples.len() < MIN_FIT_SAMPLES {
        return Err(Error::InsufficientData {
            needed: MIN_FIT_SAMPLES,
            got: samples.len(),
        });
    }
    if let Some(index) = samples.iter().position(|(_, y)| !(*y > 0.0)) {
        return Err(Error::NonPositiveEnergy { index });
    }
    let n = samples.len() as f64;
    let t_mean = samples.iter().map(|s| s.0).sum::<f64>() / n;
    let logs: Vec<f64> = samples.iter().map(|s| s.1.ln()).collect();
    let l_mean = logs.iter().sum::<f64>() / n;
    let (mut stt, mut stl) = (0.0, 0.0);
    for ((t, _), l) in samples.iter().zip(&logs) {
        stt += (t - t_mean) * (t - t_mean);
        stl += (t - t_mean) * (l - l_mean);
    }
    if stt == 0.0 {
        return Err(Error::InsufficientData { needed: 2, got: 1 });
    }
    let slope = stl / stt;
    let ss: f64 = samples
        .iter()
        .zip(&logs)
        .map(|((t, _), l)| (l - l_mean - slope * (t - t_mean)).powi(2))
        .sum();
    Ok(DecayFit {
        rate: -slope,
        amplitude: (l_mean - slope * t_mean).exp(),
        residual: (ss / n).sqrt(),
        samples: samples.len(),
    })
}

/// Fit `E(t)` over records with `t` in `[from, to]`.
pub fn fit_energy_decay(records: &[DiagnosticsRecord], from: f64, to: f64) -> Result<DecayFit> {
    let samples: Vec<(f64, f64)> = records
        .iter()
        .filter(|r| r.t >= from && r.t <= to)
        .map(|r| (r.t, r.energy))
        .collect();
    fit_exponential_decay(&samples)
}

/// Fit `E(t)` over the second half (in time) of a trajectory.
pub fn fit_trailing_half(records: &[DiagnosticsRecord]) -> Result<DecayFit> {
    let (Some(first), Some(last)) = (records.first(), records.last()) else {
        return Err(Error::InsufficientData {
            needed: MIN_FIT_SAMPLES,
            got: 0,
        });
    };
    fit_energy_decay(records, 0.5 * (first.t + last.t), last.t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(a: f64, c: f64, t0: f64) -> Vec<(f64, f64)> {
        (0..40)
            .map(|i| {
                let t = t0 + 0.05 * i as f64;
                (t, a * (-c * t).exp())
            })
            .collect()
    }

    #[test]
    fn exact_exponential_recovered() {
        let fit = fit_exponential_decay(&synthetic(3.0, 0.7, 0.0)).unwrap();
        assert!((fit.amplitude - 3.0).abs() < 1e-10);
        assert!((fit.rate - 0.7).abs() < 1e-10);
        assert!(fit.residual < 1e-12);
    }

    #[test]
    fn constant_series_has_zero_rate() {
        let s: Vec<(f64, f64)> = (0..25).map(|i| (i as f64, 2.5)).collect();
        let fit = fit_exponential_decay(&s).unwrap();
        assert!(fit.rate.abs() < 1e-10);
    }

    #[test]
    fn rate_is_invariant_under_time_shift() {
        let a = fit_exponential_decay(&synthetic(3.0, 0.7, 0.0)).unwrap();
        let b = fit_exponential_decay(&synthetic(3.0, 0.7, 10.0)).unwrap();
        assert!((a.rate - b.rate).abs() < 1e-10);
    }

    #[test]
    fn errors() {
        let short = synthetic(1.0, 1.0, 0.0)[..5].to_vec();
        assert!(matches!(
            fit_exponential_decay(&short),
            Err(Error::InsufficientData { .. })
        ));
        let mut bad = synthetic(1.0, 1.0, 0.0);
        bad[7].1 = 0.0;
        assert!(matches!(
            fit_exponential_decay(&bad),
            Err(Error::NonPositiveEnergy { index: 7 })
        ));
    }
}
