//! Fourier machinery for uniformly sampled periodic functions on [0, 2pi).
//!
//! Coefficients are normalised so that `f(u) = sum_p c_p exp(i p u)`, i.e. the
//! forward transform carries the `1/N` factor. Differentiation multiplies by
//! `(i p)^order`. Coefficients below a relative noise floor are zeroed before
//! differentiating, otherwise rounding noise in the top modes is amplified by
//! `p^order` and swamps fifth and sixth derivatives.

use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

/// Relative amplitude below which a Fourier coefficient is treated as rounding noise.
pub const NOISE_FLOOR: f64 = 1e-13;

type Plan = (Arc<dyn Fft<f64>>, Arc<dyn Fft<f64>>);

thread_local! {
    static PLANS: RefCell<(FftPlanner<f64>, HashMap<usize, Plan>)> =
        RefCell::new((FftPlanner::new(), HashMap::new()));
}

fn plan(n: usize) -> Plan {
    PLANS.with(|cell| {
        let mut guard = cell.borrow_mut();
        let (planner, cache) = &mut *guard;
        cache
            .entry(n)
            .or_insert_with(|| (planner.plan_fft_forward(n), planner.plan_fft_inverse(n)))
            .clone()
    })
}

/// Signed wavenumber of FFT bin `j`. The Nyquist bin of an even-length grid maps to `+n/2`.
pub fn wavenumber(j: usize, n: usize) -> f64 {
    if 2 * j <= n {
        j as f64
    } else {
        j as f64 - n as f64
    }
}

/// True when bin `j` is the (unpaired) Nyquist bin.
pub fn is_nyquist(j: usize, n: usize) -> bool {
    n % 2 == 0 && 2 * j == n
}

pub fn forward(samples: &[f64]) -> Vec<Complex64> {
    let n = samples.len();
    let (fwd, _) = plan(n);
    let mut buf: Vec<Complex64> = samples.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    fwd.process(&mut buf);
    let scale = 1.0 / n as f64;
    for c in &mut buf {
        *c *= scale;
    }
    buf
}

/// Inverse transform, keeping the real part.
pub fn inverse(coeffs: &[Complex64]) -> Vec<f64> {
    let n = coeffs.len();
    let (_, inv) = plan(n);
    let mut buf = coeffs.to_vec();
    inv.process(&mut buf);
    buf.into_iter().map(|c| c.re).collect()
}

/// Zero every coefficient with magnitude below `NOISE_FLOOR * scale`.
pub fn filter_noise(coeffs: &mut [Complex64], scale: f64) {
    let cut = NOISE_FLOOR * scale;
    for c in coeffs.iter_mut() {
        if c.norm() < cut {
            *c = Complex64::new(0.0, 0.0);
        }
    }
}

/// Largest coefficient magnitude over the non-constant modes.
pub fn oscillation_scale(coeffs: &[Complex64]) -> f64 {
    coeffs.iter().skip(1).map(|c| c.norm()).fold(0.0, f64::max)
}

/// Multiply every mode by `symbol(p)` (with `p` the signed wavenumber) and transform back.
pub fn apply_symbol(coeffs: &[Complex64], symbol: impl Fn(f64) -> Complex64) -> Vec<f64> {
    let n = coeffs.len();
    let out: Vec<Complex64> = coeffs
        .iter()
        .enumerate()
        .map(|(j, &c)| c * symbol(wavenumber(j, n)))
        .collect();
    inverse(&out)
}

/// `order`-th derivative in the parameter, after zeroing coefficients below
/// `NOISE_FLOOR * noise_scale`. The Nyquist mode is dropped for odd orders.
pub fn derivative(samples: &[f64], order: u32, noise_scale: f64) -> Vec<f64> {
    let n = samples.len();
    let mut coeffs = forward(samples);
    filter_noise(&mut coeffs, noise_scale);
    for (j, c) in coeffs.iter_mut().enumerate() {
        if order % 2 == 1 && is_nyquist(j, n) {
            *c = Complex64::new(0.0, 0.0);
            continue;
        }
        let ip = Complex64::new(0.0, wavenumber(j, n));
        *c *= ip.powu(order);
    }
    inverse(&coeffs)
}

/// Rectangle rule on the uniform grid, `(2pi/N) sum f_i`.
pub fn mean_integral(samples: &[f64]) -> f64 {
    TAU * samples.iter().sum::<f64>() / samples.len() as f64
}

/// Band-limited trigonometric interpolant of uniformly spaced samples,
/// evaluable at any parameter value.
#[derive(Debug, Clone)]
pub struct TrigInterpolant {
    coeffs: Vec<Complex64>,
}

impl TrigInterpolant {
    pub fn new(samples: &[f64]) -> Self {
        Self::from_coeffs(forward(samples))
    }

    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, u: f64) -> f64 {
        let n = self.coeffs.len();
        let step = Complex64::from_polar(1.0, u);
        let mut phase = step;
        let mut acc = self.coeffs[0].re;
        let half = if n % 2 == 0 { n / 2 } else { (n + 1) / 2 };
        for p in 1..half {
            acc += 2.0 * (self.coeffs[p] * phase).re;
            phase *= step;
        }
        if n % 2 == 0 {
            acc += self.coeffs[n / 2].re * (0.5 * n as f64 * u).cos();
        }
        acc
    }

    /// Interpolant of the derivative (Nyquist term dropped).
    pub fn derivative(&self) -> Self {
        let n = self.coeffs.len();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, &c)| {
                if is_nyquist(j, n) {
                    Complex64::new(0.0, 0.0)
                } else {
                    c * Complex64::new(0.0, wavenumber(j, n))
                }
            })
            .collect();
        Self { coeffs }
    }

    /// Antiderivative `F` with `F(0) = 0`: the mean contributes `c_0 u` and
    /// every other mode integrates to `c_p/(i p) (exp(i p u) - 1)`.
    pub fn antiderivative(&self) -> Antiderivative {
        let n = self.coeffs.len();
        let mut periodic: Vec<Complex64> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, &c)| {
                if j == 0 || is_nyquist(j, n) {
                    Complex64::new(0.0, 0.0)
                } else {
                    c / Complex64::new(0.0, wavenumber(j, n))
                }
            })
            .collect();
        let periodic_at_zero: f64 = periodic.iter().map(|c| c.re).sum();
        periodic[0] = Complex64::new(-periodic_at_zero, 0.0);
        Antiderivative {
            slope: self.coeffs[0].re,
            periodic: Self { coeffs: periodic },
        }
    }
}

/// `slope * u + periodic(u)`, vanishing at `u = 0`.
#[derive(Debug, Clone)]
pub struct Antiderivative {
    pub slope: f64,
    pub periodic: TrigInterpolant,
}

impl Antiderivative {
    pub fn eval(&self, u: f64) -> f64 {
        self.slope * u + self.periodic.eval(u)
    }
}

/// Uniform parameter grid `u_i = 2 pi i / n`.
pub fn grid(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| TAU * i as f64 / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_of_trig_polynomial_is_exact() {
        let n = 64;
        let f: Vec<f64> = grid(n)
            .map(|u| (3.0 * u).sin() + 0.5 * (7.0 * u).cos())
            .collect();
        for order in 1..=6u32 {
            let d = derivative(&f, order, 1.0);
            for (i, u) in grid(n).enumerate() {
                // d^order/du^order of sin(3u) and cos(7u)
                let a = 3f64.powi(order as i32)
                    * (3.0 * u + order as f64 * std::f64::consts::FRAC_PI_2).sin();
                let b = 0.5
                    * 7f64.powi(order as i32)
                    * (7.0 * u + order as f64 * std::f64::consts::FRAC_PI_2).cos();
                assert!(
                    (d[i] - a - b).abs() < 1e-9 * 7f64.powi(order as i32),
                    "order {order}"
                );
            }
        }
    }

    #[test]
    fn noise_filter_kills_rounding_in_high_derivatives() {
        let n = 256;
        let f: Vec<f64> = grid(n).map(|u| 1.0 + 1e-17 * (100.0 * u).sin()).collect();
        let d = derivative(&f, 6, 1.0);
        assert!(d.iter().all(|x| *x == 0.0));
    }

    #[test]
    fn interpolant_reproduces_samples_and_off_grid_values() {
        let n = 32;
        let g = |u: f64| (u.sin()).exp();
        let f: Vec<f64> = grid(n).map(g).collect();
        let interp = TrigInterpolant::new(&f);
        for (i, u) in grid(n).enumerate() {
            assert!((interp.eval(u) - f[i]).abs() < 1e-13);
        }
        assert!((interp.eval(0.123) - g(0.123)).abs() < 1e-12);
    }

    #[test]
    fn antiderivative_of_shifted_cosine() {
        let n = 16;
        let f: Vec<f64> = grid(n).map(|u| 2.0 + (2.0 * u).cos()).collect();
        let anti = TrigInterpolant::new(&f).antiderivative();
        for u in [0.0f64, 0.7, 3.0, 6.0] {
            let exact = 2.0 * u + 0.5 * (2.0f64 * u).sin();
            assert!((anti.eval(u) - exact).abs() < 1e-13);
        }
    }

    #[test]
    fn odd_length_grids_work() {
        let n = 17;
        let f: Vec<f64> = grid(n).map(|u| (2.0 * u).cos()).collect();
        let d = derivative(&f, 1, 1.0);
        for (i, u) in grid(n).enumerate() {
            assert!((d[i] + 2.0 * (2.0 * u).sin()).abs() < 1e-12);
        }
        assert!((TrigInterpolant::new(&f).eval(0.3) - 0.6f64.cos()).abs() < 1e-13);
    }
}
