//! Seeded corpora of band-limited perturbed (multiply covered) circles.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::geometry::CurveState;

/// Seed of the reference corpus.
pub const CORPUS_SEED: u64 = 2026;
/// Largest perturbation amplitude in the reference corpus.
pub const CORPUS_EPS_MAX: f64 = 0.05;
/// Samples per corpus curve.
pub const CORPUS_SAMPLES: usize = 128;

#[derive(Debug, Clone)]
pub struct CorpusCurve {
    pub id: String,
    pub omega: i64,
    pub eps: f64,
    pub curve: CurveState,
}

/// `rho(u) (cos omega u, sin omega u)` with `rho = 1 + sum_p (alpha_p cos pu + beta_p sin pu)`
/// over `2 <= p <= max_mode`, random coefficients rescaled so that `sum |alpha_p| + |beta_p| = eps`.
pub fn random_perturbed_circle(
    rng: &mut impl Rng,
    omega: i64,
    eps: f64,
    max_mode: usize,
    n: usize,
) -> Result<CurveState> {
    let mut coeffs: Vec<(f64, f64)> = (2..=max_mode)
        .map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let total: f64 = coeffs.iter().map(|(a, b)| a.abs() + b.abs()).sum();
    for c in &mut coeffs {
        c.0 *= eps / total;
        c.1 *= eps / total;
    }
    let w = omega as f64;
    CurveState::from_fn(n, |u| {
        let rho = 1.0
            + coeffs
                .iter()
                .enumerate()
                .map(|(j, (a, b))| {
                    let p = (j + 2) as f64;
                    a * (p * u).cos() + b * (p * u).sin()
                })
                .sum::<f64>();
        [rho * (w * u).cos(), rho * (w * u).sin()]
    })
}

/// `count` curves cycling through `omegas`, amplitudes uniform in `(0, eps_max]`.
pub fn perturbed_circle_corpus(
    seed: u64,
    count: usize,
    omegas: &[i64],
    eps_max: f64,
    n: usize,
) -> Result<Vec<CorpusCurve>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let omega = omegas[i % omegas.len()];
            let eps = eps_max * (1.0 - rng.gen::<f64>());
            let max_mode = rng.gen_range(2..=6);
            let curve = random_perturbed_circle(&mut rng, omega, eps, max_mode, n)?;
            Ok(CorpusCurve {
                id: format!("seed{seed}-{i:03}-w{omega}"),
                omega,
                eps,
                curve,
            })
        })
        .collect()
}

/// The first `count` curves of the reference corpus, alternating `omega = 1, 2`.
pub fn reference_corpus(count: usize) -> Result<Vec<CorpusCurve>> {
    perturbed_circle_corpus(CORPUS_SEED, count, &[1, 2], CORPUS_EPS_MAX, CORPUS_SAMPLES)
}

/// Smooth band-limited test field `V(u) = sum_{p <= max_mode} c_p cos(p u + phi_p)`.
pub fn random_band_limited_field(rng: &mut impl Rng, max_mode: usize, n: usize) -> Vec<f64> {
    let terms: Vec<(f64, f64)> = (0..=max_mode)
        .map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(0.0..TAU)))
        .collect();
    (0..n)
        .map(|i| {
            let u = TAU * i as f64 / n as f64;
            terms
                .iter()
                .enumerate()
                .map(|(p, (c, phi))| c * (p as f64 * u + phi).cos())
                .sum()
        })
        .collect()
}
