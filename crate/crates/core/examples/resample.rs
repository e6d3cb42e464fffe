//! Redistributing samples uniformly in arc length. The input is an ellipse
//! sampled with a strongly non-uniform parameter.

use icflow::{build_geometry, resample_uniform_arclength, CurveState};

fn speed_spread(curve: &CurveState) -> (f64, f64) {
    let p = curve.points();
    let n = p.len();
    let gaps: Vec<f64> = (0..n)
        .map(|i| {
            let (a, b) = (p[i], p[(i + 1) % n]);
            (b[0] - a[0]).hypot(b[1] - a[1])
        })
        .collect();
    let lo = gaps.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = gaps.iter().cloned().fold(0.0, f64::max);
    (lo, hi)
}

fn main() -> icflow::Result<()> {
    let warped = CurveState::from_fn(128, |u| {
        let v = u + 0.6 * u.sin();
        [2.0 * v.cos(), v.sin()]
    })?;
    let uniform = resample_uniform_arclength(&warped, 128)?;

    for (name, c) in [("warped", &warped), ("resampled", &uniform)] {
        let g = build_geometry(c)?;
        let (lo, hi) = speed_spread(c);
        println!(
            "{name:<10} chord min {lo:.5} max {hi:.5} ratio {:.4}   L = {:.12}  E = {:.12}",
            hi / lo,
            g.length,
            g.energy
        );
    }
    let exact = CurveState::from_fn(4096, |u| [2.0 * u.cos(), u.sin()])?;
    println!(
        "reference L = {:.12} (4096 uniform-parameter samples)",
        build_geometry(&exact)?.length
    );
    Ok(())
}
