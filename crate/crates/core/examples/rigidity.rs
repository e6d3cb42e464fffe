//! The pointwise quantity `Q = M^2 + N^2` with `M = k_sss`, `N = k_ss k - k_s^2 / 2`.
//! It is constant on stationary curves and varies along a moving flow; the
//! spread is shown relative to `(2 pi omega / L)^8`.

use icflow::flow::{run_with, FlowConfig};
use icflow::validate::rigidity_profile;
use icflow::{build_geometry, PresetSpec};

fn main() -> icflow::Result<()> {
    for spec in ["circle:r=1.5", "omega_circle:w=2", "ellipse:a=1.3,b=1"] {
        let g = build_geometry(&spec.parse::<PresetSpec>()?.build()?)?;
        let p = rigidity_profile(&g);
        println!(
            "{spec:<20} Q mean {:.4e}, max deviation {:.2e}, constant: {}; int M = {:.1e}, int N + 3E = {:.1e}",
            p.q_mean,
            p.q_max_deviation,
            p.q_is_constant(),
            p.m_integral,
            p.n_integral + 3.0 * p.energy
        );
    }

    println!("\nalong the flow of a perturbed circle:");
    let curve = "fourier_perturbed_circle:m=3,eps=0.05"
        .parse::<PresetSpec>()?
        .build()?;
    let mut rows = Vec::new();
    run_with(&curve, &FlowConfig::default(), |r, s| {
        let p = rigidity_profile(&s.geometry);
        rows.push((
            r.t,
            p.scale_invariant_el,
            p.q_max_deviation / p.q_scale,
            p.q_is_constant(),
        ));
    })?;
    let stride = (rows.len() / 12).max(1);
    println!(
        "{:>10} {:>14} {:>16} {:>9}",
        "t", "L^9 ||K||^2", "Q spread / k^8", "constant"
    );
    for (t, x, spread, constant) in rows.iter().step_by(stride).chain(rows.last()) {
        println!("{t:>10.5} {x:>14.4e} {spread:>16.4e} {constant:>9}");
    }
    Ok(())
}
