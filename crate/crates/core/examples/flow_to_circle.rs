//! A perturbed circle flowing to a round circle, with the energy decay rate
//! fitted over the second half of the run.

use icflow::flow::{run, FlowConfig};
use icflow::validate::fit_trailing_half;
use icflow::PresetSpec;

fn main() -> icflow::Result<()> {
    let curve = "fourier_perturbed_circle:m=2,eps=0.05"
        .parse::<PresetSpec>()?
        .build()?;
    let config = FlowConfig {
        t_end: 5.0,
        ..FlowConfig::default()
    };
    let out = run(&curve, &config)?;

    println!(
        "{:>10} {:>12} {:>12} {:>12} {:>12}",
        "t", "L", "E", "L^3 E", "circle res"
    );
    let stride = (out.records.len() / 15).max(1);
    for r in out.records.iter().step_by(stride) {
        println!(
            "{:>10.5} {:>12.8} {:>12.4e} {:>12.4e} {:>12.3e}",
            r.t, r.length, r.energy, r.scale_invariant_energy, r.circle_residual
        );
    }
    println!(
        "{:?} at t = {:.4} after {} steps",
        out.termination, out.final_state.time, out.final_state.steps
    );
    if let Some(c) = out.limit_circle {
        println!(
            "limit circle: centre ({:.6}, {:.6}), radius {:.8}",
            c.center[0], c.center[1], c.radius
        );
    }
    let fit = fit_trailing_half(&out.records)?;
    println!(
        "E ~ {:.3e} exp(-{:.3} t), rms log residual {:.2e}",
        fit.amplitude, fit.rate, fit.residual
    );
    // first-order in the step size; the adaptive steps are large late in the run
    println!(
        "energy balance (E(t) + int ||K||^2 dt - E(0)) / E(0) = {:.3e}",
        out.final_state.balance_residual(out.initial_energy) / out.initial_energy
    );
    Ok(())
}
