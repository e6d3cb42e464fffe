//! Negative control: a figure-eight has winding number zero, sits far above
//! any small-energy regime, and does not round up.

use icflow::flow::{run_with, FlowConfig};
use icflow::PresetSpec;

fn main() -> icflow::Result<()> {
    let curve = "lemniscate:a=1".parse::<PresetSpec>()?.build()?;
    let config = FlowConfig {
        t_end: 2.0,
        ..FlowConfig::default()
    };
    let mut windings = std::collections::BTreeSet::new();
    let out = run_with(&curve, &config, |_, s| {
        windings.insert(s.geometry.winding);
    })?;

    let stride = (out.records.len() / 12).max(1);
    println!(
        "{:>8} {:>10} {:>12} {:>12} {:>12}",
        "t", "L", "L^3 E", "Q", "circle res"
    );
    for r in out.records.iter().step_by(stride) {
        println!(
            "{:>8.4} {:>10.5} {:>12.4e} {:>12.4e} {:>12.4}",
            r.t, r.length, r.scale_invariant_energy, r.blowup, r.circle_residual
        );
    }
    let min_l3e = out
        .records
        .iter()
        .map(|r| r.scale_invariant_energy)
        .fold(f64::INFINITY, f64::min);
    println!(
        "{:?}; winding numbers seen {windings:?}; min L^3 E = {min_l3e:.1}",
        out.termination
    );
    Ok(())
}
