//! Length, energy, winding and curvature of the built-in preset curves, and
//! how they behave under scaling.

use icflow::{build_geometry, PresetSpec};

fn main() -> icflow::Result<()> {
    let specs = [
        "circle:r=2",
        "omega_circle:w=3",
        "ellipse:a=2,b=1",
        "limacon:a=1.5,b=1",
        "lemniscate:a=1",
        "fourier_perturbed_circle:m=5,eps=0.1",
    ];
    println!(
        "{:<40} {:>10} {:>12} {:>12} {:>7} {:>10}",
        "preset", "L", "E", "L^3 E", "omega", "sup|k|"
    );
    for spec in specs {
        let curve = spec.parse::<PresetSpec>()?.build()?;
        let g = build_geometry(&curve)?;
        println!(
            "{:<40} {:>10.5} {:>12.5e} {:>12.5e} {:>7} {:>10.4}",
            spec,
            g.length,
            g.energy,
            g.scale_invariant_energy(),
            g.winding,
            g.sup_curvature()
        );
    }

    // E scales as rho^-3, L^3 E not at all
    let base = "ellipse:a=2,b=1".parse::<PresetSpec>()?.build()?;
    let g1 = build_geometry(&base)?;
    for rho in [0.5, 3.0] {
        let g = build_geometry(&base.scaled(rho)?)?;
        println!(
            "rho = {rho}: E ratio {:.12} (rho^-3 = {:.12}), L^3 E ratio {:.12}",
            g.energy / g1.energy,
            rho.powi(-3),
            g.scale_invariant_energy() / g1.scale_invariant_energy()
        );
    }
    Ok(())
}
