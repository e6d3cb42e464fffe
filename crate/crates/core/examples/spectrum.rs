//! Fourier decomposition of the curvature in arc length and the mode-gap
//! inequality for perturbed one- and two-fold circles.

use icflow::io::spectrum_to_csv;
use icflow::{build_geometry, c_omega, decompose_curvature, mode_gap_report, PresetSpec};

fn main() -> icflow::Result<()> {
    let g = build_geometry(
        &"fourier_perturbed_circle:m=3,eps=0.05"
            .parse::<PresetSpec>()?
            .build()?,
    )?;
    let d = decompose_curvature(&g, Some(8))?;
    print!("{}", spectrum_to_csv(&d));
    println!("Parseval: sum |a_p|^2 = {:.12e}", d.parseval());

    for w in 1..=3 {
        println!("C_{w} = {}", c_omega(w)?);
    }
    for spec in [
        "fourier_perturbed_circle:m=3,eps=0.05",
        "fourier_perturbed_circle:m=5,eps=0.02,w=2",
        "ellipse:a=1.5,b=1",
    ] {
        let g = build_geometry(&spec.parse::<PresetSpec>()?.build()?)?;
        let r = mode_gap_report(&g)?;
        println!(
            "{spec}: int K0^2 = {:.4e} >= C P - penalty = {:.4e} ({}), |a_w| = {:.3e} <= {:.3e} ({})",
            r.lhs,
            r.c_omega * r.p_functional - r.energy_penalty,
            r.gap_holds(),
            r.a_omega,
            r.a_omega_bound,
            r.coefficient_bound_holds()
        );
    }
    Ok(())
}
