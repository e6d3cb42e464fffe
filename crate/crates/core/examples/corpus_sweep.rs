//! Every curve check on the seeded perturbed-circle corpus, one CSV row per
//! curve and check.

use icflow::build_geometry;
use icflow::flow::FlowConfig;
use icflow::validate::{curve_checks, reference_corpus};

fn main() -> icflow::Result<()> {
    let threshold = FlowConfig::default().small_energy_threshold;
    println!("curve,omega,eps,check,status,lhs,rhs,slack");
    for c in reference_corpus(20)? {
        let g = build_geometry(&c.curve)?;
        for r in curve_checks(&g, threshold)? {
            println!(
                "{},{},{:.6},{},{:?},{:.9e},{:.9e},{:.9e}",
                c.id, c.omega, c.eps, r.id, r.status, r.lhs, r.rhs, r.slack
            );
        }
    }
    Ok(())
}
