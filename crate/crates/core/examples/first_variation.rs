//! Finite-difference check that `-int V K ds` is the directional derivative of
//! the energy along the normal field `V nu`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use icflow::flow::first_variation_check;
use icflow::validate::random_band_limited_field;
use icflow::PresetSpec;

fn main() -> icflow::Result<()> {
    let curve = "limacon:a=0.5,b=1".parse::<PresetSpec>()?.build()?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let field = random_band_limited_field(&mut rng, 6, curve.n_samples());
    let h: Vec<f64> = (0..20).map(|i| 1e-2 * 0.5f64.powi(i)).collect();
    let report = first_variation_check(&curve, &field, &h)?;

    println!("predicted -int V K ds = {:.12e}", report.predicted);
    println!(
        "{:>10} {:>20} {:>12} {:>12}",
        "h", "quotient", "deviation", "ratio"
    );
    let ratios = report.deviation_ratios();
    for (i, row) in report.rows.iter().enumerate() {
        let ratio = if i > 0 {
            format!("{:.4}", ratios[i - 1])
        } else {
            String::new()
        };
        println!(
            "{:>10.3e} {:>20.12e} {:>12.3e} {:>12}",
            row.h, row.quotient, row.deviation, ratio
        );
    }
    println!("relative rounding floor: {:.2e}", report.relative_floor());
    Ok(())
}
