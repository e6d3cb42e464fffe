//! Save a flow state mid-run, reload it and continue; the resumed trajectory
//! is bit-identical to the uninterrupted one.

use icflow::flow::{checkpoint_load, checkpoint_save, step, FlowConfig, FlowState};
use icflow::PresetSpec;

fn main() -> icflow::Result<()> {
    let config = FlowConfig::default();
    let curve = "ellipse:a=1.4,b=1".parse::<PresetSpec>()?.build()?;
    let mut state = FlowState::new(curve, config.dt_initial)?;
    for _ in 0..30 {
        state = step(&state, &config)?;
    }
    let bytes = checkpoint_save(&state);
    println!(
        "checkpoint at t = {:.6e}: {} bytes",
        state.time,
        bytes.len()
    );

    let mut resumed = checkpoint_load(&bytes)?;
    for _ in 0..50 {
        state = step(&state, &config)?;
        resumed = step(&resumed, &config)?;
    }
    println!(
        "after 50 more steps: t = {:.6e}, identical curves: {}",
        state.time,
        state.curve() == resumed.curve()
    );

    let mut corrupted = bytes.clone();
    corrupted[100] ^= 1;
    println!(
        "corrupted checkpoint: {}",
        checkpoint_load(&corrupted).unwrap_err()
    );
    Ok(())
}
