use std::fs;

use icflow::flow::{checkpoint_load, checkpoint_save, run, step, FlowConfig, FlowState};
use icflow::io::{diagnostics_from_csv, diagnostics_to_csv, read_curve, write_curve};
use icflow::{CurveState, PresetSpec};

fn preset(spec: &str) -> CurveState {
    spec.parse::<PresetSpec>().unwrap().build().unwrap()
}

#[test]
fn curve_files_round_trip_by_extension() {
    let tmp = tempfile::tempdir().unwrap();
    let c = preset("limacon:a=1.5,b=1,n=96");
    for ext in ["json", "csv"] {
        let path = tmp.path().join(format!("curve.{ext}"));
        write_curve(&path, &c).unwrap();
        assert_eq!(read_curve(&path).unwrap(), c);
    }
    // anything that is not .csv is JSON
    let other = tmp.path().join("curve.txt");
    write_curve(&other, &c).unwrap();
    assert_eq!(read_curve(&other).unwrap(), c);
    let truncated = tmp.path().join("short.csv");
    fs::write(&truncated, "x,y\n").unwrap();
    assert!(read_curve(&truncated).is_err());
}

#[test]
fn run_diagnostics_survive_csv() {
    let out = run(
        &preset("ellipse:a=1.2,b=1"),
        &FlowConfig {
            t_end: 0.05,
            ..FlowConfig::default()
        },
    )
    .unwrap();
    let text = diagnostics_to_csv(&out.records);
    assert_eq!(text.lines().count(), out.records.len() + 1);
    assert_eq!(diagnostics_from_csv(&text).unwrap(), out.records);
}

#[test]
fn resumed_run_matches_uninterrupted_run() {
    let config = FlowConfig::default();
    let mut direct = FlowState::new(
        preset("fourier_perturbed_circle:m=3,eps=0.04"),
        config.dt_initial,
    )
    .unwrap();
    for _ in 0..20 {
        direct = step(&direct, &config).unwrap();
    }
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("checkpoint.bin");
    fs::write(&path, checkpoint_save(&direct)).unwrap();
    let mut resumed = checkpoint_load(&fs::read(&path).unwrap()).unwrap();
    for _ in 0..20 {
        direct = step(&direct, &config).unwrap();
        resumed = step(&resumed, &config).unwrap();
    }
    assert_eq!(resumed.curve(), direct.curve());
    assert_eq!(resumed.time.to_bits(), direct.time.to_bits());
}

#[test]
fn corrupted_checkpoint_is_rejected() {
    let s = FlowState::new(preset("circle"), 1e-4).unwrap();
    let mut bytes = checkpoint_save(&s);
    let mid = bytes.len() / 2;
    bytes[mid] ^= 0x10;
    assert!(checkpoint_load(&bytes).is_err());
    assert!(checkpoint_load(&bytes[..10]).is_err());
}
