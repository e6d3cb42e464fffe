use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const PRESETS: [&str; 6] = [
    "circle:r=1.5",
    "omega_circle:w=2",
    "ellipse:a=1.3,b=1",
    "limacon:a=0.4,b=1",
    "lemniscate:a=1",
    "fourier_perturbed_circle:m=3,eps=0.04",
];

fn icflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_icflow"))
        .args(args)
        .output()
        .unwrap()
}

fn code(args: &[&str]) -> i32 {
    icflow(args).status.code().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn presets_lists_every_family() {
    let out = icflow(&["presets"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for spec in PRESETS {
        let id = spec.split(':').next().unwrap();
        assert!(text.lines().any(|l| l.starts_with(id)), "{id} missing");
    }
}

#[test]
fn bad_arguments_exit_one() {
    assert_eq!(code(&["simulate", "--preset", "circle:r=-1"]), 1);
    assert_eq!(code(&["simulate", "--preset", "spiral"]), 1);
    assert_eq!(code(&["verify", "--input", "/nonexistent/curve.json"]), 1);
    assert_eq!(code(&["verify"]), 1);
    assert_eq!(code(&["frobnicate"]), 1);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn emit_verify_simulate_round_trip() {
    let tmp = tempfile::tempdir().unwrap();
    for (i, spec) in PRESETS.iter().enumerate() {
        for ext in ["json", "csv"] {
            let file = tmp.path().join(format!("{i}.{ext}"));
            assert_eq!(
                code(&["presets", "--emit", spec, "-o", path(&file)]),
                0,
                "{spec}"
            );
            assert_eq!(code(&["verify", "--input", path(&file)]), 0, "{spec}");
        }
        let file = tmp.path().join(format!("{i}.json"));
        let out_dir = tmp.path().join(format!("run{i}"));
        let status = code(&[
            "simulate",
            "--input",
            path(&file),
            "--t-end",
            "0.01",
            "--out-dir",
            path(&out_dir),
        ]);
        assert_eq!(status, 0, "{spec}");
        for name in [
            "diagnostics.csv",
            "manifest.json",
            "final_curve.json",
            "checkpoint.bin",
        ] {
            assert!(out_dir.join(name).is_file(), "{spec}: {name}");
        }
        assert_eq!(code(&["verify", "--run", path(&out_dir)]), 0, "{spec}");
    }
}

#[test]
fn emitted_curve_matches_library_preset() {
    let out = icflow(&["presets", "--emit", "ellipse:a=2,b=1,n=32"]);
    assert!(out.status.success());
    let from_cli = icflow::io::curve_from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let direct = "ellipse:a=2,b=1,n=32"
        .parse::<icflow::PresetSpec>()
        .unwrap()
        .build()
        .unwrap();
    assert_eq!(from_cli, direct);
}

#[test]
fn verify_json_reports() {
    let out = icflow(&[
        "verify",
        "--preset",
        "fourier_perturbed_circle:m=2,eps=0.02",
        "--json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["all_pass"], serde_json::Value::Bool(true));
    let reports = v["reports"].as_array().unwrap();
    assert!(reports.len() >= 6);
    for r in reports {
        assert!(r["id"].is_string() && r["status"].is_string(), "{r}");
    }
}

#[test]
fn step_floor_exits_two() {
    let tmp = tempfile::tempdir().unwrap();
    let config = tmp.path().join("config.json");
    fs::write(
        &config,
        r#"{"scheme": "explicit_rk4", "dt_initial": 1e-2, "dt_max": 1e-2, "dt_min": 1e-2}"#,
    )
    .unwrap();
    let out_dir = tmp.path().join("run");
    let status = code(&[
        "simulate",
        "--preset",
        "ellipse:a=1.5,b=1",
        "--config",
        path(&config),
        "--out-dir",
        path(&out_dir),
    ]);
    assert_eq!(status, 2);
    let manifest: serde_json::Value =
        serde_json::from_slice(&fs::read(out_dir.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["termination"], "step_floor");
}

#[test]
fn failed_check_exits_four() {
    // a large-energy curve cannot satisfy the monotonicity hypothesis at this
    // threshold, but a forged diagnostics file with a rising L^3 E must fail
    let tmp = tempfile::tempdir().unwrap();
    let out_dir = tmp.path().join("run");
    assert_eq!(
        code(&[
            "simulate",
            "--preset",
            "fourier_perturbed_circle:m=2,eps=0.02",
            "--t-end",
            "0.05",
            "--out-dir",
            path(&out_dir)
        ]),
        0
    );
    let csv = out_dir.join("diagnostics.csv");
    let mut records = icflow::io::diagnostics_from_csv(&fs::read_to_string(&csv).unwrap()).unwrap();
    let last = records.len() - 1;
    records[last].energy *= 1.5;
    records[last].scale_invariant_energy *= 1.5;
    fs::write(&csv, icflow::io::diagnostics_to_csv(&records)).unwrap();
    assert_eq!(
        code(&["verify", "--run", path(&out_dir), "--threshold", "10"]),
        4
    );
}

#[test]
fn sweep_writes_one_directory_per_preset() {
    let tmp = tempfile::tempdir().unwrap();
    let status = code(&[
        "simulate",
        "--preset",
        "circle",
        "--preset",
        "ellipse:a=1.1,b=1",
        "--t-end",
        "0.02",
        "--frame-stride",
        "5",
        "--out-dir",
        path(tmp.path()),
    ]);
    assert_eq!(status, 0);
    let mut dirs: Vec<String> = fs::read_dir(tmp.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    dirs.sort();
    assert_eq!(dirs.len(), 2);
    assert!(dirs[0].starts_with("000_") && dirs[1].starts_with("001_"));
    let frames = tmp.path().join(&dirs[1]).join("frames");
    let first = fs::read_to_string(frames.join("frame_000000.svg")).unwrap();
    assert!(first.starts_with("<svg") || first.starts_with("<?xml"));
}
