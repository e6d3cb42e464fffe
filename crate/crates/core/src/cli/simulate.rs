use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{SystemTime, UNIX_EPOCH};

use crate::error::{Error, Result};
use crate::flow::{checkpoint_save, run_with, FlowConfig, Termination};
use crate::geometry::CurveState;
use crate::io;
use crate::presets::PresetSpec;
use crate::svg::{emit_svg_frame, frame_file_name, SvgStyle};

use super::manifest::{file_entry, RunManifest, RunSource};
use super::{fail, SimulateArgs, EXIT_IMMERSION_LOST, EXIT_OK, EXIT_STEP_FLOOR, THREADS_ENV};

pub const DIAGNOSTICS_FILE: &str = "diagnostics.csv";
pub const MANIFEST_FILE: &str = "manifest.json";
pub const FINAL_CURVE_FILE: &str = "final_curve.json";
pub const CHECKPOINT_FILE: &str = "checkpoint.bin";
pub const FRAMES_DIR: &str = "frames";

struct Job {
    source: RunSource,
    curve: CurveState,
    dir: PathBuf,
}

fn unix_now() -> f64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs_f64())
        .unwrap_or(0.0)
}

fn slug(spec: &str) -> String {
    spec.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || "=.-_".contains(c) {
                c
            } else {
                '_'
            }
        })
        .collect()
}

fn load_config(args: &SimulateArgs) -> Result<FlowConfig> {
    let mut config = match &args.config {
        Some(path) => serde_json::from_str(&fs::read_to_string(path)?)?,
        None => FlowConfig::default(),
    };
    if let Some(t) = args.t_end {
        config.t_end = t;
    }
    config.validate()?;
    Ok(config)
}

fn jobs(args: &SimulateArgs) -> Result<Vec<Job>> {
    if let Some(path) = &args.input {
        return Ok(vec![Job {
            source: RunSource {
                preset: None,
                input: Some(path.display().to_string()),
                seed: None,
            },
            curve: io::read_curve(path)?,
            dir: args.out_dir.clone(),
        }]);
    }
    let sweep = args.preset.len() > 1;
    args.preset
        .iter()
        .enumerate()
        .map(|(i, text)| {
            let spec: PresetSpec = text.parse()?;
            Ok(Job {
                source: RunSource {
                    preset: Some(spec.to_string()),
                    input: None,
                    seed: None,
                },
                curve: spec.build()?,
                dir: if sweep {
                    args.out_dir.join(format!("{i:03}_{}", slug(text)))
                } else {
                    args.out_dir.clone()
                },
            })
        })
        .collect()
}

fn exit_code(t: Termination) -> i32 {
    match t {
        Termination::Converged | Termination::TEnd => EXIT_OK,
        Termination::StepFloor => EXIT_STEP_FLOOR,
        Termination::ImmersionLost => EXIT_IMMERSION_LOST,
    }
}

fn rel(parts: &[&str]) -> String {
    parts.join("/")
}

/// Run one job into its directory and return the manifest.
fn execute(job: &Job, config: &FlowConfig, frame_stride: usize, wall: bool) -> Result<RunManifest> {
    let started = wall.then(unix_now);
    fs::create_dir_all(&job.dir)?;
    if frame_stride > 0 {
        fs::create_dir_all(job.dir.join(FRAMES_DIR))?;
    }
    let mut frames: Vec<String> = Vec::new();
    let mut frame_error: Option<Error> = None;
    let mut snapshot = 0usize;
    let out = run_with(&job.curve, config, |record, state| {
        if frame_stride > 0 && snapshot % frame_stride == 0 && frame_error.is_none() {
            let index = frames.len();
            let style = SvgStyle {
                frame: Some(index),
                time: Some(record.t),
                ..SvgStyle::default()
            };
            let name = frame_file_name(index);
            let written = emit_svg_frame(state.curve(), &style).and_then(|svg| {
                fs::write(job.dir.join(FRAMES_DIR).join(&name), svg).map_err(Error::from)
            });
            match written {
                Ok(()) => frames.push(rel(&[FRAMES_DIR, &name])),
                Err(e) => frame_error = Some(e),
            }
        }
        snapshot += 1;
    })?;
    if let Some(e) = frame_error {
        return Err(e);
    }

    fs::write(
        job.dir.join(DIAGNOSTICS_FILE),
        io::diagnostics_to_csv(&out.records),
    )?;
    fs::write(
        job.dir.join(FINAL_CURVE_FILE),
        io::curve_to_json(out.final_state.curve()),
    )?;
    fs::write(
        job.dir.join(CHECKPOINT_FILE),
        checkpoint_save(&out.final_state),
    )?;

    let mut files = Vec::new();
    for name in [DIAGNOSTICS_FILE, FINAL_CURVE_FILE, CHECKPOINT_FILE] {
        files.push(file_entry(&job.dir, name)?);
    }
    for name in &frames {
        files.push(file_entry(&job.dir, name)?);
    }
    let manifest = RunManifest {
        tool: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.clone(),
        source: job.source.clone(),
        termination: out.termination,
        final_time: out.final_state.time,
        steps: out.final_state.steps,
        snapshots: out.records.len(),
        started_unix: started,
        finished_unix: wall.then(unix_now),
        files,
    };
    let mut text = serde_json::to_string_pretty(&manifest)?;
    text.push('\n');
    fs::write(job.dir.join(MANIFEST_FILE), text)?;
    Ok(manifest)
}

fn thread_cap() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|n| *n > 0)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

fn report(dir: &Path, result: &Result<RunManifest>) -> i32 {
    match result {
        Ok(m) => {
            out!(
                "{}: {:?} at t = {:.6e} after {} steps ({} snapshots)",
                dir.display(),
                m.termination,
                m.final_time,
                m.steps,
                m.snapshots
            );
            exit_code(m.termination)
        }
        Err(e) => fail(format!("{}: {e}", dir.display())),
    }
}

pub(super) fn simulate(args: &SimulateArgs) -> i32 {
    let config = match load_config(args) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let jobs = match jobs(args) {
        Ok(j) => j,
        Err(e) => match &args.input {
            Some(path) => return fail(format!("{}: {e}", path.display())),
            None => return fail(e),
        },
    };
    let results: Vec<Mutex<Option<Result<RunManifest>>>> =
        jobs.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = thread_cap().min(jobs.len()).max(1);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some(job) = jobs.get(i) else { break };
                let r = execute(job, &config, args.frame_stride, args.record_wall_time);
                *results[i].lock().expect("result slot") = Some(r);
            });
        }
    });
    let mut code = EXIT_OK;
    for (job, slot) in jobs.iter().zip(results) {
        let r = slot
            .into_inner()
            .expect("result slot")
            .expect("every job ran");
        code = code.max(report(&job.dir, &r));
    }
    code
}
