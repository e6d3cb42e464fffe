use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::Result;
use crate::flow::FlowConfig;
use crate::geometry::build_geometry;
use crate::io;
use crate::presets::PresetSpec;
use crate::validate::{curve_checks, trajectory_checks, CheckStatus, InequalityReport};

use super::manifest::RunManifest;
use super::simulate::{DIAGNOSTICS_FILE, FINAL_CURVE_FILE, MANIFEST_FILE};
use super::{fail, VerifyArgs, EXIT_CHECK_FAILED, EXIT_OK};

#[derive(Debug, Serialize)]
struct VerifyOutput {
    target: String,
    reports: Vec<InequalityReport>,
    all_pass: bool,
}

fn run_reports(dir: &Path, threshold: Option<f64>, band: f64) -> Result<Vec<InequalityReport>> {
    let configured = fs::read_to_string(dir.join(MANIFEST_FILE))
        .ok()
        .and_then(|t| serde_json::from_str::<RunManifest>(&t).ok())
        .map(|m| m.config.small_energy_threshold);
    let threshold = threshold
        .or(configured)
        .unwrap_or(FlowConfig::default().small_energy_threshold);
    let records = io::diagnostics_from_csv(&fs::read_to_string(dir.join(DIAGNOSTICS_FILE))?)?;
    let mut reports = trajectory_checks(&records, threshold, band)?;
    let final_curve = dir.join(FINAL_CURVE_FILE);
    if final_curve.exists() {
        let cache = build_geometry(&io::read_curve(&final_curve)?)?;
        for mut r in curve_checks(&cache, threshold)? {
            r.id = format!("final/{}", r.id);
            reports.push(r);
        }
    }
    Ok(reports)
}

fn status_label(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "FAIL",
        CheckStatus::Informational => "informational",
        CheckStatus::HypothesisNotMet => "hypothesis-not-met",
        CheckStatus::Stationary => "stationary",
    }
}

fn print_table(target: &str, reports: &[InequalityReport]) {
    out!("target: {target}");
    out!(
        "{:<26} {:<19} {:>14} {:>14} {:>14}",
        "check",
        "status",
        "lhs",
        "rhs",
        "slack"
    );
    for r in reports {
        let mut line = format!(
            "{:<26} {:<19} {:>14.6e} {:>14.6e} {:>14.6e}",
            r.id,
            status_label(r.status),
            r.lhs,
            r.rhs,
            r.slack
        );
        if r.id.ends_with("curvature_bound")
            && r.status == CheckStatus::Pass
            && r.slack.abs() <= 1e-10 * r.rhs
        {
            line.push_str("  (equality)");
        }
        out!("{line}");
    }
}

pub(super) fn verify(args: &VerifyArgs) -> i32 {
    let t = &args.target;
    let threshold = args.threshold;
    let default_threshold = FlowConfig::default().small_energy_threshold;
    let (target, result) = if let Some(spec) = &t.preset {
        let r = spec
            .parse::<PresetSpec>()
            .and_then(|s| s.build())
            .and_then(|c| build_geometry(&c))
            .and_then(|g| curve_checks(&g, threshold.unwrap_or(default_threshold)));
        (format!("preset {spec}"), r)
    } else if let Some(path) = &t.input {
        let r = io::read_curve(path)
            .and_then(|c| build_geometry(&c))
            .and_then(|g| curve_checks(&g, threshold.unwrap_or(default_threshold)));
        (format!("curve {}", path.display()), r)
    } else if let Some(dir) = &t.run {
        (
            format!("run {}", dir.display()),
            run_reports(dir, threshold, args.band),
        )
    } else {
        return fail("no verification target");
    };
    let reports = match result {
        Ok(r) => r,
        Err(e) => return fail(format!("{target}: {e}")),
    };
    let all_pass = reports.iter().all(|r| !r.is_failure());
    if args.json {
        let out = VerifyOutput {
            target,
            reports,
            all_pass,
        };
        out!(
            "{}",
            serde_json::to_string_pretty(&out).expect("reports serialise")
        );
    } else {
        print_table(&target, &reports);
    }
    if all_pass {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}
