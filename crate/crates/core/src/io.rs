//! Curve, spectrum and diagnostics file formats.
//!
//! Floats are written with 17 significant digits so every value round-trips.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::analysis::SpectralDecomposition;
use crate::error::{Error, Result};
use crate::flow::{DiagnosticsRecord, DIAGNOSTICS_HEADER};
use crate::geometry::CurveState;

pub const CURVE_CSV_HEADER: &str = "x,y";
pub const SPECTRUM_CSV_HEADER: &str = "p,re,im";

/// Fixed-width scientific notation with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Serialize, Deserialize)]
struct CurveFile {
    n: usize,
    points: Vec<[f64; 2]>,
}

pub fn curve_to_json(curve: &CurveState) -> String {
    let file = CurveFile {
        n: curve.n_samples(),
        points: curve.points().to_vec(),
    };
    serde_json::to_string_pretty(&file).expect("curve serialises")
}

pub fn curve_from_json(text: &str) -> Result<CurveState> {
    let file: CurveFile = serde_json::from_str(text)?;
    if file.n != file.points.len() {
        return Err(Error::Parse(format!(
            "n = {} but {} points given",
            file.n,
            file.points.len()
        )));
    }
    CurveState::new(file.points)
}

pub fn curve_to_csv(curve: &CurveState) -> String {
    let mut out = String::from(CURVE_CSV_HEADER);
    out.push('\n');
    for p in curve.points() {
        let _ = writeln!(out, "{},{}", fmt_f64(p[0]), fmt_f64(p[1]));
    }
    out
}

fn parse_row<const W: usize>(line: &str, lineno: usize) -> Result<[f64; W]> {
    let mut out = [0.0; W];
    let mut fields = line.split(',');
    for slot in out.iter_mut() {
        let field = fields
            .next()
            .ok_or_else(|| Error::Parse(format!("line {lineno}: expected {W} columns")))?;
        *slot = field
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("line {lineno}: bad number {field:?}")))?;
    }
    if fields.next().is_some() {
        return Err(Error::Parse(format!("line {lineno}: expected {W} columns")));
    }
    Ok(out)
}

fn data_lines<'a>(text: &'a str, header: &str) -> Result<impl Iterator<Item = (usize, &'a str)>> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, h)) if h.trim() == header => Ok(lines.map(|(i, l)| (i + 1, l))),
        Some((_, h)) => Err(Error::Parse(format!(
            "expected header {header:?}, found {h:?}"
        ))),
        None => Err(Error::Parse("empty file".into())),
    }
}

pub fn curve_from_csv(text: &str) -> Result<CurveState> {
    let points = data_lines(text, CURVE_CSV_HEADER)?
        .map(|(i, l)| parse_row::<2>(l, i))
        .collect::<Result<Vec<_>>>()?;
    CurveState::new(points)
}

/// Read a curve from `.json` or `.csv` by extension.
pub fn read_curve(path: &Path) -> Result<CurveState> {
    let text = fs::read_to_string(path)?;
    match extension(path).as_deref() {
        Some("csv") => curve_from_csv(&text),
        _ => curve_from_json(&text),
    }
}

/// Write a curve as CSV for a `.csv` extension, JSON otherwise.
pub fn write_curve(path: &Path, curve: &CurveState) -> Result<()> {
    let text = match extension(path).as_deref() {
        Some("csv") => curve_to_csv(curve),
        _ => curve_to_json(curve),
    };
    fs::write(path, text)?;
    Ok(())
}

fn extension(path: &Path) -> Option<String> {
    path.extension()
        .map(|e| e.to_string_lossy().to_ascii_lowercase())
}

pub fn spectrum_to_csv(decomposition: &SpectralDecomposition) -> String {
    let mut out = String::from(SPECTRUM_CSV_HEADER);
    out.push('\n');
    for (p, a) in decomposition.iter() {
        let _ = writeln!(out, "{p},{},{}", fmt_f64(a.re), fmt_f64(a.im));
    }
    out
}

pub fn diagnostics_to_csv(records: &[DiagnosticsRecord]) -> String {
    let mut out = String::from(DIAGNOSTICS_HEADER);
    out.push('\n');
    for r in records {
        let row: Vec<String> = r.fields().iter().map(|x| fmt_f64(*x)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn diagnostics_from_csv(text: &str) -> Result<Vec<DiagnosticsRecord>> {
    data_lines(text, DIAGNOSTICS_HEADER)?
        .map(|(i, l)| parse_row::<9>(l, i).map(DiagnosticsRecord::from_fields))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::decompose_curvature;
    use crate::geometry::build_geometry;
    use crate::presets::PresetSpec;

    fn limacon() -> CurveState {
        "limacon:a=0.5,b=1,n=64"
            .parse::<PresetSpec>()
            .unwrap()
            .build()
            .unwrap()
    }

    #[test]
    fn json_round_trip_is_exact() {
        let c = limacon();
        assert_eq!(curve_from_json(&curve_to_json(&c)).unwrap(), c);
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let c = limacon();
        assert_eq!(curve_from_csv(&curve_to_csv(&c)).unwrap(), c);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(
            curve_from_json(r#"{"n": 3, "points": [[0,0]]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(curve_from_csv("a,b\n1,2\n"), Err(Error::Parse(_))));
        assert!(matches!(
            curve_from_csv("x,y\n1,2,3\n"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            curve_from_csv("x,y\n1,oops\n"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            curve_from_csv("x,y\n1,2\n"),
            Err(Error::TooFewSamples { .. })
        ));
    }

    #[test]
    fn diagnostics_round_trip_is_exact() {
        let s = crate::flow::FlowState::new(limacon(), 1e-4).unwrap();
        let records = vec![DiagnosticsRecord::from_state(&s); 3];
        let text = diagnostics_to_csv(&records);
        assert!(text.starts_with(DIAGNOSTICS_HEADER));
        assert_eq!(diagnostics_from_csv(&text).unwrap(), records);
    }

    #[test]
    fn spectrum_rows() {
        let d = decompose_curvature(&build_geometry(&limacon()).unwrap(), Some(4)).unwrap();
        let text = spectrum_to_csv(&d);
        assert_eq!(text.lines().count(), 1 + 9);
        assert!(text.lines().nth(1).unwrap().starts_with("-4,"));
    }

    #[test]
    fn float_format_has_17_digits() {
        assert_eq!(fmt_f64(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_f64(0.1).parse::<f64>().unwrap(), 0.1);
    }
}
