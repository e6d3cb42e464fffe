//! SVG rendering of curve frames.

use std::fmt::Write as _;

use crate::error::Result;
use crate::geometry::{build_geometry, CurveState};

#[derive(Debug, Clone, PartialEq)]
pub struct SvgStyle {
    /// Width of the rendered image in pixels; the height follows the aspect ratio.
    pub width_px: f64,
    /// Stroke width relative to the larger side of the bounding box.
    pub stroke: f64,
    pub stroke_colour: String,
    /// Draw a normal glyph at every `normals_every`-th sample.
    pub normals_every: Option<usize>,
    /// Colour segments by curvature, blue (min) to red (max).
    pub curvature_colours: bool,
    pub frame: Option<usize>,
    pub time: Option<f64>,
}

impl Default for SvgStyle {
    fn default() -> Self {
        Self {
            width_px: 512.0,
            stroke: 0.004,
            stroke_colour: "#1f2937".into(),
            normals_every: None,
            curvature_colours: false,
            frame: None,
            time: None,
        }
    }
}

/// Seven significant digits: small files, deterministic output.
fn num(x: f64) -> String {
    format!("{x:.6e}")
}

fn heat(t: f64) -> String {
    let t = if t.is_finite() {
        t.clamp(0.0, 1.0)
    } else {
        0.5
    };
    let r = (255.0 * t).round() as u8;
    let b = (255.0 * (1.0 - t)).round() as u8;
    format!("#{r:02x}40{b:02x}")
}

/// Render `curve` as a single closed path (y axis pointing up), with the
/// viewBox padded by 10% of the larger bounding-box side.
pub fn emit_svg_frame(curve: &CurveState, style: &SvgStyle) -> Result<String> {
    let pts: Vec<[f64; 2]> = curve.points().iter().map(|p| [p[0], -p[1]]).collect();
    let (mut x0, mut x1, mut y0, mut y1) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for p in &pts {
        x0 = x0.min(p[0]);
        x1 = x1.max(p[0]);
        y0 = y0.min(p[1]);
        y1 = y1.max(p[1]);
    }
    let side = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let pad = 0.1 * side;
    let (vx, vy, vw, vh) = (x0 - pad, y0 - pad, x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);
    let height_px = style.width_px * vh / vw;
    let stroke = style.stroke * side;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" viewBox="{} {} {} {}">"#,
        style.width_px,
        height_px,
        num(vx),
        num(vy),
        num(vw),
        num(vh)
    );
    if style.frame.is_some() || style.time.is_some() {
        let frame = style.frame.map_or("null".to_string(), |f| f.to_string());
        let time = style
            .time
            .map_or("null".to_string(), |t| format!("{t:.16e}"));
        let _ = writeln!(
            out,
            r#"<metadata>{{"frame":{frame},"t":{time}}}</metadata>"#
        );
    }
    let mut d = String::new();
    for (i, p) in pts.iter().enumerate() {
        let _ = write!(
            d,
            "{}{} {} ",
            if i == 0 { "M" } else { "L" },
            num(p[0]),
            num(p[1])
        );
    }
    d.push('Z');
    let _ = writeln!(
        out,
        r#"<path d="{d}" fill="none" stroke="{}" stroke-width="{}" stroke-linejoin="round"/>"#,
        style.stroke_colour,
        num(stroke)
    );

    if style.curvature_colours || style.normals_every.is_some() {
        let g = build_geometry(curve)?;
        if style.curvature_colours {
            let k = g.curvature();
            let (lo, hi) = k
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
                    (a.min(*v), b.max(*v))
                });
            let span = hi - lo;
            out.push_str("<g stroke-linecap=\"round\">\n");
            for i in 0..pts.len() {
                let j = (i + 1) % pts.len();
                let t = if span > 0.0 {
                    (0.5 * (k[i] + k[j]) - lo) / span
                } else {
                    0.5
                };
                let _ = writeln!(
                    out,
                    r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="{}"/>"#,
                    num(pts[i][0]),
                    num(pts[i][1]),
                    num(pts[j][0]),
                    num(pts[j][1]),
                    heat(t),
                    num(1.5 * stroke)
                );
            }
            out.push_str("</g>\n");
        }
        if let Some(every) = style.normals_every {
            let len = 0.05 * side;
            out.push_str("<g stroke=\"#059669\">\n");
            for i in (0..pts.len()).step_by(every.max(1)) {
                let n = g.normal[i];
                let _ = writeln!(
                    out,
                    r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke-width="{}"/>"#,
                    num(pts[i][0]),
                    num(pts[i][1]),
                    num(pts[i][0] + len * n[0]),
                    num(pts[i][1] - len * n[1]),
                    num(0.5 * stroke)
                );
            }
            out.push_str("</g>\n");
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// File name of frame `index`, zero-padded to six digits.
pub fn frame_file_name(index: usize) -> String {
    format!("frame_{index:06}.svg")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::PresetSpec;

    fn curve(spec: &str) -> CurveState {
        spec.parse::<PresetSpec>().unwrap().build().unwrap()
    }

    fn view_box(svg: &str) -> Vec<f64> {
        let start = svg.find("viewBox=\"").unwrap() + 9;
        let end = start + svg[start..].find('"').unwrap();
        svg[start..end]
            .split(' ')
            .map(|s| s.parse().unwrap())
            .collect()
    }

    #[test]
    fn circle_is_one_square_closed_path() {
        let svg = emit_svg_frame(&curve("circle:r=2"), &SvgStyle::default()).unwrap();
        assert_eq!(svg.matches("<path").count(), 1);
        assert!(svg.contains("Z\""));
        let vb = view_box(&svg);
        assert!((vb[2] / vb[3] - 1.0).abs() < 1e-5);
        assert!((vb[2] - 4.8).abs() < 1e-4 && (vb[0] + 2.4).abs() < 1e-4);
    }

    #[test]
    fn figure_eight_renders_with_decorations() {
        let style = SvgStyle {
            normals_every: Some(8),
            curvature_colours: true,
            frame: Some(3),
            time: Some(0.5),
            ..SvgStyle::default()
        };
        let svg = emit_svg_frame(&curve("lemniscate:a=1"), &style).unwrap();
        assert!(svg.contains(r#""frame":3"#));
        assert!(svg.contains("<line"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn frame_names_are_zero_padded() {
        assert_eq!(frame_file_name(7), "frame_000007.svg");
        assert!(frame_file_name(999) < frame_file_name(1000));
    }
}
