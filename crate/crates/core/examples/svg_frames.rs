//! Render a flow as SVG frames, coloured by curvature, with normal glyphs.
//! Usage: `cargo run --example svg_frames [OUT_DIR]`.

use std::fs;
use std::path::PathBuf;

use icflow::flow::{run_with, FlowConfig};
use icflow::svg::{emit_svg_frame, frame_file_name, SvgStyle};
use icflow::PresetSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("icflow-frames"));
    fs::create_dir_all(&dir)?;

    let curve = "limacon:a=0.6,b=1".parse::<PresetSpec>()?.build()?;
    let config = FlowConfig {
        t_end: 0.5,
        ..FlowConfig::default()
    };
    let mut frame = 0;
    let mut failure = None;
    run_with(&curve, &config, |r, s| {
        if s.steps % 25 != 0 || failure.is_some() {
            return;
        }
        let style = SvgStyle {
            curvature_colours: true,
            normals_every: Some(8),
            frame: Some(frame),
            time: Some(r.t),
            ..SvgStyle::default()
        };
        match emit_svg_frame(s.curve(), &style)
            .map(|svg| fs::write(dir.join(frame_file_name(frame)), svg))
        {
            Ok(Ok(())) => frame += 1,
            Ok(Err(e)) => failure = Some(e.to_string()),
            Err(e) => failure = Some(e.to_string()),
        }
    })?;
    if let Some(e) = failure {
        return Err(e.into());
    }
    println!("wrote {frame} frames to {}", dir.display());
    Ok(())
}
