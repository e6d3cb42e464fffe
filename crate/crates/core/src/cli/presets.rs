use crate::io;
use crate::presets::{Preset, PresetSpec};

use super::{fail, PresetsArgs, EXIT_OK};

pub(super) fn presets(args: &PresetsArgs) -> i32 {
    let Some(spec) = &args.emit else {
        for p in Preset::ALL {
            out!("{} (default n = {})", p.id(), p.default_samples());
            for param in p.params() {
                out!(
                    "    {:<4} default {:<6} {}",
                    param.name,
                    param.default,
                    param.help
                );
            }
        }
        return EXIT_OK;
    };
    let curve = match spec.parse::<PresetSpec>().and_then(|s| s.build()) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    match &args.output {
        Some(path) => match io::write_curve(path, &curve) {
            Ok(()) => EXIT_OK,
            Err(e) => fail(e),
        },
        None => {
            out!("{}", io::curve_to_json(&curve));
            EXIT_OK
        }
    }
}
