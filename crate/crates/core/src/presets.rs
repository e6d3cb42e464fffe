//! Named analytic curves, addressable as `id:key=value,...`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::CurveState;

pub type ParamMap = BTreeMap<String, f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Circle,
    OmegaCircle,
    Ellipse,
    Limacon,
    Lemniscate,
    FourierPerturbedCircle,
}

/// One accepted parameter of a preset.
#[derive(Debug, Clone, Copy)]
pub struct ParamSpec {
    pub name: &'static str,
    pub default: f64,
    pub help: &'static str,
}

macro_rules! param {
    ($name:expr, $default:expr, $help:expr) => {
        ParamSpec {
            name: $name,
            default: $default,
            help: $help,
        }
    };
}

impl Preset {
    pub const ALL: [Preset; 6] = [
        Preset::Circle,
        Preset::OmegaCircle,
        Preset::Ellipse,
        Preset::Limacon,
        Preset::Lemniscate,
        Preset::FourierPerturbedCircle,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Preset::Circle => "circle",
            Preset::OmegaCircle => "omega_circle",
            Preset::Ellipse => "ellipse",
            Preset::Limacon => "limacon",
            Preset::Lemniscate => "lemniscate",
            Preset::FourierPerturbedCircle => "fourier_perturbed_circle",
        }
    }

    pub fn params(self) -> &'static [ParamSpec] {
        match self {
            Preset::Circle => &[
                param!("r", 1.0, "radius (> 0)"),
                param!("cx", 0.0, "centre x"),
                param!("cy", 0.0, "centre y"),
            ],
            Preset::OmegaCircle => &[
                param!("r", 1.0, "radius (> 0)"),
                param!("w", 2.0, "number of traversals (integer >= 1)"),
            ],
            Preset::Ellipse => &[
                param!("a", 1.2, "x semi-axis (> 0)"),
                param!("b", 1.0, "y semi-axis (> 0)"),
            ],
            Preset::Limacon => &[
                param!(
                    "a",
                    0.5,
                    "cosine amplitude (>= 0, != b); a > b gives an inner loop"
                ),
                param!("b", 1.0, "base radius (> 0)"),
            ],
            Preset::Lemniscate => &[param!("a", 1.0, "half-width (> 0)")],
            Preset::FourierPerturbedCircle => &[
                param!("r", 1.0, "radius (> 0)"),
                param!("m", 2.0, "perturbation mode (integer >= 0)"),
                param!("eps", 0.05, "radial amplitude (|eps| < r)"),
                param!("w", 1.0, "number of traversals (integer >= 1)"),
            ],
        }
    }

    /// Sample count used when none is given.
    pub fn default_samples(self) -> usize {
        match self {
            Preset::Lemniscate => 256,
            _ => 128,
        }
    }

    /// Sample the preset. Missing parameters take their defaults.
    pub fn sample(self, params: &ParamMap, n: usize) -> Result<CurveState> {
        let known = self.params();
        if let Some(bad) = params
            .keys()
            .find(|k| !known.iter().any(|p| p.name == k.as_str()))
        {
            return Err(Error::BadParams(format!(
                "`{}` does not take parameter `{bad}`",
                self.id()
            )));
        }
        if n < CurveState::MIN_SAMPLES {
            return Err(Error::BadParams(format!(
                "n = {n} is below {}",
                CurveState::MIN_SAMPLES
            )));
        }
        let get = |name: &str| -> f64 {
            params.get(name).copied().unwrap_or_else(|| {
                known
                    .iter()
                    .find(|p| p.name == name)
                    .map(|p| p.default)
                    .unwrap_or(0.0)
            })
        };
        if let Some((name, _)) = params.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::BadParams(format!("`{name}` is not finite")));
        }
        let positive = |name: &str| -> Result<f64> {
            let v = get(name);
            if v > 0.0 {
                Ok(v)
            } else {
                Err(Error::BadParams(format!(
                    "`{name}` must be positive, got {v}"
                )))
            }
        };
        let count = |name: &str, min: f64| -> Result<f64> {
            let v = get(name);
            if v.fract() == 0.0 && v >= min {
                Ok(v)
            } else {
                Err(Error::BadParams(format!(
                    "`{name}` must be an integer >= {min}, got {v}"
                )))
            }
        };

        match self {
            Preset::Circle => {
                let r = positive("r")?;
                let (cx, cy) = (get("cx"), get("cy"));
                CurveState::from_fn(n, |u| [cx + r * u.cos(), cy + r * u.sin()])
            }
            Preset::OmegaCircle => {
                let r = positive("r")?;
                let w = count("w", 1.0)?;
                CurveState::from_fn(n, |u| [r * (w * u).cos(), r * (w * u).sin()])
            }
            Preset::Ellipse => {
                let (a, b) = (positive("a")?, positive("b")?);
                CurveState::from_fn(n, |u| [a * u.cos(), b * u.sin()])
            }
            Preset::Limacon => {
                let b = positive("b")?;
                let a = get("a");
                if a < 0.0 || (a - b).abs() < 1e-3 * b {
                    return Err(Error::BadParams(format!(
                        "limacon needs a >= 0 and a != b (cardioid cusp), got a = {a}, b = {b}"
                    )));
                }
                CurveState::from_fn(n, |u| {
                    let rho = b + a * u.cos();
                    [rho * u.cos(), rho * u.sin()]
                })
            }
            Preset::Lemniscate => {
                let a = positive("a")?;
                CurveState::from_fn(n, |u| [a * u.cos(), a * u.sin() * u.cos()])
            }
            Preset::FourierPerturbedCircle => {
                let r = positive("r")?;
                let m = count("m", 0.0)?;
                let w = count("w", 1.0)?;
                let eps = get("eps");
                if eps.abs() >= r {
                    return Err(Error::BadParams(format!(
                        "|eps| = {} must stay below r = {r} for an immersed curve",
                        eps.abs()
                    )));
                }
                CurveState::from_fn(n, |u| {
                    let rho = r + eps * (m * u).cos();
                    [rho * (w * u).cos(), rho * (w * u).sin()]
                })
            }
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.id() == s)
            .ok_or_else(|| Error::UnknownPreset(s.to_string()))
    }
}

/// Sample a preset by name.
pub fn preset_curve(name: &str, params: &ParamMap, n: usize) -> Result<CurveState> {
    name.parse::<Preset>()?.sample(params, n)
}

/// A parsed `id:key=value,...` string. The key `n` selects the sample count.
#[derive(Debug, Clone, PartialEq)]
pub struct PresetSpec {
    pub preset: Preset,
    pub params: ParamMap,
    pub n: Option<usize>,
}

impl PresetSpec {
    pub fn samples(&self) -> usize {
        self.n.unwrap_or_else(|| self.preset.default_samples())
    }

    pub fn build(&self) -> Result<CurveState> {
        self.preset.sample(&self.params, self.samples())
    }
}

impl FromStr for PresetSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (id, rest) = s.split_once(':').unwrap_or((s, ""));
        let preset: Preset = id.trim().parse()?;
        let mut params = ParamMap::new();
        let mut n = None;
        for item in rest.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::BadParams(format!("expected key=value, got `{item}`")))?;
            let value: f64 = value.trim().parse().map_err(|_| {
                Error::BadParams(format!("`{key}` has non-numeric value `{value}`"))
            })?;
            if key.trim() == "n" {
                if value.fract() != 0.0 || value < 0.0 {
                    return Err(Error::BadParams(format!(
                        "n must be a positive integer, got {value}"
                    )));
                }
                n = Some(value as usize);
            } else {
                params.insert(key.trim().to_string(), value);
            }
        }
        Ok(Self { preset, params, n })
    }
}

impl fmt::Display for PresetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.preset)?;
        let mut items: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        if let Some(n) = self.n {
            items.push(format!("n={n}"));
        }
        if !items.is_empty() {
            write!(f, ":{}", items.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::build_geometry;

    fn params(items: &[(&str, f64)]) -> ParamMap {
        items.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn circle_points_lie_on_unit_circle() {
        let c = preset_curve("circle", &params(&[("r", 1.0)]), 128).unwrap();
        assert_eq!(c.n_samples(), 128);
        assert!(c
            .points()
            .iter()
            .all(|p| (p[0].hypot(p[1]) - 1.0).abs() < 1e-15));
    }

    #[test]
    fn winding_numbers_of_presets() {
        let cases = [
            ("lemniscate", params(&[("a", 1.0)]), 0),
            ("omega_circle", params(&[("w", 3.0)]), 3),
            ("limacon", params(&[("a", 2.0), ("b", 1.0)]), 2),
            ("limacon", params(&[("a", 0.5), ("b", 1.0)]), 1),
            (
                "fourier_perturbed_circle",
                params(&[("w", 2.0), ("m", 3.0), ("eps", 0.01)]),
                2,
            ),
        ];
        for (name, p, w) in cases {
            let g = build_geometry(&preset_curve(name, &p, 256).unwrap()).unwrap();
            assert_eq!(crate::winding_number(&g).unwrap(), w, "{name}");
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(
            preset_curve("spiral", &ParamMap::new(), 64),
            Err(Error::UnknownPreset(_))
        ));
        assert!(matches!(
            preset_curve("circle", &params(&[("r", -1.0)]), 64),
            Err(Error::BadParams(_))
        ));
        assert!(matches!(
            preset_curve("fourier_perturbed_circle", &params(&[("eps", 1.5)]), 64),
            Err(Error::BadParams(_))
        ));
        assert!(matches!(
            preset_curve("circle", &params(&[("q", 1.0)]), 64),
            Err(Error::BadParams(_))
        ));
        assert!(matches!(
            preset_curve("omega_circle", &params(&[("w", 1.5)]), 64),
            Err(Error::BadParams(_))
        ));
        assert!(matches!(
            preset_curve("limacon", &params(&[("a", 1.0), ("b", 1.0)]), 64),
            Err(Error::BadParams(_))
        ));
    }

    #[test]
    fn spec_strings_round_trip() {
        let s: PresetSpec = "fourier_perturbed_circle:r=1,m=3,eps=0.05,n=256"
            .parse()
            .unwrap();
        assert_eq!(s.preset, Preset::FourierPerturbedCircle);
        assert_eq!(s.samples(), 256);
        assert_eq!(s.params["m"], 3.0);
        let again: PresetSpec = s.to_string().parse().unwrap();
        assert_eq!(again, s);
        let bare: PresetSpec = "lemniscate".parse().unwrap();
        assert_eq!(bare.samples(), 256);
        assert!("circle:r".parse::<PresetSpec>().is_err());
        assert!("circle:r=x".parse::<PresetSpec>().is_err());
    }
}
