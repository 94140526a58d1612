//! Scenario documents.
//!
//! A scenario is a TOML document with a strict schema: unknown keys are
//! rejected and every dimensional quantity is written as a table
//! `{ value = <number>, unit = "<tag>" }` with an explicit unit tag. See
//! `presets/paper_s3.toml` for a commented example.

use std::f64::consts::PI;
use std::path::Path;

use num_complex::Complex64;
use pdc_core::units::{self, DetuningUnit, IntensityConvention};
use pdc_core::{
    FrequencyPair, GainOptions64, LabInputs64, MatrixElementModel64, PumpConfig64,
    SidebandComponent, SuperpositionState64, TransitionSpec64,
};
use serde::Deserialize;
use toml::Spanned;

use crate::error::{Result, ScanError};

pub const PRESETS: [(&str, &str); 3] = [
    ("paper_s3", include_str!("../presets/paper_s3.toml")),
    (
        "resonant_symmetric",
        include_str!("../presets/resonant_symmetric.toml"),
    ),
    ("weak_pump", include_str!("../presets/weak_pump.toml")),
];

pub fn preset(name: &str) -> Option<&'static str> {
    PRESETS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
}

/// Reads a scenario from a preset name or a file path.
pub fn load_scenario(name_or_path: &str) -> Result<Scenario> {
    if let Some(text) = preset(name_or_path) {
        return parse_scenario(text);
    }
    let path = Path::new(name_or_path);
    let text = std::fs::read_to_string(path).map_err(|e| ScanError::io(path, e))?;
    parse_scenario(&text)
}

const REQUIRED_KEYS: [&str; 13] = [
    "transition.wavelength",
    "transition.dipole",
    "transition.orbit_radius",
    "transition.density",
    "pump.intensity",
    "pump.detuning",
    "state.theta",
    "state.phi",
    "matrix_element.model",
    "signal_grid.start",
    "signal_grid.stop",
    "signal_grid.count",
    "components",
];

/// A frequency written either in rad/s or as a multiple of ω_p.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FrequencySpec {
    Absolute(f64),
    FractionOfPump(f64),
}

impl FrequencySpec {
    pub fn resolve(self, omega_p: f64) -> f64 {
        match self {
            Self::Absolute(w) => w,
            Self::FractionOfPump(f) => f * omega_p,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignalGrid {
    pub start: FrequencySpec,
    pub stop: FrequencySpec,
    pub count: usize,
    pub allow_degenerate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntensitySweep {
    /// W/cm².
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub spacing: Spacing,
    pub signal: FrequencySpec,
}

impl IntensitySweep {
    pub fn grid(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|k| {
                let t = k as f64 / (n - 1) as f64;
                match self.spacing {
                    Spacing::Linear => self.start + t * (self.stop - self.start),
                    Spacing::Log => (self.start.ln() + t * (self.stop / self.start).ln()).exp(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropagationSettings {
    /// cm.
    pub cell_length: f64,
    pub signal: FrequencySpec,
    pub seed_signal: Complex64,
    pub seed_idler: Complex64,
    /// Samples kept in emitted traces.
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub notes: Vec<String>,
    pub transition: TransitionSpec64,
    pub lab: LabInputs64,
    /// rad.
    pub theta: f64,
    pub phi: f64,
    pub matrix_model: MatrixElementModel64,
    pub signal_grid: SignalGrid,
    pub components: Vec<SidebandComponent>,
    pub propagation: PropagationSettings,
    pub intensity_sweep: IntensitySweep,
    pub intensity_convention: IntensityConvention,
    pub gain_options: GainOptions64,
}

impl Scenario {
    /// Δ in rad/s.
    pub fn detuning(&self) -> f64 {
        self.lab.detuning()
    }

    pub fn field(&self) -> Result<f64> {
        Ok(self.lab.field_amplitude(self.intensity_convention)?)
    }

    pub fn pump(&self) -> Result<PumpConfig64> {
        Ok(PumpConfig64::detuned(
            &self.transition,
            self.detuning(),
            self.field()?,
        )?)
    }

    pub fn pump_at_intensity(&self, watts_per_cm2: f64) -> Result<PumpConfig64> {
        let field =
            units::intensity_to_field_amplitude_with(watts_per_cm2, self.intensity_convention)?;
        Ok(PumpConfig64::detuned(
            &self.transition,
            self.detuning(),
            field,
        )?)
    }

    pub fn pump_at_rabi(&self, rabi: f64) -> Result<PumpConfig64> {
        Ok(PumpConfig64::with_rabi(
            &self.transition,
            self.detuning(),
            rabi,
        )?)
    }

    pub fn state(&self) -> SuperpositionState64 {
        SuperpositionState64::from_angles(self.theta, self.phi)
    }

    /// Same scenario with the detuning's numeric value reinterpreted under `unit`.
    pub fn with_detuning_unit(&self, unit: DetuningUnit) -> Self {
        let mut s = self.clone();
        s.lab.detuning_unit = unit;
        s
    }

    /// Signal grid in rad/s. When a point falls on the degeneracy ω_s = ω_i of
    /// any selected component, the whole grid moves by half a step unless
    /// degenerate points are explicitly allowed.
    pub fn signal_values(&self, pump: &PumpConfig64) -> Vec<f64> {
        let g = &self.signal_grid;
        let start = g.start.resolve(pump.omega_p);
        let stop = g.stop.resolve(pump.omega_p);
        let step = (stop - start) / (g.count - 1) as f64;
        let mut values: Vec<f64> = (0..g.count).map(|k| start + step * k as f64).collect();
        if !g.allow_degenerate {
            let hits = values.iter().any(|&w| {
                self.components.iter().any(|c| {
                    let idler = c.sum_target(pump.omega_p, pump.rabi) - w;
                    FrequencyPair {
                        omega_s: w,
                        omega_i: idler,
                    }
                    .is_degenerate(pump.omega_p)
                        || (w - idler).abs() <= 1e-9 * pump.omega_p
                })
            });
            if hits {
                values.iter_mut().for_each(|w| *w += step / 2.0);
            }
        }
        values
    }
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

fn err_at(
    text: &str,
    key: &str,
    span: std::ops::Range<usize>,
    msg: impl std::fmt::Display,
) -> ScanError {
    ScanError::Scenario(format!("{key} (line {}): {msg}", line_of(text, span.start)))
}

type Quantity = Spanned<toml::Value>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    name: Option<String>,
    #[serde(default)]
    notes: Vec<String>,
    transition: RawTransition,
    pump: RawPump,
    state: RawState,
    matrix_element: RawMatrix,
    signal_grid: RawGrid,
    components: Spanned<Vec<String>>,
    propagation: Option<RawPropagation>,
    intensity_sweep: Option<RawIntensitySweep>,
    options: Option<RawOptions>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTransition {
    wavelength: Quantity,
    dipole: Quantity,
    orbit_radius: Quantity,
    density: Quantity,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPump {
    intensity: Quantity,
    detuning: Quantity,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawState {
    theta: Quantity,
    phi: Quantity,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMatrix {
    model: Spanned<String>,
    value: Option<Spanned<f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    start: Quantity,
    stop: Quantity,
    count: Spanned<i64>,
    allow_degenerate: Option<bool>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPropagation {
    cell_length: Quantity,
    signal: Quantity,
    seed_signal: Option<[f64; 2]>,
    seed_idler: Option<[f64; 2]>,
    samples: Option<Spanned<i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIntensitySweep {
    start: Quantity,
    stop: Quantity,
    count: Spanned<i64>,
    spacing: Option<Spanned<String>>,
    signal: Quantity,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    intensity_convention: Option<Spanned<String>>,
    red_alt_form: Option<bool>,
    sum_rule_tolerance: Option<f64>,
}

/// Reads `{ value, unit }` and returns the value scaled by the factor of its unit tag.
fn quantity<'u>(
    text: &str,
    key: &str,
    q: &Quantity,
    units: &[(&'u str, f64)],
) -> Result<(f64, &'u str)> {
    let span = q.span();
    let allowed = units.iter().map(|(u, _)| *u).collect::<Vec<_>>().join(", ");
    let table = match q.get_ref() {
        toml::Value::Table(t) => t,
        _ => {
            return Err(err_at(
                text,
                key,
                span,
                format!("missing unit tag; write {{ value = ..., unit = \"...\" }} with unit one of {allowed}"),
            ))
        }
    };
    if let Some(extra) = table.keys().find(|k| *k != "value" && *k != "unit") {
        return Err(err_at(text, key, span, format!("unknown key '{extra}'")));
    }
    let value = match table.get("value") {
        Some(toml::Value::Float(v)) => *v,
        Some(toml::Value::Integer(v)) => *v as f64,
        Some(_) => return Err(err_at(text, key, span, "value must be a number")),
        None => return Err(err_at(text, key, span, "missing 'value'")),
    };
    let unit = match table.get("unit") {
        Some(toml::Value::String(u)) => u.as_str(),
        Some(_) => return Err(err_at(text, key, span, "unit must be a string")),
        None => {
            return Err(err_at(
                text,
                key,
                span,
                format!("missing unit tag (expected one of {allowed})"),
            ))
        }
    };
    if !value.is_finite() {
        return Err(err_at(text, key, span, "value must be finite"));
    }
    match units.iter().find(|(u, _)| *u == unit) {
        Some((tag, factor)) => Ok((value * factor, tag)),
        None => Err(err_at(
            text,
            key,
            span,
            format!("unit '{unit}' not accepted here (expected one of {allowed})"),
        )),
    }
}

fn positive(text: &str, key: &str, q: &Quantity, units: &[(&str, f64)]) -> Result<f64> {
    let (v, _) = quantity(text, key, q, units)?;
    if !(v > 0.0) {
        return Err(err_at(
            text,
            key,
            q.span(),
            format!("must be positive, got {v}"),
        ));
    }
    Ok(v)
}

const FREQUENCY_UNITS: [(&str, f64); 2] = [("omega_p", 1.0), ("rad/s", 1.0)];
const ANGLE_UNITS: [(&str, f64); 2] = [("rad", 1.0), ("deg", PI / 180.0)];

fn frequency(text: &str, key: &str, q: &Quantity) -> Result<FrequencySpec> {
    let (v, unit) = quantity(text, key, q, &FREQUENCY_UNITS)?;
    if !(v > 0.0) {
        return Err(err_at(
            text,
            key,
            q.span(),
            format!("must be positive, got {v}"),
        ));
    }
    Ok(match unit {
        "omega_p" => FrequencySpec::FractionOfPump(v),
        _ => FrequencySpec::Absolute(v),
    })
}

fn count(text: &str, key: &str, c: &Spanned<i64>, min: i64) -> Result<usize> {
    if *c.get_ref() < min {
        return Err(err_at(
            text,
            key,
            c.span(),
            format!("must be at least {min}, got {}", c.get_ref()),
        ));
    }
    Ok(*c.get_ref() as usize)
}

fn missing_keys(table: &toml::Table) -> Vec<&'static str> {
    REQUIRED_KEYS
        .iter()
        .copied()
        .filter(|path| {
            let mut node: Option<&toml::Value> = None;
            for (k, part) in path.split('.').enumerate() {
                node = if k == 0 {
                    table.get(part)
                } else {
                    node.and_then(|n| n.as_table()).and_then(|t| t.get(part))
                };
            }
            node.is_none()
        })
        .collect()
}

/// Parses and validates a scenario document.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let table: toml::Table = text
        .parse()
        .map_err(|e: toml::de::Error| ScanError::Scenario(e.to_string()))?;
    let missing = missing_keys(&table);
    if !missing.is_empty() {
        return Err(ScanError::Scenario(format!(
            "missing required keys: {}",
            missing.join(", ")
        )));
    }
    let raw: RawScenario = toml::from_str(text).map_err(|e| ScanError::Scenario(e.to_string()))?;

    let t = &raw.transition;
    let wavelength = positive(
        text,
        "transition.wavelength",
        &t.wavelength,
        &[("cm", 1.0), ("um", 1e-4), ("nm", 1e-7)],
    )?;
    let dipole = positive(
        text,
        "transition.dipole",
        &t.dipole,
        &[("statC*cm", 1.0), ("D", 1e-18)],
    )?;
    let rho = positive(
        text,
        "transition.orbit_radius",
        &t.orbit_radius,
        &[("cm", 1.0), ("angstrom", 1e-8), ("nm", 1e-7)],
    )?;
    let density = positive(text, "transition.density", &t.density, &[("cm^-3", 1.0)])?;
    let omega0 = units::wavelength_to_angular_frequency(wavelength)?;
    let transition = TransitionSpec64::new(omega0, dipole, rho, density)
        .map_err(|e| err_at(text, "transition", t.wavelength.span(), e))?;

    let (intensity, _) = quantity(
        text,
        "pump.intensity",
        &raw.pump.intensity,
        &[("W/cm^2", 1.0)],
    )?;
    if intensity < 0.0 {
        return Err(err_at(
            text,
            "pump.intensity",
            raw.pump.intensity.span(),
            "must be non-negative",
        ));
    }
    let (detuning, tag) = quantity(
        text,
        "pump.detuning",
        &raw.pump.detuning,
        &[
            ("Hz", 1.0),
            ("kHz", 1e3),
            ("MHz", 1e6),
            ("GHz", 1e9),
            ("rad/s", 1.0),
        ],
    )?;
    let detuning_unit = if tag == "rad/s" {
        DetuningUnit::RadPerSecond
    } else {
        DetuningUnit::Hz
    };
    if detuning == 0.0 {
        return Err(err_at(
            text,
            "pump.detuning",
            raw.pump.detuning.span(),
            "must be nonzero",
        ));
    }
    let lab = LabInputs64::new(Some(wavelength), intensity, detuning, detuning_unit)?;

    let (theta, _) = quantity(text, "state.theta", &raw.state.theta, &ANGLE_UNITS)?;
    let (phi, _) = quantity(text, "state.phi", &raw.state.phi, &ANGLE_UNITS)?;

    let m = &raw.matrix_element;
    let matrix_model = match m.model.get_ref().as_str() {
        "small-argument" => {
            if let Some(v) = &m.value {
                return Err(err_at(
                    text,
                    "matrix_element.value",
                    v.span(),
                    "only used with model = \"user-supplied\"",
                ));
            }
            MatrixElementModel64::small_argument(rho)?
        }
        "user-supplied" => {
            let v = m.value.as_ref().ok_or_else(|| {
                err_at(
                    text,
                    "matrix_element.value",
                    m.model.span(),
                    "required for model = \"user-supplied\"",
                )
            })?;
            MatrixElementModel64::user_supplied(*v.get_ref())
                .map_err(|e| err_at(text, "matrix_element.value", v.span(), e))?
        }
        other => {
            return Err(err_at(
                text,
                "matrix_element.model",
                m.model.span(),
                format!("unknown model '{other}' (expected small-argument or user-supplied)"),
            ))
        }
    };

    let g = &raw.signal_grid;
    let signal_grid = SignalGrid {
        start: frequency(text, "signal_grid.start", &g.start)?,
        stop: frequency(text, "signal_grid.stop", &g.stop)?,
        count: count(text, "signal_grid.count", &g.count, 2)?,
        allow_degenerate: g.allow_degenerate.unwrap_or(false),
    };
    // ordering is checked against a nominal ω_p; absolute and relative bounds can mix
    let nominal_wp = omega0 + lab.detuning();
    if !(signal_grid.start.resolve(nominal_wp) < signal_grid.stop.resolve(nominal_wp)) {
        return Err(err_at(
            text,
            "signal_grid",
            g.start.span(),
            "start must be below stop",
        ));
    }

    let mut components = Vec::new();
    for name in raw.components.get_ref() {
        let c: SidebandComponent = name
            .parse()
            .map_err(|e: String| err_at(text, "components", raw.components.span(), e))?;
        if !components.contains(&c) {
            components.push(c);
        }
    }
    if components.is_empty() {
        return Err(err_at(
            text,
            "components",
            raw.components.span(),
            "select at least one component",
        ));
    }
    components.sort();

    let propagation = match &raw.propagation {
        Some(p) => {
            let seed = |v: Option<[f64; 2]>, default: Complex64| {
                v.map(|[re, im]| Complex64::new(re, im)).unwrap_or(default)
            };
            PropagationSettings {
                cell_length: positive(
                    text,
                    "propagation.cell_length",
                    &p.cell_length,
                    &[("cm", 1.0), ("m", 100.0)],
                )?,
                signal: frequency(text, "propagation.signal", &p.signal)?,
                seed_signal: seed(p.seed_signal, Complex64::new(1.0, 0.0)),
                seed_idler: seed(p.seed_idler, Complex64::new(0.0, 0.0)),
                samples: match &p.samples {
                    Some(s) => count(text, "propagation.samples", s, 2)?,
                    None => 1001,
                },
            }
        }
        None => PropagationSettings {
            cell_length: 1e3,
            signal: FrequencySpec::FractionOfPump(0.45),
            seed_signal: Complex64::new(1.0, 0.0),
            seed_idler: Complex64::new(0.0, 0.0),
            samples: 1001,
        },
    };

    let intensity_sweep = match &raw.intensity_sweep {
        Some(s) => {
            let spacing = match s.spacing.as_ref().map(|v| v.get_ref().as_str()) {
                None | Some("log") => Spacing::Log,
                Some("linear") => Spacing::Linear,
                Some(other) => {
                    return Err(err_at(
                        text,
                        "intensity_sweep.spacing",
                        s.spacing.as_ref().unwrap().span(),
                        format!("unknown spacing '{other}' (expected log or linear)"),
                    ))
                }
            };
            let (start, _) = quantity(text, "intensity_sweep.start", &s.start, &[("W/cm^2", 1.0)])?;
            let (stop, _) = quantity(text, "intensity_sweep.stop", &s.stop, &[("W/cm^2", 1.0)])?;
            let bad_start = start < 0.0 || (spacing == Spacing::Log && start <= 0.0);
            if bad_start || !(start < stop) {
                return Err(err_at(
                    text,
                    "intensity_sweep",
                    s.start.span(),
                    "need 0 <= start < stop (start > 0 for log spacing)",
                ));
            }
            IntensitySweep {
                start,
                stop,
                count: count(text, "intensity_sweep.count", &s.count, 2)?,
                spacing,
                signal: frequency(text, "intensity_sweep.signal", &s.signal)?,
            }
        }
        None => IntensitySweep {
            start: 1e-1,
            stop: 1e10,
            count: 45,
            spacing: Spacing::Log,
            signal: FrequencySpec::FractionOfPump(0.45),
        },
    };

    let mut gain_options = GainOptions64::default();
    let mut intensity_convention = IntensityConvention::default();
    if let Some(o) = &raw.options {
        if let Some(conv) = &o.intensity_convention {
            intensity_convention = match conv.get_ref().as_str() {
                "time-averaged-real" => IntensityConvention::TimeAveragedReal,
                "complex-envelope" => IntensityConvention::ComplexEnvelope,
                other => {
                    return Err(err_at(
                        text,
                        "options.intensity_convention",
                        conv.span(),
                        format!("unknown convention '{other}' (expected time-averaged-real or complex-envelope)"),
                    ))
                }
            };
        }
        if let Some(alt) = o.red_alt_form {
            gain_options.red_alt_form = alt;
        }
        if let Some(tol) = o.sum_rule_tolerance {
            if !(tol > 0.0) {
                return Err(ScanError::Scenario(
                    "options.sum_rule_tolerance: must be positive".into(),
                ));
            }
            gain_options.sum_rule_tolerance = tol;
        }
    }

    Ok(Scenario {
        name: raw.name.unwrap_or_else(|| "unnamed".into()),
        notes: raw.notes,
        transition,
        lab,
        theta,
        phi,
        matrix_model,
        signal_grid,
        components,
        propagation,
        intensity_sweep,
        intensity_convention,
        gain_options,
    })
}
