//! Grid evaluation of the three gain coefficients.
//!
//! Points are evaluated in parallel and assembled in grid order, so the
//! result never depends on scheduling.

use std::collections::BTreeMap;

use pdc_core::gain::gain;
use pdc_core::{
    Flag, FrequencyPair, GainPoint64, PumpConfig64, SidebandComponent, SuperpositionState64,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, ScanError};
use crate::scenario::Scenario;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: String,
    pub unit: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub component: SidebandComponent,
    pub unit: String,
    /// `None` where the point could not be evaluated (see the flags).
    pub values: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub name: String,
    pub value: Option<f64>,
    pub unit: String,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub schema_version: u32,
    pub kind: String,
    pub scenario: String,
    pub axis: Axis,
    /// Extra per-point columns sharing the main axis (e.g. the intensity behind each Ω).
    #[serde(default)]
    pub aux_axes: Vec<Axis>,
    pub series: Vec<Series>,
    /// Per grid index, tokens of the form `component:flag`.
    pub flags: Vec<Vec<String>>,
    #[serde(default)]
    pub diagnostics: Vec<Diagnostic>,
    /// Unit and model choices in force for this run.
    pub interpretation: BTreeMap<String, String>,
}

impl SweepResult {
    pub fn len(&self) -> usize {
        self.axis.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axis.values.is_empty()
    }

    pub fn series(&self, component: SidebandComponent) -> Option<&Series> {
        self.series.iter().find(|s| s.component == component)
    }

    pub fn diagnostic(&self, name: &str) -> Option<f64> {
        self.diagnostics
            .iter()
            .find(|d| d.name == name)
            .and_then(|d| d.value)
    }

    /// Checks the length invariants; used before emission and after parsing.
    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        if n == 0 {
            return Err(ScanError::Scenario("sweep result has an empty axis".into()));
        }
        let bad = self.flags.len() != n
            || self.series.iter().any(|s| s.values.len() != n)
            || self.aux_axes.iter().any(|a| a.values.len() != n);
        if bad {
            return Err(ScanError::Scenario(format!(
                "sweep result arrays do not match the axis length {n}"
            )));
        }
        Ok(())
    }
}

/// Coefficient at one point with the idler completing the component's sum rule.
pub fn evaluate(
    scenario: &Scenario,
    component: SidebandComponent,
    pump: &PumpConfig64,
    state: &SuperpositionState64,
    omega_s: f64,
) -> pdc_core::Result<GainPoint64> {
    let pair = FrequencyPair::matched(component, pump.omega_p, pump.rabi, omega_s)?;
    gain(
        component,
        &scenario.transition,
        pump,
        state,
        &pair,
        &scenario.matrix_model,
        &scenario.gain_options,
    )
}

pub(crate) fn interpretation(scenario: &Scenario) -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    m.insert(
        "detuning".into(),
        format!(
            "{} {} -> {} rad/s",
            scenario.lab.detuning_value,
            scenario.lab.detuning_unit.label(),
            scenario.detuning()
        ),
    );
    m.insert(
        "intensity_convention".into(),
        scenario.intensity_convention.label().into(),
    );
    m.insert(
        "density".into(),
        format!("{} cm^-3", scenario.transition.density),
    );
    m.insert(
        "red_form".into(),
        if scenario.gain_options.red_alt_form {
            "Omega'"
        } else {
            "Omega"
        }
        .into(),
    );
    m.insert(
        "matrix_element".into(),
        match scenario.matrix_model {
            pdc_core::MatrixElementModel::SmallArgument { rho_bar } => {
                format!("small-argument, rho = {rho_bar} cm")
            }
            pdc_core::MatrixElementModel::UserSupplied { value } => {
                format!("user-supplied {value}")
            }
        },
    );
    m.insert("theta".into(), format!("{} rad", scenario.theta));
    m.insert("phi".into(), format!("{} rad", scenario.phi));
    m
}

/// Evaluates every selected component at every index. `point(k)` gives the
/// pump, state and signal frequency of index `k`.
fn evaluate_grid<F>(scenario: &Scenario, n: usize, point: F) -> (Vec<Series>, Vec<Vec<String>>)
where
    F: Fn(usize) -> pdc_core::Result<(PumpConfig64, SuperpositionState64, f64)> + Sync,
{
    let rows: Vec<Vec<(Option<f64>, Vec<Flag>)>> = (0..n)
        .into_par_iter()
        .map(|k| {
            scenario
                .components
                .iter()
                .map(|&c| {
                    let outcome = point(k)
                        .and_then(|(pump, state, ws)| evaluate(scenario, c, &pump, &state, ws));
                    match outcome {
                        Ok(g) => (Some(g.coefficient), g.flags),
                        Err(_) => (None, vec![Flag::Unevaluated]),
                    }
                })
                .collect()
        })
        .collect();

    let series = scenario
        .components
        .iter()
        .enumerate()
        .map(|(j, &c)| Series {
            component: c,
            unit: "cm^-1".into(),
            values: rows.iter().map(|r| r[j].0).collect(),
        })
        .collect();
    let flags = rows
        .iter()
        .map(|r| {
            scenario
                .components
                .iter()
                .zip(r)
                .flat_map(|(c, (_, fl))| {
                    fl.iter()
                        .map(move |f| format!("{}:{}", c.name(), f.token()))
                })
                .collect()
        })
        .collect();
    (series, flags)
}

/// Coefficients over the scenario's signal grid; axis ω_s.
pub fn run_spectrum(scenario: &Scenario) -> Result<SweepResult> {
    let pump = scenario.pump()?;
    let state = scenario.state();
    let grid = scenario.signal_values(&pump);
    let (series, flags) = evaluate_grid(scenario, grid.len(), |k| Ok((pump, state, grid[k])));
    Ok(SweepResult {
        schema_version: SCHEMA_VERSION,
        kind: "spectrum".into(),
        scenario: scenario.name.clone(),
        axis: Axis {
            name: "omega_s".into(),
            unit: "rad/s".into(),
            values: grid,
        },
        aux_axes: Vec::new(),
        series,
        flags,
        diagnostics: Vec::new(),
        interpretation: interpretation(scenario),
    })
}

/// α₀(Ω = 100|Δ|)/α₀(Ω = 10|Δ|) with the population fully in |Ψ₊⟩.
pub fn saturation_ratio(scenario: &Scenario, omega_s: f64) -> pdc_core::Result<f64> {
    let state = SuperpositionState64::from_angles(0.0, 0.0);
    let d = scenario.detuning().abs();
    let at = |rabi: f64| -> pdc_core::Result<f64> {
        let pump = scenario.pump_at_rabi(rabi).map_err(physics)?;
        Ok(evaluate(
            scenario,
            SidebandComponent::Ordinary,
            &pump,
            &state,
            omega_s,
        )?
        .coefficient)
    };
    Ok(at(100.0 * d)? / at(10.0 * d)?)
}

/// α(2Ω₀)/α(Ω₀) at Ω₀ = 10³|Δ| for a balanced superposition.
pub fn doubling_ratio(
    scenario: &Scenario,
    component: SidebandComponent,
    omega_s: f64,
) -> pdc_core::Result<f64> {
    let state = SuperpositionState64::from_angles(std::f64::consts::FRAC_PI_4, scenario.phi);
    let base = 1e3 * scenario.detuning().abs();
    let at = |rabi: f64| -> pdc_core::Result<f64> {
        let pump = scenario.pump_at_rabi(rabi).map_err(physics)?;
        Ok(evaluate(scenario, component, &pump, &state, omega_s)?.coefficient)
    };
    Ok(at(2.0 * base)? / at(base)?)
}

fn physics(e: ScanError) -> pdc_core::Error {
    match e {
        ScanError::Physics(p) => p,
        other => pdc_core::Error::Domain(other.to_string()),
    }
}

/// Coefficients against pump intensity at a fixed signal frequency; axis Ω.
pub fn run_intensity_sweep(scenario: &Scenario) -> Result<SweepResult> {
    let sweep = &scenario.intensity_sweep;
    let intensities = sweep.grid();
    let state = scenario.state();
    let pumps: Vec<PumpConfig64> = intensities
        .iter()
        .map(|&i| scenario.pump_at_intensity(i))
        .collect::<Result<_>>()?;
    let omega_s = sweep.signal.resolve(pumps[0].omega_p);
    let (series, flags) = evaluate_grid(scenario, pumps.len(), |k| Ok((pumps[k], state, omega_s)));

    let mut diagnostics = vec![Diagnostic {
        name: "ordinary_saturation_ratio".into(),
        value: saturation_ratio(scenario, omega_s).ok(),
        unit: "1".into(),
        note: "alpha_0(Omega = 100|Delta|) / alpha_0(Omega = 10|Delta|), state (1, 0)".into(),
    }];
    for c in [SidebandComponent::Blue, SidebandComponent::Red] {
        diagnostics.push(Diagnostic {
            name: format!("{}_doubling_ratio", c.name()),
            value: doubling_ratio(scenario, c, omega_s).ok(),
            unit: "1".into(),
            note: "alpha(2 Omega_0) / alpha(Omega_0), Omega_0 = 1e3 |Delta|, balanced state".into(),
        });
    }
    diagnostics.push(Diagnostic {
        name: "omega_s".into(),
        value: Some(omega_s),
        unit: "rad/s".into(),
        note: "fixed signal frequency; idler re-matched per component".into(),
    });

    Ok(SweepResult {
        schema_version: SCHEMA_VERSION,
        kind: "sweep-intensity".into(),
        scenario: scenario.name.clone(),
        axis: Axis {
            name: "rabi".into(),
            unit: "rad/s".into(),
            values: pumps.iter().map(|p| p.rabi).collect(),
        },
        aux_axes: vec![Axis {
            name: "intensity".into(),
            unit: "W/cm^2".into(),
            values: intensities,
        }],
        series,
        flags,
        diagnostics,
        interpretation: interpretation(scenario),
    })
}

/// Coefficients against θ ∈ [0, π/2] at the sweep signal frequency; axis θ.
pub fn run_angle_sweep(scenario: &Scenario, count: usize) -> Result<SweepResult> {
    if count < 2 {
        return Err(ScanError::Scenario(
            "angle sweep needs at least 2 points".into(),
        ));
    }
    let pump = scenario.pump()?;
    let omega_s = scenario.intensity_sweep.signal.resolve(pump.omega_p);
    let thetas: Vec<f64> = (0..count)
        .map(|k| std::f64::consts::FRAC_PI_2 * k as f64 / (count - 1) as f64)
        .collect();
    let (series, flags) = evaluate_grid(scenario, count, |k| {
        Ok((
            pump,
            SuperpositionState64::from_angles(thetas[k], scenario.phi),
            omega_s,
        ))
    });
    Ok(SweepResult {
        schema_version: SCHEMA_VERSION,
        kind: "sweep-angle".into(),
        scenario: scenario.name.clone(),
        axis: Axis {
            name: "theta".into(),
            unit: "rad".into(),
            values: thetas,
        },
        aux_axes: Vec::new(),
        series,
        flags,
        diagnostics: vec![Diagnostic {
            name: "omega_s".into(),
            value: Some(omega_s),
            unit: "rad/s".into(),
            note: "fixed signal frequency".into(),
        }],
        interpretation: interpretation(scenario),
    })
}

/// Coefficients against detuning (rad/s) at fixed field and signal fraction.
pub fn run_detuning_sweep(scenario: &Scenario, detunings: &[f64]) -> Result<SweepResult> {
    if detunings.len() < 2 {
        return Err(ScanError::Scenario(
            "detuning sweep needs at least 2 points".into(),
        ));
    }
    let field = scenario.field()?;
    let state = scenario.state();
    let nominal = scenario.pump()?;
    let frac = scenario.intensity_sweep.signal.resolve(nominal.omega_p) / nominal.omega_p;
    let (series, flags) = evaluate_grid(scenario, detunings.len(), |k| {
        let pump = PumpConfig64::detuned(&scenario.transition, detunings[k], field)?;
        Ok((pump, state, frac * pump.omega_p))
    });
    Ok(SweepResult {
        schema_version: SCHEMA_VERSION,
        kind: "sweep-detuning".into(),
        scenario: scenario.name.clone(),
        axis: Axis {
            name: "detuning".into(),
            unit: "rad/s".into(),
            values: detunings.to_vec(),
        },
        aux_axes: Vec::new(),
        series,
        flags,
        diagnostics: vec![Diagnostic {
            name: "signal_fraction".into(),
            value: Some(frac),
            unit: "omega_p".into(),
            note: "omega_s as a fraction of each point's pump frequency".into(),
        }],
        interpretation: interpretation(scenario),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{load_scenario, FrequencySpec};

    #[test]
    fn spectrum_lengths_and_order() {
        let s = load_scenario("paper_s3").unwrap();
        let r = run_spectrum(&s).unwrap();
        r.validate().unwrap();
        assert_eq!(r.len(), 181);
        assert_eq!(r.series.len(), 3);
        assert!(r.axis.values.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn symmetric_grid_gives_symmetric_ordinary() {
        let mut s = load_scenario("paper_s3").unwrap();
        s.components = vec![SidebandComponent::Ordinary];
        s.theta = 0.3;
        s.signal_grid.count = 100;
        let r = run_spectrum(&s).unwrap();
        let v: Vec<f64> = r.series[0].values.iter().map(|v| v.unwrap()).collect();
        for k in 0..v.len() {
            let j = v.len() - 1 - k;
            assert!(
                (v[k] - v[j]).abs() <= 1e-9 * v[k],
                "{k}: {} vs {}",
                v[k],
                v[j]
            );
        }
    }

    #[test]
    fn pure_state_has_no_sidebands() {
        let mut s = load_scenario("paper_s3").unwrap();
        s.theta = 0.0;
        let r = run_spectrum(&s).unwrap();
        for c in [SidebandComponent::Blue, SidebandComponent::Red] {
            assert!(r.series(c).unwrap().values.iter().all(|v| *v == Some(0.0)));
        }
        assert!(r
            .series(SidebandComponent::Ordinary)
            .unwrap()
            .values
            .iter()
            .all(|v| v.unwrap() > 0.0));
    }

    #[test]
    fn unevaluable_points_are_flagged_not_dropped() {
        let mut s = load_scenario("paper_s3").unwrap();
        s.signal_grid.stop = FrequencySpec::FractionOfPump(1.2);
        let r = run_spectrum(&s).unwrap();
        assert_eq!(r.len(), s.signal_grid.count);
        let last = r.len() - 1;
        assert_eq!(r.series[0].values[last], None);
        assert!(r.flags[last].iter().any(|f| f.ends_with(":unevaluated")));
    }

    #[test]
    fn zero_intensity_gives_zero() {
        let mut s = load_scenario("paper_s3").unwrap();
        s.intensity_sweep.start = 0.0;
        s.intensity_sweep.spacing = crate::scenario::Spacing::Linear;
        s.intensity_sweep.stop = 1e3;
        s.intensity_sweep.count = 3;
        let r = run_intensity_sweep(&s).unwrap();
        assert_eq!(r.axis.values[0], 0.0);
        for series in &r.series {
            assert_eq!(series.values[0], Some(0.0), "{}", series.component);
        }
    }

    #[test]
    fn intensity_sweep_diagnostics() {
        let s = load_scenario("paper_s3").unwrap();
        let r = run_intensity_sweep(&s).unwrap();
        r.validate().unwrap();
        let sat = r.diagnostic("ordinary_saturation_ratio").unwrap();
        assert!((1.0..=1.01).contains(&sat), "{sat}");
        for name in ["blue_doubling_ratio", "red_doubling_ratio"] {
            let v = r.diagnostic(name).unwrap();
            assert!((1.9..=2.1).contains(&v), "{name}: {v}");
        }
    }

    #[test]
    fn angle_sweep_peaks_at_balance() {
        let s = load_scenario("paper_s3").unwrap();
        let r = run_angle_sweep(&s, 181).unwrap();
        for c in [SidebandComponent::Blue, SidebandComponent::Red] {
            let v = &r.series(c).unwrap().values;
            let k = (0..v.len())
                .max_by(|&a, &b| v[a].unwrap().total_cmp(&v[b].unwrap()))
                .unwrap();
            assert!((r.axis.values[k] - std::f64::consts::FRAC_PI_4).abs() < 1e-2);
        }
    }

    #[test]
    fn detuning_sweep_runs() {
        let s = load_scenario("weak_pump").unwrap();
        let r = run_detuning_sweep(&s, &[1e9, 1e10, 1e11]).unwrap();
        r.validate().unwrap();
        assert!(r
            .series
            .iter()
            .all(|se| se.values.iter().all(|v| v.is_some())));
    }
}
