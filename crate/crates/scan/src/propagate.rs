//! Propagation runs: analytic exponential against the integrated coupled pair.

use num_complex::Complex64;
use pdc_core::propagation::{
    asymptotic_growth_rate, propagate_analytic, propagate_coupled, MAX_STEP_PRODUCT,
};
use pdc_core::{CoupledSystem64, PropagationTrace64, SidebandComponent, StepControl64};
use serde::{Deserialize, Serialize};

use crate::error::{Result, ScanError};
use crate::scenario::Scenario;
use crate::sweep::{evaluate, SCHEMA_VERSION};

pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropagationSummary {
    /// cm⁻¹; `None` when the trace never grows by e² over the cell.
    pub analytic_rate: Option<f64>,
    pub coupled_rate: Option<f64>,
    /// |coupled − analytic| / analytic.
    pub rate_discrepancy: Option<f64>,
    /// 20·log₁₀ of the amplitude ratio sqrt(|A_s|² + |A_i|²) between z = 0 and z = L.
    pub analytic_gain_db: Option<f64>,
    pub coupled_gain_db: Option<f64>,
    /// exp(α·L).
    pub analytic_factor: f64,
    /// max |(|A_s|² − |A_i|²) − initial| along the coupled trace.
    pub manley_rowe_drift: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropagationReport {
    pub schema_version: u32,
    pub scenario: String,
    pub component: SidebandComponent,
    /// rad/s.
    pub omega_s: f64,
    pub omega_i: f64,
    /// cm⁻¹.
    pub coefficient: f64,
    pub kappa_s: Complex64,
    pub kappa_i: Complex64,
    /// cm⁻¹.
    pub delta: f64,
    /// cm.
    pub cell_length: f64,
    pub step: f64,
    pub tolerance: f64,
    pub flags: Vec<String>,
    pub summary: PropagationSummary,
    /// Decimated samples, cm.
    pub z: Vec<f64>,
    pub analytic_signal: Vec<Complex64>,
    pub analytic_idler: Vec<Complex64>,
    pub coupled_signal: Vec<Complex64>,
    pub coupled_idler: Vec<Complex64>,
}

fn optional_rate(trace: &PropagationTrace64) -> Result<Option<f64>> {
    match asymptotic_growth_rate(trace) {
        Ok(r) => Ok(Some(r)),
        Err(pdc_core::Error::InsufficientGrowth(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// Indices of at most `samples` evenly spread points, always keeping both ends.
fn decimate(len: usize, samples: usize) -> Vec<usize> {
    if len <= samples {
        return (0..len).collect();
    }
    let mut idx: Vec<usize> = (0..samples)
        .map(|k| ((k as f64) * (len - 1) as f64 / (samples - 1) as f64).round() as usize)
        .collect();
    idx.dedup();
    idx
}

/// Step for a run: at most a 2000th of the cell and well inside the RK4 limit.
pub fn auto_step(system: &CoupledSystem64, cell_length: f64) -> f64 {
    let rate = system
        .kappa_s
        .norm()
        .max(system.kappa_i.norm())
        .max(system.delta.abs());
    let by_cell = cell_length / 2000.0;
    if rate > 0.0 {
        by_cell.min(0.5 * MAX_STEP_PRODUCT / rate)
    } else {
        by_cell
    }
}

pub fn run_propagation(
    scenario: &Scenario,
    component: SidebandComponent,
) -> Result<PropagationReport> {
    let settings = &scenario.propagation;
    if !(settings.cell_length > 0.0) {
        return Err(ScanError::Scenario(
            "propagation.cell_length must be positive".into(),
        ));
    }
    let pump = scenario.pump()?;
    let state = scenario.state();
    let omega_s = settings.signal.resolve(pump.omega_p);
    let point = evaluate(scenario, component, &pump, &state, omega_s)?;
    let system = CoupledSystem64::from_gain(&point, &state, &pump);

    let step = auto_step(&system, settings.cell_length);
    let control = StepControl64::new(step, TOLERANCE)?;
    let (a_s, a_i) = (settings.seed_signal, settings.seed_idler);
    let coupled = propagate_coupled(&system, a_s, a_i, settings.cell_length, &control)?;
    let analytic = propagate_analytic(point.coefficient, a_s, a_i, &coupled.z)?;

    let analytic_rate = optional_rate(&analytic)?;
    let coupled_rate = optional_rate(&coupled)?;
    let rate_discrepancy = match (analytic_rate, coupled_rate) {
        (Some(a), Some(c)) if a > 0.0 => Some((c - a).abs() / a),
        _ => None,
    };
    let mr = coupled.manley_rowe();
    let summary = PropagationSummary {
        analytic_rate,
        coupled_rate,
        rate_discrepancy,
        analytic_gain_db: analytic.total_gain_db(),
        coupled_gain_db: coupled.total_gain_db(),
        analytic_factor: (point.coefficient * settings.cell_length).exp(),
        manley_rowe_drift: mr.iter().map(|v| (v - mr[0]).abs()).fold(0.0, f64::max),
    };

    let keep = decimate(coupled.len(), settings.samples);
    let pick = |v: &[Complex64]| keep.iter().map(|&k| v[k]).collect::<Vec<_>>();
    Ok(PropagationReport {
        schema_version: SCHEMA_VERSION,
        scenario: scenario.name.clone(),
        component,
        omega_s: point.pair.omega_s,
        omega_i: point.pair.omega_i,
        coefficient: point.coefficient,
        kappa_s: system.kappa_s,
        kappa_i: system.kappa_i,
        delta: system.delta,
        cell_length: settings.cell_length,
        step: coupled.step.unwrap_or(step),
        tolerance: TOLERANCE,
        flags: point.flags.iter().map(|f| f.token().to_string()).collect(),
        summary,
        z: keep.iter().map(|&k| coupled.z[k]).collect(),
        analytic_signal: pick(&analytic.signal),
        analytic_idler: pick(&analytic.idler),
        coupled_signal: pick(&coupled.signal),
        coupled_idler: pick(&coupled.idler),
    })
}
