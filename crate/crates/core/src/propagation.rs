//! Signal/idler propagation through the gas.
//!
//! The reduced wave equations of all three channels share the form
//!
//! ```text
//! dA_s/dz = κ_s · A_i* · e^{iδz}
//! dA_i/dz = κ_i · A_s* · e^{iδz}
//! ```
//!
//! with δ = 0, +Ω/c or −Ω/c. [`propagate_coupled`] integrates it with
//! fixed-step classical RK4; [`propagate_analytic`] is the single-exponential
//! solution `A(z) = A(0)·e^{αz}`.

use num_complex::Complex;

use crate::dressed::{PumpConfig, SuperpositionState};
use crate::error::{domain, Error, Result};
use crate::gain::{GainPoint, SidebandComponent};
use crate::scalar::Real;

/// Largest allowed `rate·h` for a fixed RK4 step, where rate is the larger of
/// |κ| and |δ|.
pub const MAX_STEP_PRODUCT: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoupledSystem<T> {
    pub kappa_s: Complex<T>,
    pub kappa_i: Complex<T>,
    /// Mismatch wavenumber δ, cm⁻¹.
    pub delta: T,
    pub component: Option<SidebandComponent>,
}

impl<T: Real> CoupledSystem<T> {
    /// Both equations share one coupling κ.
    pub fn symmetric(kappa: Complex<T>, delta: T) -> Self {
        Self {
            kappa_s: kappa,
            kappa_i: kappa,
            delta,
            component: None,
        }
    }

    /// Couplings for an evaluated gain point: `|κ_s κ_i| = coefficient²`,
    /// δ from the component, and for the sidebands the phase of α*β.
    pub fn from_gain(
        point: &GainPoint<T>,
        state: &SuperpositionState<T>,
        pump: &PumpConfig<T>,
    ) -> Self {
        let phase = match point.component {
            SidebandComponent::Ordinary => T::zero(),
            SidebandComponent::Blue | SidebandComponent::Red => {
                let cross = state.cross_term();
                if cross.norm() > T::zero() {
                    cross.arg()
                } else {
                    T::zero()
                }
            }
        };
        let unit = Complex::from_polar(T::one(), phase);
        let r = point.coupling_ratio;
        Self {
            kappa_s: unit * (point.coefficient * r),
            kappa_i: unit * (point.coefficient / r),
            delta: point.component.mismatch(pump.rabi),
            component: Some(point.component),
        }
    }

    /// |κ| = sqrt(|κ_s κ_i|).
    pub fn kappa(&self) -> T {
        (self.kappa_s.norm() * self.kappa_i.norm()).sqrt()
    }

    fn rhs(&self, z: T, s: Complex<T>, i: Complex<T>) -> (Complex<T>, Complex<T>) {
        let phase = Complex::from_polar(T::one(), self.delta * z);
        (
            self.kappa_s * i.conj() * phase,
            self.kappa_i * s.conj() * phase,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepControl<T> {
    /// Requested step, cm. The span is divided into `ceil(span/step)` equal steps.
    pub step: T,
    /// Accuracy target the caller holds the trace to; recorded with the trace.
    pub tolerance: T,
}

impl<T: Real> StepControl<T> {
    pub fn new(step: T, tolerance: T) -> Result<Self> {
        if !(step > T::zero()) || !(tolerance > T::zero()) {
            return Err(domain(format!(
                "step and tolerance must be positive, got step={step}, tolerance={tolerance}"
            )));
        }
        Ok(Self { step, tolerance })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Analytic,
    Rk4,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropagationTrace<T> {
    /// cm, strictly increasing.
    pub z: Vec<T>,
    pub signal: Vec<Complex<T>>,
    pub idler: Vec<Complex<T>>,
    pub component: Option<SidebandComponent>,
    pub method: Method,
    /// Step actually used (RK4 only).
    pub step: Option<T>,
    pub tolerance: Option<T>,
}

impl<T: Real> PropagationTrace<T> {
    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    /// |A_s|² − |A_i|² at every sample.
    pub fn manley_rowe(&self) -> Vec<T> {
        self.signal
            .iter()
            .zip(&self.idler)
            .map(|(s, i)| s.norm_sqr() - i.norm_sqr())
            .collect()
    }

    /// Total-amplitude gain from first to last sample, 20·log₁₀ of the ratio of
    /// sqrt(|A_s|² + |A_i|²).
    pub fn total_gain_db(&self) -> Option<T> {
        let amp = |k: usize| (self.signal[k].norm_sqr() + self.idler[k].norm_sqr()).sqrt();
        let (first, last) = (amp(0), amp(self.len() - 1));
        (first > T::zero()).then(|| T::lit(20.0) * (last / first).log10())
    }
}

fn validate_grid<T: Real>(z: &[T]) -> Result<()> {
    if z.is_empty() {
        return Err(domain("z grid must not be empty"));
    }
    if z.iter().any(|v| !v.is_finite()) {
        return Err(domain("z grid must be finite"));
    }
    if z.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(domain("z grid must be strictly increasing"));
    }
    Ok(())
}

/// `A_μ(z) = A_μ(z₀)·exp(coefficient·(z − z₀))` on the given grid.
pub fn propagate_analytic<T: Real>(
    coefficient: T,
    a0_s: Complex<T>,
    a0_i: Complex<T>,
    z_grid: &[T],
) -> Result<PropagationTrace<T>> {
    if !(coefficient >= T::zero()) || !coefficient.is_finite() {
        return Err(domain(format!(
            "amplification coefficient must be finite and non-negative, got {coefficient}"
        )));
    }
    validate_grid(z_grid)?;
    let z0 = z_grid[0];
    let growth: Vec<T> = z_grid
        .iter()
        .map(|&z| (coefficient * (z - z0)).exp())
        .collect();
    Ok(PropagationTrace {
        z: z_grid.to_vec(),
        signal: growth.iter().map(|&g| a0_s * g).collect(),
        idler: growth.iter().map(|&g| a0_i * g).collect(),
        component: None,
        method: Method::Analytic,
        step: None,
        tolerance: None,
    })
}

/// Classical RK4 from z = 0 to `span`, sampling every step.
pub fn propagate_coupled<T: Real>(
    system: &CoupledSystem<T>,
    a0_s: Complex<T>,
    a0_i: Complex<T>,
    span: T,
    control: &StepControl<T>,
) -> Result<PropagationTrace<T>> {
    if !(span > T::zero()) || !span.is_finite() {
        return Err(domain(format!(
            "propagation span must be positive, got {span}"
        )));
    }
    let StepControl { step, tolerance } = StepControl::new(control.step, control.tolerance)?;
    let rate = system
        .kappa_s
        .norm()
        .max(system.kappa_i.norm())
        .max(system.delta.abs());
    if rate * step > T::lit(MAX_STEP_PRODUCT) {
        let suggested = T::lit(MAX_STEP_PRODUCT) / rate;
        return Err(Error::StepTooLarge(format!(
            "max(|kappa|, |delta|)*h = {} exceeds {MAX_STEP_PRODUCT}; use a step of at most {suggested} cm",
            rate * step
        )));
    }
    let n = (span / step).ceil().to_usize().unwrap_or(1).max(1);
    let h = span / T::from_usize(n).unwrap();
    let half = h / T::lit(2.0);
    let sixth = h / T::lit(6.0);
    let two = T::lit(2.0);

    let mut z = Vec::with_capacity(n + 1);
    let mut signal = Vec::with_capacity(n + 1);
    let mut idler = Vec::with_capacity(n + 1);
    z.push(T::zero());
    signal.push(a0_s);
    idler.push(a0_i);

    let (mut s, mut i) = (a0_s, a0_i);
    for k in 0..n {
        let zk = h * T::from_usize(k).unwrap();
        let (k1s, k1i) = system.rhs(zk, s, i);
        let (k2s, k2i) = system.rhs(zk + half, s + k1s * half, i + k1i * half);
        let (k3s, k3i) = system.rhs(zk + half, s + k2s * half, i + k2i * half);
        let (k4s, k4i) = system.rhs(zk + h, s + k3s * h, i + k3i * h);
        let ns = s + (k1s + k2s * two + k3s * two + k4s) * sixth;
        let ni = i + (k1i + k2i * two + k3i * two + k4i) * sixth;
        if !(ns.re.is_finite() && ns.im.is_finite() && ni.re.is_finite() && ni.im.is_finite()) {
            return Err(Error::Integration {
                last_z: zk.as_f64(),
                reason: "non-finite amplitude".into(),
            });
        }
        s = ns;
        i = ni;
        z.push(if k + 1 == n { span } else { zk + h });
        signal.push(s);
        idler.push(i);
    }
    Ok(PropagationTrace {
        z,
        signal,
        idler,
        component: system.component,
        method: Method::Rk4,
        step: Some(h),
        tolerance: Some(tolerance),
    })
}

/// Least-squares slope of ln|A_s| against z over the final third of the trace.
pub fn final_third_log_slope<T: Real>(trace: &PropagationTrace<T>) -> Result<T> {
    let n = trace.len();
    let start = 2 * n / 3;
    if n - start < 3 {
        return Err(Error::InsufficientGrowth(format!(
            "trace has {n} samples; need at least 3 in its final third"
        )));
    }
    let mut pts = Vec::with_capacity(n - start);
    for k in start..n {
        let a = trace.signal[k].norm();
        if !(a > T::zero()) {
            return Err(Error::InsufficientGrowth(format!(
                "signal vanishes at z = {}",
                trace.z[k]
            )));
        }
        pts.push((trace.z[k], a.ln()));
    }
    let m = T::from_usize(pts.len()).unwrap();
    let mean_z = pts.iter().fold(T::zero(), |acc, p| acc + p.0) / m;
    let mean_y = pts.iter().fold(T::zero(), |acc, p| acc + p.1) / m;
    let (sxy, sxx) = pts
        .iter()
        .fold((T::zero(), T::zero()), |(sxy, sxx), &(z, y)| {
            let dz = z - mean_z;
            (sxy + dz * (y - mean_y), sxx + dz * dz)
        });
    Ok(sxy / sxx)
}

/// Asymptotic exponential growth rate of the signal, cm⁻¹.
///
/// Requires the signal to have grown by at least e² over its minimum.
pub fn asymptotic_growth_rate<T: Real>(trace: &PropagationTrace<T>) -> Result<T> {
    if trace.is_empty() {
        return Err(Error::InsufficientGrowth("empty trace".into()));
    }
    let min = trace
        .signal
        .iter()
        .map(|a| a.norm())
        .fold(T::infinity(), T::min);
    let last = trace.signal[trace.len() - 1].norm();
    let needed = T::lit(2.0).exp();
    if !(last >= needed * min) {
        return Err(Error::InsufficientGrowth(format!(
            "signal grew by a factor {} from its minimum; need at least e^2",
            last / min
        )));
    }
    final_third_log_slope(trace)
}
