//! Amplification coefficients of the ordinary and the two sideband
//! down-conversion channels.
//!
//! * ordinary, `ω_s + ω_i = ω_p`:
//!   `α₀ = (4πne²/mc)·||α|²−|β|²|·(|Δ|Ω/Ω′)·sqrt(M / ∏(2ω_p−ω_μ)ω_μ)`
//! * blue sideband, `ω_s + ω_i = ω_p + Ω`:
//!   `α_Ω = (πne²/mcω_p)·|α*β|·(Ω²/Ω′²)·sqrt(M·∏(Ω′/(2ω_p−ω_μ) + Δ/ω_μ))`
//! * red sideband, `ω_s + ω_i = ω_p − Ω`:
//!   `α_−Ω = (πne²/mcω_p)·|α*β|·(Ω²/Ω′²)·|Δ+Ω/2|/sqrt(∏(2ω_p−ω_μ))·sqrt(M)`
//!
//! with `M = ⟨1|sin(k_s ρ_z) sin(k_i ρ_z)|1⟩`. Every coefficient is returned
//! together with the five factors it is the product of.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dressed::{PumpConfig, SuperpositionState, TransitionSpec, DIPOLE_REGIME_LIMIT};
use crate::error::{domain, Error, Result};
use crate::scalar::Real;
use crate::units::{PhysicalConstants, SPEED_OF_LIGHT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SidebandComponent {
    Ordinary,
    Blue,
    Red,
}

impl SidebandComponent {
    pub const ALL: [SidebandComponent; 3] = [Self::Ordinary, Self::Blue, Self::Red];

    pub fn name(self) -> &'static str {
        match self {
            Self::Ordinary => "ordinary",
            Self::Blue => "blue",
            Self::Red => "red",
        }
    }

    pub fn sum_rule(self) -> &'static str {
        match self {
            Self::Ordinary => "omega_s + omega_i = omega_p",
            Self::Blue => "omega_s + omega_i = omega_p + Omega",
            Self::Red => "omega_s + omega_i = omega_p - Omega",
        }
    }

    /// Required ω_s + ω_i.
    pub fn sum_target<T: Real>(self, omega_p: T, rabi: T) -> T {
        match self {
            Self::Ordinary => omega_p,
            Self::Blue => omega_p + rabi,
            Self::Red => omega_p - rabi,
        }
    }

    /// Wavenumber mismatch δ in the `e^{iδz}` factor of the reduced wave equation, cm⁻¹.
    pub fn mismatch<T: Real>(self, rabi: T) -> T {
        match self {
            Self::Ordinary => T::zero(),
            Self::Blue => rabi / T::lit(SPEED_OF_LIGHT),
            Self::Red => -rabi / T::lit(SPEED_OF_LIGHT),
        }
    }
}

impl fmt::Display for SidebandComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SidebandComponent {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "ordinary" => Ok(Self::Ordinary),
            "blue" => Ok(Self::Blue),
            "red" => Ok(Self::Red),
            other => Err(format!(
                "unknown component '{other}' (expected ordinary, blue or red)"
            )),
        }
    }
}

/// Warnings attached to an evaluated point. None of them stop evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flag {
    /// ω_s = ω_i; the nondegenerate split into two equations does not apply.
    Degenerate,
    /// The product under the square root of the blue coefficient was negative.
    NegativeRadicand,
    /// max(k_s, k_i)·ρ̄ exceeds the small-argument limit.
    OutsideDipoleRegime,
    /// Ω′ is no longer small against ω₀.
    TwoLevelValidity,
    /// ω_s or ω_i is not ≫ Ω.
    WeakFrequencySeparation,
    /// The point could not be evaluated (domain or phase-matching error).
    Unevaluated,
}

impl Flag {
    pub fn token(self) -> &'static str {
        match self {
            Self::Degenerate => "degenerate",
            Self::NegativeRadicand => "negative-radicand",
            Self::OutsideDipoleRegime => "outside-dipole-regime",
            Self::TwoLevelValidity => "two-level-validity",
            Self::WeakFrequencySeparation => "weak-frequency-separation",
            Self::Unevaluated => "unevaluated",
        }
    }

    pub fn from_token(token: &str) -> Option<Self> {
        [
            Self::Degenerate,
            Self::NegativeRadicand,
            Self::OutsideDipoleRegime,
            Self::TwoLevelValidity,
            Self::WeakFrequencySeparation,
            Self::Unevaluated,
        ]
        .into_iter()
        .find(|f| f.token() == token)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyPair<T> {
    pub omega_s: T,
    pub omega_i: T,
}

impl<T: Real> FrequencyPair<T> {
    pub fn new(omega_s: T, omega_i: T) -> Result<Self> {
        if !(omega_s > T::zero()) || !(omega_i > T::zero()) {
            return Err(domain(format!(
                "signal and idler frequencies must be positive, got {omega_s}, {omega_i}"
            )));
        }
        Ok(Self { omega_s, omega_i })
    }

    /// Idler from the component's sum rule.
    pub fn matched(component: SidebandComponent, omega_p: T, rabi: T, omega_s: T) -> Result<Self> {
        let omega_i = idler_for_signal(component, omega_p, rabi, omega_s)?;
        Self::new(omega_s, omega_i)
    }

    pub fn swapped(self) -> Self {
        Self {
            omega_s: self.omega_i,
            omega_i: self.omega_s,
        }
    }

    pub fn is_degenerate(&self, scale: T) -> bool {
        (self.omega_s - self.omega_i).abs() <= T::lit(1e-12) * scale
    }
}

/// ω_i completing the sum rule of `component` for signal ω_s.
pub fn idler_for_signal<T: Real>(
    component: SidebandComponent,
    omega_p: T,
    rabi: T,
    omega_s: T,
) -> Result<T> {
    let omega_i = component.sum_target(omega_p, rabi) - omega_s;
    if !(omega_i > T::zero()) {
        return Err(domain(format!(
            "{} sum rule ({}) leaves a non-positive idler {omega_i} rad/s for omega_s = {omega_s}",
            component.name(),
            component.sum_rule()
        )));
    }
    Ok(omega_i)
}

/// How `⟨1|sin(k_s ρ_z) sin(k_i ρ_z)|1⟩` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatrixElementModel<T> {
    /// `(k_s ρ̄)(k_i ρ̄)`.
    SmallArgument {
        rho_bar: T,
    },
    UserSupplied {
        value: T,
    },
}

impl<T: Real> MatrixElementModel<T> {
    pub fn small_argument(rho_bar: T) -> Result<Self> {
        if !(rho_bar > T::zero()) {
            return Err(domain(format!(
                "orbit radius must be positive, got {rho_bar}"
            )));
        }
        Ok(Self::SmallArgument { rho_bar })
    }

    pub fn user_supplied(value: T) -> Result<Self> {
        if !(value > T::zero() && value <= T::one()) {
            return Err(domain(format!(
                "supplied matrix element must lie in (0, 1], got {value}"
            )));
        }
        Ok(Self::UserSupplied { value })
    }

    pub fn exceeds_dipole_regime(&self, k_s: T, k_i: T) -> bool {
        match *self {
            Self::SmallArgument { rho_bar } => k_s.max(k_i) * rho_bar > T::lit(DIPOLE_REGIME_LIMIT),
            Self::UserSupplied { .. } => false,
        }
    }
}

pub fn matrix_element<T: Real>(model: &MatrixElementModel<T>, k_s: T, k_i: T) -> Result<T> {
    if !(k_s > T::zero()) || !(k_i > T::zero()) {
        return Err(domain(format!(
            "wavenumbers must be positive, got k_s={k_s}, k_i={k_i}"
        )));
    }
    Ok(match *model {
        MatrixElementModel::SmallArgument { rho_bar } => (k_s * rho_bar) * (k_i * rho_bar),
        MatrixElementModel::UserSupplied { value } => value,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainOptions<T> {
    /// Allowed |ω_s + ω_i − target|/ω_p.
    pub sum_rule_tolerance: T,
    /// Use |Δ + Ω′/2| instead of |Δ + Ω/2| in the red coefficient.
    pub red_alt_form: bool,
    /// Ω′/ω₀ above which the two-level model is flagged.
    pub validity_fraction: T,
    /// min(ω_s, ω_i)/Ω below which the ω ≫ Ω simplification is flagged.
    pub separation_ratio: T,
}

impl<T: Real> Default for GainOptions<T> {
    fn default() -> Self {
        Self {
            sum_rule_tolerance: T::lit(1e-9),
            red_alt_form: false,
            validity_fraction: T::lit(1e-2),
            separation_ratio: T::lit(100.0),
        }
    }
}

/// The factors whose product is the coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Breakdown<T> {
    /// `4πne²/mc` (ordinary, cm⁻¹·s⁻¹) or `πne²/(mcω_p)` (sidebands, cm⁻¹).
    pub prefactor: T,
    /// ||α|²−|β|²| or |α*β|.
    pub population: T,
    /// |Δ|Ω/Ω′ (ordinary, s⁻¹) or Ω²/Ω′² (sidebands).
    pub saturation: T,
    pub frequency: T,
    /// sqrt(M).
    pub matrix_element: T,
}

impl<T: Real> Breakdown<T> {
    pub fn product(&self) -> T {
        self.prefactor * self.population * self.saturation * self.frequency * self.matrix_element
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GainPoint<T> {
    pub component: SidebandComponent,
    pub pair: FrequencyPair<T>,
    /// Amplification coefficient, cm⁻¹.
    pub coefficient: T,
    pub breakdown: Breakdown<T>,
    pub flags: Vec<Flag>,
    /// `r` such that the two equations of the pair couple with `κ_s = α·r`
    /// and `κ_i = α/r`; `sqrt(κ_s κ_i)` is the coefficient.
    pub coupling_ratio: T,
}

impl<T: Real> GainPoint<T> {
    pub fn has_flag(&self, flag: Flag) -> bool {
        self.flags.contains(&flag)
    }
}

struct Checked<T> {
    flags: Vec<Flag>,
    m: T,
}

fn check_inputs<T: Real>(
    component: SidebandComponent,
    spec: &TransitionSpec<T>,
    pump: &PumpConfig<T>,
    pair: &FrequencyPair<T>,
    model: &MatrixElementModel<T>,
    opts: &GainOptions<T>,
) -> Result<Checked<T>> {
    if pump.detuning == T::zero() {
        return Err(domain("gain evaluation requires a nonzero detuning"));
    }
    let FrequencyPair { omega_s, omega_i } = FrequencyPair::new(pair.omega_s, pair.omega_i)?;
    let target = component.sum_target(pump.omega_p, pump.rabi);
    let residual = ((omega_s + omega_i - target) / pump.omega_p).abs();
    if !(residual <= opts.sum_rule_tolerance) {
        return Err(Error::PhaseMatching {
            component: component.name(),
            rule: component.sum_rule(),
            residual: residual.as_f64(),
        });
    }
    let two_wp = T::lit(2.0) * pump.omega_p;
    if !(two_wp - omega_s > T::zero()) || !(two_wp - omega_i > T::zero()) {
        return Err(domain(format!(
            "2 omega_p - omega must stay positive (omega_s={omega_s}, omega_i={omega_i}, omega_p={})",
            pump.omega_p
        )));
    }
    let c = T::lit(SPEED_OF_LIGHT);
    let (k_s, k_i) = (omega_s / c, omega_i / c);
    let m = matrix_element(model, k_s, k_i)?;

    let mut flags = Vec::new();
    if pair.is_degenerate(pump.omega_p) {
        flags.push(Flag::Degenerate);
    }
    if model.exceeds_dipole_regime(k_s, k_i) {
        flags.push(Flag::OutsideDipoleRegime);
    }
    if pump.generalized_rabi > opts.validity_fraction * spec.omega0 {
        flags.push(Flag::TwoLevelValidity);
    }
    if omega_s.min(omega_i) < opts.separation_ratio * pump.rabi {
        flags.push(Flag::WeakFrequencySeparation);
    }
    Ok(Checked { flags, m })
}

fn sideband_prefactor<T: Real>(spec: &TransitionSpec<T>, pump: &PumpConfig<T>) -> T {
    let k = PhysicalConstants::<T>::cgs();
    T::PI() * spec.density * k.classical_coupling() / pump.omega_p
}

fn sideband_saturation<T: Real>(pump: &PumpConfig<T>) -> T {
    let r2 = pump.rabi * pump.rabi;
    r2 / (pump.detuning * pump.detuning + r2)
}

pub fn gain_ordinary<T: Real>(
    spec: &TransitionSpec<T>,
    pump: &PumpConfig<T>,
    state: &SuperpositionState<T>,
    pair: &FrequencyPair<T>,
    model: &MatrixElementModel<T>,
    opts: &GainOptions<T>,
) -> Result<GainPoint<T>> {
    let checked = check_inputs(SidebandComponent::Ordinary, spec, pump, pair, model, opts)?;
    let k = PhysicalConstants::<T>::cgs();
    let two_wp = T::lit(2.0) * pump.omega_p;
    let d_s = (two_wp - pair.omega_s) * pair.omega_s;
    let d_i = (two_wp - pair.omega_i) * pair.omega_i;
    let breakdown = Breakdown {
        prefactor: T::lit(4.0) * T::PI() * spec.density * k.classical_coupling(),
        population: state.population_difference(),
        saturation: pump.detuning.abs() * pump.rabi / pump.generalized_rabi,
        frequency: T::one() / (d_s.sqrt() * d_i.sqrt()),
        matrix_element: checked.m.sqrt(),
    };
    Ok(GainPoint {
        component: SidebandComponent::Ordinary,
        pair: *pair,
        coefficient: breakdown.product(),
        breakdown,
        flags: checked.flags,
        coupling_ratio: (d_s / d_i).sqrt(),
    })
}

pub fn gain_blue<T: Real>(
    spec: &TransitionSpec<T>,
    pump: &PumpConfig<T>,
    state: &SuperpositionState<T>,
    pair: &FrequencyPair<T>,
    model: &MatrixElementModel<T>,
    opts: &GainOptions<T>,
) -> Result<GainPoint<T>> {
    let mut checked = check_inputs(SidebandComponent::Blue, spec, pump, pair, model, opts)?;
    let two_wp = T::lit(2.0) * pump.omega_p;
    let factor = |w: T| pump.generalized_rabi / (two_wp - w) + pump.detuning / w;
    let (f_s, f_i) = (factor(pair.omega_s), factor(pair.omega_i));
    let radicand = f_s * f_i;
    if radicand < T::zero() {
        checked.flags.push(Flag::NegativeRadicand);
    }
    let breakdown = Breakdown {
        prefactor: sideband_prefactor(spec, pump),
        population: state.coherence(),
        saturation: sideband_saturation(pump),
        frequency: radicand.abs().sqrt(),
        matrix_element: checked.m.sqrt(),
    };
    let coupling_ratio = if f_s == T::zero() || f_i == T::zero() {
        T::one()
    } else {
        (f_i / f_s).abs().sqrt()
    };
    Ok(GainPoint {
        component: SidebandComponent::Blue,
        pair: *pair,
        coefficient: breakdown.product(),
        breakdown,
        flags: checked.flags,
        coupling_ratio,
    })
}

pub fn gain_red<T: Real>(
    spec: &TransitionSpec<T>,
    pump: &PumpConfig<T>,
    state: &SuperpositionState<T>,
    pair: &FrequencyPair<T>,
    model: &MatrixElementModel<T>,
    opts: &GainOptions<T>,
) -> Result<GainPoint<T>> {
    let checked = check_inputs(SidebandComponent::Red, spec, pump, pair, model, opts)?;
    let two_wp = T::lit(2.0) * pump.omega_p;
    let (g_s, g_i) = (two_wp - pair.omega_s, two_wp - pair.omega_i);
    let shift = if opts.red_alt_form {
        pump.generalized_rabi
    } else {
        pump.rabi
    };
    let breakdown = Breakdown {
        prefactor: sideband_prefactor(spec, pump),
        population: state.coherence(),
        saturation: sideband_saturation(pump),
        frequency: (pump.detuning + shift / T::lit(2.0)).abs() / (g_s.sqrt() * g_i.sqrt()),
        matrix_element: checked.m.sqrt(),
    };
    Ok(GainPoint {
        component: SidebandComponent::Red,
        pair: *pair,
        coefficient: breakdown.product(),
        breakdown,
        flags: checked.flags,
        coupling_ratio: (g_s / g_i).sqrt(),
    })
}

/// Dispatch on `component`.
pub fn gain<T: Real>(
    component: SidebandComponent,
    spec: &TransitionSpec<T>,
    pump: &PumpConfig<T>,
    state: &SuperpositionState<T>,
    pair: &FrequencyPair<T>,
    model: &MatrixElementModel<T>,
    opts: &GainOptions<T>,
) -> Result<GainPoint<T>> {
    match component {
        SidebandComponent::Ordinary => gain_ordinary(spec, pump, state, pair, model, opts),
        SidebandComponent::Blue => gain_blue(spec, pump, state, pair, model, opts),
        SidebandComponent::Red => gain_red(spec, pump, state, pair, model, opts),
    }
}
