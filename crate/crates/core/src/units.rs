//! CGS-Gaussian constants and the conversions from laboratory inputs.
//!
//! All physics in this crate runs in CGS-Gaussian units with angular
//! frequencies in rad/s. Laboratory quantities enter through this module
//! only: wavelengths in cm, intensities in W/cm², detunings with an explicit
//! unit tag.
//!
//! Intensity convention: the pump field is `E(t) = E_p cos(ωt)` with real
//! amplitude `E_p`, so the time-averaged Poynting flux is `c·E_p²/(8π)`.
//! [`IntensityConvention::ComplexEnvelope`] is the alternative reading
//! `E(t) = E_p e^{-iωt} + c.c.` (real amplitude `2E_p`), kept for
//! interpretation studies only.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::scalar::Real;

/// Elementary charge, statcoulomb (CODATA 2018).
pub const ELECTRON_CHARGE: f64 = 4.803_204_712_570_263e-10;
/// Electron mass, gram (CODATA 2018).
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-28;
/// Speed of light, cm/s (exact).
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e10;
/// Reduced Planck constant, erg·s (CODATA 2018).
pub const HBAR: f64 = 1.054_571_817e-27;

/// erg/(s·cm²) per W/cm².
pub const WATTS_PER_CM2_TO_CGS: f64 = 1e7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants<T> {
    pub electron_charge: T,
    pub electron_mass: T,
    pub speed_of_light: T,
    pub hbar: T,
}

impl<T: Real> PhysicalConstants<T> {
    pub fn cgs() -> Self {
        Self {
            electron_charge: T::lit(ELECTRON_CHARGE),
            electron_mass: T::lit(ELECTRON_MASS),
            speed_of_light: T::lit(SPEED_OF_LIGHT),
            hbar: T::lit(HBAR),
        }
    }

    /// e²/(m·c), cm²/s.
    pub fn classical_coupling(&self) -> T {
        self.electron_charge * self.electron_charge / (self.electron_mass * self.speed_of_light)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum IntensityConvention {
    /// `I = c·E_p²/(8π)` for `E(t) = E_p cos ωt`.
    #[default]
    TimeAveragedReal,
    /// `I = c·E_p²/(2π)` for `E(t) = E_p e^{-iωt} + c.c.`
    ComplexEnvelope,
}

impl IntensityConvention {
    /// Denominator `k` in `I = c·E_p²/k`.
    fn flux_denominator<T: Real>(self) -> T {
        match self {
            Self::TimeAveragedReal => T::lit(8.0) * T::PI(),
            Self::ComplexEnvelope => T::lit(2.0) * T::PI(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::TimeAveragedReal => "I = c E^2/(8 pi), E(t) = E cos(wt)",
            Self::ComplexEnvelope => "I = c E^2/(2 pi), E(t) = E exp(-iwt) + c.c.",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DetuningUnit {
    /// Ordinary frequency; multiplied by 2π on conversion.
    Hz,
    RadPerSecond,
}

impl DetuningUnit {
    pub fn label(self) -> &'static str {
        match self {
            Self::Hz => "Hz",
            Self::RadPerSecond => "rad/s",
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Self::Hz => Self::RadPerSecond,
            Self::RadPerSecond => Self::Hz,
        }
    }
}

/// Laboratory-side description of the pump and transition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabInputs<T> {
    /// Transition vacuum wavelength λ₀, cm.
    pub vacuum_wavelength: Option<T>,
    /// Pump intensity, W/cm².
    pub intensity: T,
    pub detuning_value: T,
    pub detuning_unit: DetuningUnit,
}

impl<T: Real> LabInputs<T> {
    pub fn new(
        vacuum_wavelength: Option<T>,
        intensity: T,
        detuning_value: T,
        detuning_unit: DetuningUnit,
    ) -> Result<Self> {
        if let Some(w) = vacuum_wavelength {
            if !(w > T::zero()) || !w.is_finite() {
                return Err(domain(format!("wavelength must be positive, got {w}")));
            }
        }
        if !(intensity >= T::zero()) || !intensity.is_finite() {
            return Err(domain(format!(
                "intensity must be non-negative, got {intensity}"
            )));
        }
        if !detuning_value.is_finite() {
            return Err(domain("detuning must be finite"));
        }
        Ok(Self {
            vacuum_wavelength,
            intensity,
            detuning_value,
            detuning_unit,
        })
    }

    pub fn detuning(&self) -> T {
        detuning_to_angular(self.detuning_value, self.detuning_unit)
    }

    pub fn field_amplitude(&self, convention: IntensityConvention) -> Result<T> {
        intensity_to_field_amplitude_with(self.intensity, convention)
    }
}

/// Pump field amplitude (statvolt/cm) from an intensity in W/cm².
pub fn intensity_to_field_amplitude<T: Real>(watts_per_cm2: T) -> Result<T> {
    intensity_to_field_amplitude_with(watts_per_cm2, IntensityConvention::TimeAveragedReal)
}

pub fn intensity_to_field_amplitude_with<T: Real>(
    watts_per_cm2: T,
    convention: IntensityConvention,
) -> Result<T> {
    if !(watts_per_cm2 >= T::zero()) {
        return Err(domain(format!(
            "intensity must be non-negative, got {watts_per_cm2} W/cm^2"
        )));
    }
    let flux = watts_per_cm2 * T::lit(WATTS_PER_CM2_TO_CGS);
    Ok((convention.flux_denominator::<T>() * flux / T::lit(SPEED_OF_LIGHT)).sqrt())
}

/// Inverse of [`intensity_to_field_amplitude`]: W/cm² from statvolt/cm.
pub fn field_amplitude_to_intensity<T: Real>(field: T) -> Result<T> {
    field_amplitude_to_intensity_with(field, IntensityConvention::TimeAveragedReal)
}

pub fn field_amplitude_to_intensity_with<T: Real>(
    field: T,
    convention: IntensityConvention,
) -> Result<T> {
    if !(field >= T::zero()) {
        return Err(domain(format!(
            "field amplitude must be non-negative, got {field}"
        )));
    }
    let flux = T::lit(SPEED_OF_LIGHT) * field * field / convention.flux_denominator::<T>();
    Ok(flux / T::lit(WATTS_PER_CM2_TO_CGS))
}

/// ω = 2πc/λ for a vacuum wavelength in cm.
pub fn wavelength_to_angular_frequency<T: Real>(wavelength_cm: T) -> Result<T> {
    if !(wavelength_cm > T::zero()) {
        return Err(domain(format!(
            "wavelength must be positive, got {wavelength_cm} cm"
        )));
    }
    Ok(T::TAU() * T::lit(SPEED_OF_LIGHT) / wavelength_cm)
}

/// λ = 2πc/ω, cm.
pub fn angular_frequency_to_wavelength<T: Real>(omega: T) -> Result<T> {
    if !(omega > T::zero()) {
        return Err(domain(format!(
            "angular frequency must be positive, got {omega} rad/s"
        )));
    }
    Ok(T::TAU() * T::lit(SPEED_OF_LIGHT) / omega)
}

pub fn detuning_to_angular<T: Real>(value: T, unit: DetuningUnit) -> T {
    match unit {
        DetuningUnit::Hz => value * T::TAU(),
        DetuningUnit::RadPerSecond => value,
    }
}

pub fn angular_to_detuning<T: Real>(omega: T, unit: DetuningUnit) -> T {
    match unit {
        DetuningUnit::Hz => omega / T::TAU(),
        DetuningUnit::RadPerSecond => omega,
    }
}
