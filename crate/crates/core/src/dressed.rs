//! Two-level atom dressed by a classical monochromatic pump.
//!
//! Dressed states in the rotating frame are
//! `|Ψ±⟩ = N± (|1⟩ − (2λ±/Ω)|2⟩ e^{−iω_p t + ik_p z})`, with Stark shifts
//! `λ± = −Δ/2 ± Ω′/2` and normalization `N± = Ω/sqrt(2Ω′(Ω′ ∓ Δ))`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::scalar::Real;
use crate::units::HBAR;
use crate::units::SPEED_OF_LIGHT;

/// `k·ρ̄` above which the small-radius (dipole) regime is considered violated.
pub const DIPOLE_REGIME_LIMIT: f64 = 0.3;

/// The bare two-level transition and the gas it lives in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionSpec<T> {
    /// Transition frequency ω₀, rad/s.
    pub omega0: T,
    /// |d₁₂|, statC·cm.
    pub d12: T,
    /// Effective electron orbit radius ρ̄, cm.
    pub rho_bar: T,
    /// Number density n, cm⁻³.
    pub density: T,
}

impl<T: Real> TransitionSpec<T> {
    pub fn new(omega0: T, d12: T, rho_bar: T, density: T) -> Result<Self> {
        for (name, v) in [
            ("omega0", omega0),
            ("d12", d12),
            ("rho_bar", rho_bar),
            ("density", density),
        ] {
            if !(v > T::zero()) || !v.is_finite() {
                return Err(domain(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(Self {
            omega0,
            d12,
            rho_bar,
            density,
        })
    }

    /// `ρ̄·ω₀/c = ρ̄·2π/λ₀`; must be ≪ 1 for the dipole treatment.
    pub fn dipole_parameter(&self) -> T {
        self.rho_bar * self.omega0 / T::lit(SPEED_OF_LIGHT)
    }

    pub fn outside_dipole_regime(&self) -> bool {
        self.dipole_parameter() > T::lit(DIPOLE_REGIME_LIMIT)
    }
}

/// Ω = 2·d₁₂·E_p/ħ.
pub fn rabi_frequency<T: Real>(d12: T, field: T) -> Result<T> {
    if !(d12 >= T::zero()) || !(field >= T::zero()) {
        return Err(domain(format!(
            "rabi frequency needs non-negative dipole and field, got d12={d12}, E_p={field}"
        )));
    }
    Ok(T::lit(2.0) * d12 * field / T::lit(HBAR))
}

/// Ω′ = sqrt(Δ² + Ω²), overflow safe.
pub fn generalized_rabi<T: Real>(detuning: T, rabi: T) -> T {
    detuning.hypot(rabi)
}

/// Pump configuration with its derived frequencies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PumpConfig<T> {
    pub omega_p: T,
    /// Real field amplitude E_p, statvolt/cm.
    pub field: T,
    /// Δ = ω_p − ω₀.
    pub detuning: T,
    pub rabi: T,
    pub generalized_rabi: T,
    /// k_p = ω_p/c, cm⁻¹.
    pub k_p: T,
}

impl<T: Real> PumpConfig<T> {
    /// Pump at `omega_p`; Δ is taken as `omega_p − ω₀`. Prefer [`Self::detuned`]
    /// when Δ is known, since the difference cancels badly for Δ ≪ ω₀.
    pub fn new(spec: &TransitionSpec<T>, omega_p: T, field: T) -> Result<Self> {
        Self::detuned(spec, omega_p - spec.omega0, field)
    }

    /// Pump at `ω₀ + detuning` with real field amplitude `field`.
    pub fn detuned(spec: &TransitionSpec<T>, detuning: T, field: T) -> Result<Self> {
        let rabi = rabi_frequency(spec.d12, field)?;
        Self::build(spec, detuning, field, rabi)
    }

    /// Pump specified directly by its Rabi frequency; E_p is back-computed.
    pub fn with_rabi(spec: &TransitionSpec<T>, detuning: T, rabi: T) -> Result<Self> {
        if !(rabi >= T::zero()) || !rabi.is_finite() {
            return Err(domain(format!(
                "rabi frequency must be non-negative, got {rabi}"
            )));
        }
        let field = rabi * T::lit(HBAR) / (T::lit(2.0) * spec.d12);
        Self::build(spec, detuning, field, rabi)
    }

    fn build(spec: &TransitionSpec<T>, detuning: T, field: T, rabi: T) -> Result<Self> {
        let omega_p = spec.omega0 + detuning;
        if !(omega_p > T::zero()) || !omega_p.is_finite() {
            return Err(domain(format!(
                "pump frequency must be positive, got {omega_p}"
            )));
        }
        Ok(Self {
            omega_p,
            field,
            detuning,
            rabi,
            generalized_rabi: generalized_rabi(detuning, rabi),
            k_p: omega_p / T::lit(SPEED_OF_LIGHT),
        })
    }

    pub fn dressed(&self) -> Result<DressedPair<T>> {
        dressed_pair(self.detuning, self.rabi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DressedLimit {
    /// Ω > 0: genuine dressed states.
    Dressed,
    /// Ω = 0: each dressed state has collapsed onto a bare level.
    BareAtom,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedPair<T> {
    pub lambda_plus: T,
    pub lambda_minus: T,
    pub n_plus: T,
    pub n_minus: T,
    pub limit: DressedLimit,
}

/// Stark shifts and normalizations of the two dressed states.
///
/// `Ω′ ∓ Δ` is evaluated without cancellation (as `Ω²/(Ω′ ± Δ)` when the
/// direct difference would cancel), so the identities hold to round-off
/// across `Ω/|Δ|` from 10⁻⁶ to 10⁶ and beyond.
pub fn dressed_pair<T: Real>(detuning: T, rabi: T) -> Result<DressedPair<T>> {
    if !(rabi >= T::zero()) || !rabi.is_finite() || !detuning.is_finite() {
        return Err(domain(format!(
            "dressed states need finite Δ and Ω ≥ 0, got Δ={detuning}, Ω={rabi}"
        )));
    }
    let two = T::lit(2.0);
    if rabi == T::zero() {
        let half = detuning.abs() / two;
        let lambda_plus = -detuning / two + half;
        let lambda_minus = -detuning / two - half;
        let (n_plus, n_minus) = if detuning > T::zero() {
            (T::one(), T::zero())
        } else if detuning < T::zero() {
            (T::zero(), T::one())
        } else {
            (T::FRAC_1_SQRT_2(), T::FRAC_1_SQRT_2())
        };
        return Ok(DressedPair {
            lambda_plus,
            lambda_minus,
            n_plus,
            n_minus,
            limit: DressedLimit::BareAtom,
        });
    }

    let gr = generalized_rabi(detuning, rabi);
    // gr_minus = Ω′ − Δ, gr_plus = Ω′ + Δ
    let (gr_minus, gr_plus) = if detuning > T::zero() {
        let p = gr + detuning;
        (rabi * (rabi / p), p)
    } else {
        let m = gr - detuning;
        (m, rabi * (rabi / m))
    };
    Ok(DressedPair {
        lambda_plus: gr_minus / two,
        lambda_minus: -gr_plus / two,
        n_plus: rabi / (two * gr).sqrt() / gr_minus.sqrt(),
        n_minus: rabi / (two * gr).sqrt() / gr_plus.sqrt(),
        limit: DressedLimit::Dressed,
    })
}

/// Unperturbed amplitudes (α on |Ψ₊⟩, β on |Ψ₋⟩), normalized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperpositionState<T> {
    alpha: Complex<T>,
    beta: Complex<T>,
}

impl<T: Real> SuperpositionState<T> {
    pub fn new(alpha: Complex<T>, beta: Complex<T>) -> Result<Self> {
        let norm = alpha.norm().hypot(beta.norm());
        if !(norm > T::zero()) || !norm.is_finite() {
            return Err(domain("superposition amplitudes must not both vanish"));
        }
        Ok(Self {
            alpha: alpha / norm,
            beta: beta / norm,
        })
    }

    /// α = cos θ, β = e^{iφ} sin θ.
    pub fn from_angles(theta: T, phi: T) -> Self {
        Self {
            alpha: Complex::new(theta.cos(), T::zero()),
            beta: Complex::from_polar(theta.sin(), phi),
        }
    }

    pub fn alpha(&self) -> Complex<T> {
        self.alpha
    }

    pub fn beta(&self) -> Complex<T> {
        self.beta
    }

    /// ||α|² − |β|²|
    pub fn population_difference(&self) -> T {
        (self.alpha.norm_sqr() - self.beta.norm_sqr()).abs()
    }

    /// |α*β|
    pub fn coherence(&self) -> T {
        self.alpha.norm() * self.beta.norm()
    }

    /// α*β, whose phase enters the sideband couplings.
    pub fn cross_term(&self) -> Complex<T> {
        self.alpha.conj() * self.beta
    }
}

/// Shorthand for [`SuperpositionState::new`].
pub fn superposition<T: Real>(
    alpha: Complex<T>,
    beta: Complex<T>,
) -> Result<SuperpositionState<T>> {
    SuperpositionState::new(alpha, beta)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};

    use approx::assert_relative_eq;
    use proptest::prelude::*;

    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn rabi_basics() {
        assert_eq!(rabi_frequency(0.0, 123.0).unwrap(), 0.0);
        let a = rabi_frequency(1e-17, 2.0).unwrap();
        let b = rabi_frequency(1e-17, 4.0).unwrap();
        assert_eq!(b, 2.0 * a);
        assert!(rabi_frequency(-1e-17, 1.0).is_err());
        assert!(rabi_frequency(1e-17, -1.0).is_err());
    }

    #[test]
    fn rabi_at_one_kilowatt() {
        // 2·10⁻¹⁷·E_p/ħ with E_p = 2.8954067223460553 statvolt/cm
        let e = crate::units::intensity_to_field_amplitude(1e3).unwrap();
        let rabi = rabi_frequency(1e-17, e).unwrap();
        assert_relative_eq!(rabi, 5.491_151_338_716_376e10, max_relative = 1e-13);
    }

    #[test]
    fn generalized_rabi_cases() {
        assert_eq!(generalized_rabi(0.0, 5.0), 5.0);
        assert_eq!(generalized_rabi(3.0, 4.0), 5.0);
        assert_relative_eq!(
            generalized_rabi(1e200, 1e200),
            1e200 * 2.0_f64.sqrt(),
            max_relative = 1e-15
        );
        assert!(generalized_rabi(1e300_f64, 1e300).is_finite());
    }

    #[test]
    fn resonant_splitting_is_symmetric() {
        let p = dressed_pair(0.0, 2.5).unwrap();
        assert_eq!(p.lambda_plus, 1.25);
        assert_eq!(p.lambda_minus, -1.25);
        assert_relative_eq!(p.n_plus, FRAC_1_SQRT_2, max_relative = 1e-15);
        assert_relative_eq!(p.n_minus, FRAC_1_SQRT_2, max_relative = 1e-15);
    }

    #[test]
    fn pythagorean_shifts() {
        let p = dressed_pair(3.0, 4.0).unwrap();
        assert_relative_eq!(p.lambda_plus, 1.0, max_relative = 1e-15);
        assert_relative_eq!(p.lambda_minus, -4.0, max_relative = 1e-15);
    }

    #[test]
    fn bare_atom_limit() {
        let p = dressed_pair(2.0, 0.0).unwrap();
        assert_eq!(p.limit, DressedLimit::BareAtom);
        assert_eq!((p.lambda_plus, p.lambda_minus), (0.0, -2.0));
        assert_eq!((p.n_plus, p.n_minus), (1.0, 0.0));

        let p = dressed_pair(-2.0, 0.0).unwrap();
        assert_eq!((p.lambda_plus, p.lambda_minus), (2.0, 0.0));
        assert_eq!((p.n_plus, p.n_minus), (0.0, 1.0));

        // approaching the limit from Ω > 0 agrees with the tagged branch
        let near = dressed_pair(2.0, 1e-9).unwrap();
        assert_eq!(near.limit, DressedLimit::Dressed);
        assert_relative_eq!(near.n_plus, 1.0, max_relative = 1e-12);
        assert!(near.n_minus < 1e-9);

        assert!(dressed_pair(1.0, -1.0).is_err());
    }

    fn check_identities(delta: f64, rabi: f64) {
        let p = dressed_pair(delta, rabi).unwrap();
        let gr = generalized_rabi(delta, rabi);
        let norm_plus =
            p.n_plus * p.n_plus * (1.0 + 4.0 * p.lambda_plus * p.lambda_plus / (rabi * rabi));
        let norm_minus =
            p.n_minus * p.n_minus * (1.0 + 4.0 * p.lambda_minus * p.lambda_minus / (rabi * rabi));
        assert!(
            (norm_plus - 1.0).abs() < 1e-12,
            "N+ at Δ={delta}, Ω={rabi}: {norm_plus}"
        );
        assert!(
            (norm_minus - 1.0).abs() < 1e-12,
            "N- at Δ={delta}, Ω={rabi}: {norm_minus}"
        );
        let ortho =
            p.n_plus * p.n_minus * (1.0 + 4.0 * p.lambda_plus * p.lambda_minus / (rabi * rabi));
        assert!(
            ortho.abs() < 1e-12,
            "orthogonality at Δ={delta}, Ω={rabi}: {ortho}"
        );
        let prod = p.lambda_plus * p.lambda_minus;
        assert_relative_eq!(prod, -rabi * rabi / 4.0, max_relative = 1e-12);
        assert_relative_eq!(p.lambda_plus - p.lambda_minus, gr, max_relative = 1e-14);
        let sum = p.lambda_plus + p.lambda_minus;
        assert!((sum + delta).abs() <= 1e-14 * gr, "sum {sum} vs {}", -delta);
        assert!(gr >= delta.abs() && gr >= rabi);
    }

    #[test]
    fn identities_on_log_grid() {
        for sign in [1.0, -1.0] {
            for k in 0..=120 {
                let ratio = 10f64.powf(-6.0 + 12.0 * k as f64 / 120.0);
                let delta = sign * 6.283e10;
                check_identities(delta, ratio * delta.abs());
            }
        }
    }

    proptest! {
        #[test]
        fn identities_hold(log_ratio in -6.0f64..6.0, log_delta in -3.0f64..15.0, neg in any::<bool>()) {
            let delta = 10f64.powf(log_delta) * if neg { -1.0 } else { 1.0 };
            check_identities(delta, 10f64.powf(log_ratio) * delta.abs());
        }

        #[test]
        fn superposition_invariant(ar in -5.0f64..5.0, ai in -5.0f64..5.0, br in -5.0f64..5.0, bi in -5.0f64..5.0) {
            prop_assume!(ar.hypot(ai).hypot(br.hypot(bi)) > 1e-6);
            let s = SuperpositionState::new(c(ar, ai), c(br, bi)).unwrap();
            let norm = s.alpha().norm_sqr() + s.beta().norm_sqr();
            prop_assert!((norm - 1.0).abs() < 1e-12);
            let pd = s.population_difference();
            let coh = s.coherence();
            prop_assert!((0.0..=1.0 + 1e-15).contains(&pd));
            prop_assert!((0.0..=0.5 + 1e-15).contains(&coh));
            prop_assert!((pd * pd + 4.0 * coh * coh - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn superposition_examples() {
        let s = superposition(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(s.population_difference(), 1.0);
        assert_eq!(s.coherence(), 0.0);

        let s = superposition(c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)).unwrap();
        assert!(s.population_difference() < 1e-15);
        assert_relative_eq!(s.coherence(), 0.5, max_relative = 1e-15);

        let s = superposition(c(2.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(s.alpha(), c(1.0, 0.0));
        assert_eq!(s.beta(), c(0.0, 0.0));

        assert!(superposition(c(0.0, 0.0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn superposition_angles() {
        let s = SuperpositionState::from_angles(0.0, 1.3);
        assert_eq!(s.alpha(), c(1.0, 0.0));
        assert_eq!(s.beta().norm(), 0.0);

        let s = SuperpositionState::from_angles(FRAC_PI_4, 0.0);
        assert_relative_eq!(s.alpha().re, FRAC_1_SQRT_2, max_relative = 1e-15);
        assert_relative_eq!(s.beta().re, FRAC_1_SQRT_2, max_relative = 1e-15);

        for phi in [0.0, 0.4, PI / 2.0, 2.0, PI, -1.0] {
            let s = SuperpositionState::from_angles(FRAC_PI_4, phi);
            assert_relative_eq!(s.coherence(), 0.5, max_relative = 1e-15);
            assert_relative_eq!(s.cross_term().arg(), phi, epsilon = 1e-15);
        }
    }

    #[test]
    fn pump_config_derived_quantities() {
        let spec = TransitionSpec::new(1.88e15, 1e-17, 3e-8, 2.5e19).unwrap();
        let pump = PumpConfig::detuned(&spec, 6.0e10, 2.0).unwrap();
        assert_relative_eq!(pump.detuning, 6.0e10, max_relative = 1e-4);
        assert_relative_eq!(pump.k_p, pump.omega_p / SPEED_OF_LIGHT);
        assert_relative_eq!(
            pump.generalized_rabi * pump.generalized_rabi,
            pump.detuning * pump.detuning + pump.rabi * pump.rabi,
            max_relative = 1e-14
        );
        let back = PumpConfig::with_rabi(&spec, pump.detuning, pump.rabi).unwrap();
        assert_relative_eq!(back.field, 2.0, max_relative = 1e-14);
        assert!(TransitionSpec::new(0.0, 1e-17, 3e-8, 1.0).is_err());
    }

    #[test]
    fn dipole_regime_flag() {
        let spec = TransitionSpec::new(1.88e15, 1e-17, 3e-8, 2.5e19).unwrap();
        assert!(!spec.outside_dipole_regime());
        let big = TransitionSpec::new(1.88e15, 1e-17, 3e-5, 2.5e19).unwrap();
        assert!(big.outside_dipole_regime());
    }

    #[test]
    fn works_in_single_precision() {
        let p = dressed_pair(3.0_f32, 4.0).unwrap();
        assert!((p.lambda_plus - 1.0).abs() < 1e-6);
        let s = SuperpositionState::<f32>::from_angles(0.3, 0.0);
        assert!(
            (s.population_difference().powi(2) + 4.0 * s.coherence().powi(2) - 1.0).abs() < 1e-6
        );
    }
}
