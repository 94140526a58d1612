//! Verbatim single-expression evaluation of the three amplification
//! coefficients. Shares nothing with the library: constants are literal,
//! every coefficient is one expression in raw CGS-Gaussian inputs.

#![allow(dead_code)]

pub const E_CHARGE: f64 = 4.803_204_712_570_263e-10;
pub const E_MASS: f64 = 9.109_383_701_5e-28;
pub const C_LIGHT: f64 = 2.997_924_58e10;
pub const HBAR: f64 = 1.054_571_817e-27;

/// Raw inputs, all CGS-Gaussian, frequencies in rad/s.
#[derive(Clone, Copy, Debug)]
pub struct Inputs {
    pub n: f64,
    pub omega_p: f64,
    pub delta: f64,
    pub rabi: f64,
    pub abs_alpha: f64,
    pub abs_beta: f64,
    pub omega_s: f64,
    pub omega_i: f64,
    /// ⟨1| sin(k_s ρ_z) sin(k_i ρ_z) |1⟩
    pub m: f64,
}

pub fn ordinary(x: &Inputs) -> f64 {
    let pi = std::f64::consts::PI;
    4.0 * pi * x.n * E_CHARGE * E_CHARGE / (E_MASS * C_LIGHT)
        * (x.abs_alpha * x.abs_alpha - x.abs_beta * x.abs_beta).abs()
        * (x.delta.abs() * x.rabi / (x.delta * x.delta + x.rabi * x.rabi).sqrt())
        * (x.m
            / ((2.0 * x.omega_p - x.omega_s)
                * x.omega_s
                * (2.0 * x.omega_p - x.omega_i)
                * x.omega_i))
            .sqrt()
}

pub fn blue(x: &Inputs) -> f64 {
    let pi = std::f64::consts::PI;
    let gr = (x.delta * x.delta + x.rabi * x.rabi).sqrt();
    pi * x.n * E_CHARGE * E_CHARGE / (E_MASS * C_LIGHT * x.omega_p)
        * (x.abs_alpha * x.abs_beta)
        * (x.rabi * x.rabi / (x.delta * x.delta + x.rabi * x.rabi))
        * (x.m
            * (gr / (2.0 * x.omega_p - x.omega_s) + x.delta / x.omega_s)
            * (gr / (2.0 * x.omega_p - x.omega_i) + x.delta / x.omega_i))
            .abs()
            .sqrt()
}

pub fn red(x: &Inputs) -> f64 {
    let pi = std::f64::consts::PI;
    pi * x.n * E_CHARGE * E_CHARGE / (E_MASS * C_LIGHT * x.omega_p)
        * (x.abs_alpha * x.abs_beta)
        * (x.rabi * x.rabi / (x.delta * x.delta + x.rabi * x.rabi))
        * ((x.delta + x.rabi / 2.0).abs()
            / ((2.0 * x.omega_p - x.omega_s) * (2.0 * x.omega_p - x.omega_i)).sqrt())
        * x.m.sqrt()
}

/// Small-argument matrix element (k_s ρ̄)(k_i ρ̄).
pub fn small_argument_m(omega_s: f64, omega_i: f64, rho_bar: f64) -> f64 {
    (omega_s / C_LIGHT * rho_bar) * (omega_i / C_LIGHT * rho_bar)
}

/// Rabi frequency 2 d E / ħ from an intensity in W/cm² (E(t) = E cos ωt).
pub fn rabi_from_intensity(d12: f64, watts_per_cm2: f64) -> f64 {
    2.0 * d12 * (8.0 * std::f64::consts::PI * watts_per_cm2 * 1e7 / C_LIGHT).sqrt() / HBAR
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}
