//! Parametric down-conversion gain in a two-level atomic gas prepared in a
//! superposition of pump-dressed states.
//!
//! Everything is computed in CGS-Gaussian units with frequencies in rad/s.
//! The physics is generic over the floating-point scalar ([`Real`]); the
//! `*64` aliases below are the concrete types used by the CLI and most
//! callers.

// `!(x > 0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dressed;
pub mod error;
pub mod gain;
pub mod propagation;
pub mod scalar;
pub mod units;

pub use dressed::{DressedLimit, DressedPair, PumpConfig, SuperpositionState, TransitionSpec};
pub use error::{Error, Result};
pub use gain::{
    Breakdown, Flag, FrequencyPair, GainOptions, GainPoint, MatrixElementModel, SidebandComponent,
};
pub use propagation::{CoupledSystem, PropagationTrace, StepControl};
pub use scalar::Real;
pub use units::{DetuningUnit, IntensityConvention, LabInputs, PhysicalConstants};

pub type Complex64 = num_complex::Complex<f64>;

pub type TransitionSpec64 = TransitionSpec<f64>;
pub type PumpConfig64 = PumpConfig<f64>;
pub type DressedPair64 = DressedPair<f64>;
pub type SuperpositionState64 = SuperpositionState<f64>;
pub type FrequencyPair64 = FrequencyPair<f64>;
pub type MatrixElementModel64 = MatrixElementModel<f64>;
pub type GainPoint64 = GainPoint<f64>;
pub type GainOptions64 = GainOptions<f64>;
pub type CoupledSystem64 = CoupledSystem<f64>;
pub type PropagationTrace64 = PropagationTrace<f64>;
pub type StepControl64 = StepControl<f64>;
pub type LabInputs64 = LabInputs<f64>;

pub type TransitionSpec32 = TransitionSpec<f32>;
pub type PumpConfig32 = PumpConfig<f32>;
pub type SuperpositionState32 = SuperpositionState<f32>;
pub type GainPoint32 = GainPoint<f32>;
