mod support;

use pdc_core::gain::{gain, GainOptions, MatrixElementModel, SidebandComponent};
use pdc_core::{FrequencyPair, PumpConfig, SuperpositionState, TransitionSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::oracle::{self, Inputs};

/// A randomized admissible configuration, both as library objects and as raw
/// oracle inputs built from the same primitive numbers.
struct Case {
    spec: TransitionSpec<f64>,
    pump: PumpConfig<f64>,
    state: SuperpositionState<f64>,
    pair: FrequencyPair<f64>,
    model: MatrixElementModel<f64>,
    raw: Inputs,
}

fn random_case(rng: &mut ChaCha8Rng, component: SidebandComponent) -> Case {
    let lambda0 = 10f64.powf(rng.gen_range(-4.7..-3.5));
    let omega0 = 2.0 * std::f64::consts::PI * oracle::C_LIGHT / lambda0;
    let d12 = 10f64.powf(rng.gen_range(-18.5..-16.5));
    let rho = rng.gen_range(1e-8..8e-8);
    let n = 10f64.powf(rng.gen_range(15.0..20.0));
    let delta = 10f64.powf(rng.gen_range(8.0..12.0)) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let watts = 10f64.powf(rng.gen_range(-1.0..6.0));
    let theta = rng.gen_range(0.0..std::f64::consts::FRAC_PI_2);
    let phi = rng.gen_range(-3.0..3.0);
    let frac = rng.gen_range(0.05..0.95);

    let omega_p = omega0 + delta;
    let rabi = oracle::rabi_from_intensity(d12, watts);
    let target = match component {
        SidebandComponent::Ordinary => omega_p,
        SidebandComponent::Blue => omega_p + rabi,
        SidebandComponent::Red => omega_p - rabi,
    };
    let omega_s = frac * omega_p;
    let omega_i = target - omega_s;

    let spec = TransitionSpec::new(omega0, d12, rho, n).unwrap();
    let field = pdc_core::units::intensity_to_field_amplitude(watts).unwrap();
    let pump = PumpConfig::detuned(&spec, delta, field).unwrap();
    let state = SuperpositionState::from_angles(theta, phi);
    let pair = FrequencyPair::new(omega_s, omega_i).unwrap();
    let model = MatrixElementModel::small_argument(rho).unwrap();
    let raw = Inputs {
        n,
        omega_p,
        delta,
        rabi,
        abs_alpha: theta.cos().abs(),
        abs_beta: theta.sin().abs(),
        omega_s,
        omega_i,
        m: oracle::small_argument_m(omega_s, omega_i, rho),
    };
    Case {
        spec,
        pump,
        state,
        pair,
        model,
        raw,
    }
}

fn check_component(component: SidebandComponent, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opts = GainOptions::default();
    let formula = match component {
        SidebandComponent::Ordinary => oracle::ordinary,
        SidebandComponent::Blue => oracle::blue,
        SidebandComponent::Red => oracle::red,
    };
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let c = random_case(&mut rng, component);
        let lib = gain(
            component, &c.spec, &c.pump, &c.state, &c.pair, &c.model, &opts,
        )
        .unwrap();
        let want = formula(&c.raw);
        let err = oracle::rel_err(lib.coefficient, want);
        worst = worst.max(err);
        assert!(
            err <= 1e-10,
            "{component}: library {} vs oracle {want} ({err:e})",
            lib.coefficient
        );
    }
    println!("{component}: worst relative error {worst:e}");
}

#[test]
fn ordinary_matches_oracle() {
    check_component(SidebandComponent::Ordinary, 11);
}

#[test]
fn blue_matches_oracle() {
    check_component(SidebandComponent::Blue, 12);
}

#[test]
fn red_matches_oracle() {
    check_component(SidebandComponent::Red, 13);
}

#[test]
fn scenario_ordinary_matches_oracle() {
    // 1 µm transition, 10 GHz (Hz reading) detuning, 1 kW/cm², state (1, 0)
    let omega0 = 2.0 * std::f64::consts::PI * oracle::C_LIGHT / 1e-4;
    let delta = 2.0 * std::f64::consts::PI * 1e10;
    let spec = TransitionSpec::new(omega0, 1e-17, 3e-8, 2.5e19).unwrap();
    let field = pdc_core::units::intensity_to_field_amplitude(1e3).unwrap();
    let pump = PumpConfig::detuned(&spec, delta, field).unwrap();
    let state = SuperpositionState::from_angles(0.0, 0.0);
    let omega_s = 0.5005 * pump.omega_p;
    let pair = FrequencyPair::new(omega_s, pump.omega_p - omega_s).unwrap();
    let model = MatrixElementModel::small_argument(3e-8).unwrap();
    let lib = gain(
        SidebandComponent::Ordinary,
        &spec,
        &pump,
        &state,
        &pair,
        &model,
        &GainOptions::default(),
    )
    .unwrap();
    let raw = Inputs {
        n: 2.5e19,
        omega_p: omega0 + delta,
        delta,
        rabi: oracle::rabi_from_intensity(1e-17, 1e3),
        abs_alpha: 1.0,
        abs_beta: 0.0,
        omega_s,
        omega_i: pump.omega_p - omega_s,
        m: oracle::small_argument_m(omega_s, pump.omega_p - omega_s, 3e-8),
    };
    let want = oracle::ordinary(&raw);
    assert!(oracle::rel_err(lib.coefficient, want) <= 1e-10);
    assert!(lib.coefficient > 0.0);
}
