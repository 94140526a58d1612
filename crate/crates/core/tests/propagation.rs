use num_complex::Complex;
use pdc_core::propagation::{
    asymptotic_growth_rate, final_third_log_slope, propagate_analytic, propagate_coupled,
};
use pdc_core::{CoupledSystem, Error, StepControl};

fn c(re: f64) -> Complex<f64> {
    Complex::new(re, 0.0)
}

/// Max relative error of the RK4 signal against cosh(κz) for A0 = (1, 0).
fn cosh_error(kappa: f64, kh: f64, span: f64) -> f64 {
    let sys = CoupledSystem::symmetric(c(kappa), 0.0);
    let ctl = StepControl::new(kh / kappa, 1e-9).unwrap();
    let t = propagate_coupled(&sys, c(1.0), c(0.0), span, &ctl).unwrap();
    t.z.iter()
        .zip(&t.signal)
        .zip(&t.idler)
        .map(|((&z, s), i)| {
            let es = (s - c((kappa * z).cosh())).norm() / (kappa * z).cosh();
            let ei = (i.conj() - c((kappa * z).sinh())).norm() / (kappa * z).cosh();
            es.max(ei)
        })
        .fold(0.0, f64::max)
}

#[test]
fn rk4_matches_cosh_closed_form() {
    let kappa = 0.7;
    let err = cosh_error(kappa, 1e-2, 6.0 / kappa);
    assert!(err <= 1e-6, "max relative error {err:e}");
}

#[test]
fn rk4_is_fourth_order() {
    let kappa = 0.7;
    let span = 6.0 / kappa;
    let e1 = cosh_error(kappa, 0.1, span);
    let e2 = cosh_error(kappa, 0.05, span);
    let e3 = cosh_error(kappa, 0.025, span);
    let p1 = (e1 / e2).log2();
    let p2 = (e2 / e3).log2();
    for p in [p1, p2] {
        assert!(
            (3.8..=4.2).contains(&p),
            "orders {p1}, {p2} from errors {e1:e} {e2:e} {e3:e}"
        );
    }
}

#[test]
fn matched_growth_rate_approaches_kappa() {
    let kappa = 2.0e-3;
    let sys = CoupledSystem::symmetric(c(kappa), 0.0);
    let ctl = StepControl::new(1e-2 / kappa, 1e-9).unwrap();
    let t = propagate_coupled(&sys, c(1.0), c(0.0), 6.0 / kappa, &ctl).unwrap();
    let rate = asymptotic_growth_rate(&t).unwrap();
    assert!((rate - kappa).abs() <= 0.01 * kappa, "{rate} vs {kappa}");

    let analytic = propagate_analytic(kappa, c(1.0), c(1.0), &t.z).unwrap();
    let ra = asymptotic_growth_rate(&analytic).unwrap();
    assert!((ra - rate).abs() <= 0.01 * kappa);
}

/// Exact growth of the mismatched pair: sqrt(κ² − δ²/4), zero beyond |δ| = 2κ.
fn mismatched_rate(kappa: f64, delta: f64) -> f64 {
    (kappa * kappa - delta * delta / 4.0).max(0.0).sqrt()
}

#[test]
fn mismatch_reduces_growth() {
    let kappa = 1.0;
    for frac in [0.0, 0.5, 1.0, 1.5] {
        let delta = frac * kappa;
        let sys = CoupledSystem::symmetric(c(kappa), delta);
        let want = mismatched_rate(kappa, delta);
        let span = 12.0 / want;
        let ctl = StepControl::new(0.01, 1e-9).unwrap();
        let t = propagate_coupled(&sys, c(1.0), c(0.0), span, &ctl).unwrap();
        let rate = asymptotic_growth_rate(&t).unwrap();
        assert!(
            (rate - want).abs() <= 0.01 * kappa,
            "δ={delta}: {rate} vs {want}"
        );
    }
}

#[test]
fn large_mismatch_has_no_asymptotic_growth() {
    let kappa = 1.0;
    let delta = 4.0 * kappa;
    let run = |h: f64| {
        let sys = CoupledSystem::symmetric(c(kappa), delta);
        let ctl = StepControl::new(h, 1e-9).unwrap();
        propagate_coupled(&sys, c(1.0), c(0.0), 6.0 / kappa, &ctl).unwrap()
    };
    let coarse = run(0.02);
    let fine = run(0.01);
    assert!(matches!(
        asymptotic_growth_rate(&fine),
        Err(Error::InsufficientGrowth(_))
    ));
    // the two step sizes agree on the shared samples
    for (k, s) in coarse.signal.iter().enumerate() {
        assert!((coarse.z[k] - fine.z[2 * k]).abs() < 1e-12);
        assert!(
            (s - fine.signal[2 * k]).norm() < 1e-5,
            "{}",
            (s - fine.signal[2 * k]).norm()
        );
    }
    assert!(final_third_log_slope(&fine).unwrap() < kappa);
    // bounded oscillation: |A_s| never exceeds 1 + κ²/(δ²/4 − κ²)
    let bound = 1.0 + kappa * kappa / (delta * delta / 4.0 - kappa * kappa);
    assert!(fine.signal.iter().all(|s| s.norm() <= bound + 1e-9));
}

#[test]
fn growth_rate_nonincreasing_in_mismatch() {
    let kappa = 1.0;
    let mut rates = Vec::new();
    for k in 0..5 {
        let delta = 10.0 * kappa * k as f64 / 4.0;
        let sys = CoupledSystem::symmetric(c(kappa), delta);
        let ctl = StepControl::new(0.005, 1e-9).unwrap();
        let t = propagate_coupled(&sys, c(1.0), c(0.0), 8.0 / kappa, &ctl).unwrap();
        // a trace that never grows by e² has no asymptotic growth
        let rate = match asymptotic_growth_rate(&t) {
            Ok(r) => r,
            Err(Error::InsufficientGrowth(_)) => 0.0,
            Err(e) => panic!("{e}"),
        };
        assert!((rate - mismatched_rate(kappa, delta)).abs() <= 0.01);
        rates.push(rate);
    }
    assert!(rates.windows(2).all(|w| w[1] <= w[0]), "{rates:?}");
}

#[test]
fn manley_rowe_conserved() {
    let kappa = 0.9;
    let tol = 1e-9;
    let sys = CoupledSystem::symmetric(c(kappa), 0.0);
    let ctl = StepControl::new(1e-2 / kappa, tol).unwrap();
    let t = propagate_coupled(
        &sys,
        Complex::new(0.6, -0.3),
        Complex::new(0.2, 0.5),
        6.0 / kappa,
        &ctl,
    )
    .unwrap();
    let mr = t.manley_rowe();
    let drift = mr.iter().map(|v| (v - mr[0]).abs()).fold(0.0, f64::max);
    let scale = t.signal.iter().map(|s| s.norm_sqr()).fold(1.0, f64::max);
    assert!(
        drift <= 10.0 * tol * scale,
        "drift {drift:e} at scale {scale:e}"
    );
}
