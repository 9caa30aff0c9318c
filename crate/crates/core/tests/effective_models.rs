//! The pulse and drive protocols against the generators they average to.

use std::f64::consts::{FRAC_PI_2, PI};

use spinsqueeze::diagnostics::{m_distribution, squeezing_report};
use spinsqueeze::dicke::{make_css, make_dicke_state, rotate};
use spinsqueeze::hamiltonians::{build_effective, pulse_effective_tact};
use spinsqueeze::propagator::{doubling_check, evolve_driven, evolve_schedule, evolve_static};
use spinsqueeze::protocols::{
    build_modulated_drive, build_repeated_pulse, effective_optimal_time, DriveParams, FreezePolicy, PulseParams, Segment,
};

/// Terminal `|ξ²_pulse - ξ²_eff|` at `t_opt` for `nc` periods.
fn pulse_deviation(n: usize, nc: usize) -> f64 {
    let built = build_repeated_pulse(&PulseParams { periods: Some(nc), ..PulseParams::new(n, 1.0, nc) }).unwrap();
    let (end, _) = evolve_schedule(&built.initial, &built.schedule).unwrap();
    let t = built.schedule.end_time();
    let start = make_dicke_state(n, n as f64 / 2.0).unwrap();
    let eff = evolve_static(&start, &pulse_effective_tact(n, 1.0), t).unwrap();
    (squeezing_report(&end).unwrap().xi2 - squeezing_report(&eff).unwrap().xi2).abs()
}

#[test]
fn pulse_sequence_deviation_shrinks_with_shorter_periods() {
    // the first-order correction drops out of ξ², so halving the period quarters the gap
    let devs: Vec<f64> = [25, 50, 100, 200].iter().map(|&nc| pulse_deviation(100, nc)).collect();
    for w in devs.windows(2) {
        let ratio = w[0] / w[1];
        assert!((3.0..=5.0).contains(&ratio), "{devs:?}");
    }
}

#[test]
fn drive_approaches_effective_dynamics_as_frequency_grows() {
    let n = 100;
    let t_opt = effective_optimal_time(n);
    let mut infidelities = Vec::new();
    for f in [2e3, 2e4, 1e5] {
        let params = DriveParams::new(n, 1.0, 2.0 * PI * f, 0.9057, -FRAC_PI_2);
        let env = params.envelope().unwrap();
        let t = (t_opt / env.period()).round() * env.period();
        let start = spinsqueeze::protocols::drive_initial_state(n, 0.9057, -FRAC_PI_2).unwrap();
        let lab = evolve_driven(&start, 1.0, &env, 0.0, t, 64).unwrap();
        let (h, frame) = build_effective(n, 1.0, env.omega0, env.omega, env.phase).unwrap();
        let eff = evolve_static(&make_css(n, FRAC_PI_2, 0.0).unwrap(), &h, t).unwrap();
        infidelities.push(1.0 - lab.fidelity(&rotate(&eff, &frame).unwrap()));
    }
    assert!(infidelities.windows(2).all(|w| w[1] < w[0]), "{infidelities:?}");
    assert!(infidelities[2] < 1e-3, "{infidelities:?}");
}

#[test]
fn pulse_freeze_holds_the_z_distribution() {
    let n = 1250;
    let hold = 10.0 * effective_optimal_time(n);
    let built = build_repeated_pulse(&PulseParams { freeze: Some(FreezePolicy::pulses(hold)), ..PulseParams::new(n, 1.0, 50) })
        .unwrap();
    let mut prefix = built.schedule.clone();
    let cut = prefix.segments.iter().position(|s| matches!(s, Segment::Freeze { .. })).unwrap();
    prefix.segments.truncate(cut);
    prefix.sample_times.retain(|t| *t <= built.trigger.unwrap());
    let (frozen, _) = evolve_schedule(&built.initial, &prefix).unwrap();
    let var_min = squeezing_report(&frozen).unwrap().var_min;
    let (end, rec) = evolve_schedule(&built.initial, &built.schedule).unwrap();
    let dist = m_distribution(&end);
    assert!(dist.mean.abs() <= 1.0);
    assert!((dist.variance / var_min - 1.0).abs() <= 0.01, "{} vs {var_min}", dist.variance);
    assert!(rec.freeze_time().is_some());
}

#[test]
fn doubled_resolution_barely_moves_a_driven_run() {
    let params = DriveParams { horizon: Some(0.02), ..DriveParams::new(200, 1.0, 2.0 * PI * 2e4, 0.9057, -FRAC_PI_2) };
    let built = build_modulated_drive(&params).unwrap();
    let report = doubling_check(&built.initial, &built.schedule).unwrap();
    assert!(report.terminal_infidelity < 1e-8, "{report:?}");
}
