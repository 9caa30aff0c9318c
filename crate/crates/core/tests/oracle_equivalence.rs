//! Dicke-basis evolutions against the brute-force tensor-product oracle.

use std::f64::consts::{FRAC_PI_2, PI};

use spinsqueeze::dicke::{make_css, make_dicke_state};
use spinsqueeze::hamiltonians::{DriveEnvelope, HamiltonianForm, HamiltonianSpec};
use spinsqueeze::propagator::oracle::{full_hilbert_oracle, full_hilbert_schedule};
use spinsqueeze::propagator::{evolve_driven, evolve_hamiltonian, evolve_schedule};
use spinsqueeze::protocols::{build_repeated_pulse, FreezePolicy, FreezeTrigger, PulseParams};

#[test]
fn spin_one_oat_from_north_pole() {
    let s = make_dicke_state(2, 1.0).unwrap();
    for t in [0.1, 0.9, 4.0] {
        let out = full_hilbert_oracle(&HamiltonianSpec::oat(1.0), &s, t).unwrap();
        assert!(out.deficit.abs() <= 1e-10);
        let want = evolve_hamiltonian(&s, &HamiltonianSpec::oat(1.0), t).unwrap();
        assert!(1.0 - out.state.fidelity(&want) <= 1e-10);
    }
}

#[test]
fn four_spin_tact_from_x_state() {
    let s = make_css(4, FRAC_PI_2, 0.0).unwrap();
    let spec = HamiltonianSpec::tact(1.0);
    let out = full_hilbert_oracle(&spec, &s, 0.1).unwrap();
    assert!(out.deficit.abs() <= 1e-10);
    assert!(1.0 - out.state.fidelity(&evolve_hamiltonian(&s, &spec, 0.1).unwrap()) <= 1e-9);
}

#[test]
fn mixture_generator_at_six_spins() {
    let s = make_css(6, 1.0, -0.7).unwrap();
    let spec = HamiltonianSpec::new(0.8, HamiltonianForm::Mixture { alpha0: 0.3 }).unwrap();
    let out = full_hilbert_oracle(&spec, &s, 1.3).unwrap();
    assert!(1.0 - out.state.fidelity(&evolve_hamiltonian(&s, &spec, 1.3).unwrap()) <= 1e-10);
}

#[test]
fn four_spin_drive_to_chi_t_one_fifth() {
    let w = 2.0 * PI * 2000.0;
    let env = DriveEnvelope::new(0.9057 * w, w, -FRAC_PI_2).unwrap();
    let s = make_css(4, FRAC_PI_2, 0.0).unwrap();
    let spec = HamiltonianSpec::new(1.0, HamiltonianForm::Driven { drive: env }).unwrap();
    let oracle = full_hilbert_oracle(&spec, &s, 0.2).unwrap();
    let ours = evolve_driven(&s, 1.0, &env, 0.0, 0.2, 64).unwrap();
    assert!(oracle.deficit.abs() <= 1e-10);
    assert!(1.0 - oracle.state.fidelity(&ours) <= 1e-6, "{}", 1.0 - oracle.state.fidelity(&ours));
}

#[test]
fn pulse_schedule_with_analytic_freeze() {
    for n in [2, 5, 8] {
        let freeze = FreezePolicy { trigger: FreezeTrigger::AnalyticTime, ..FreezePolicy::pulses(0.3) };
        let built = build_repeated_pulse(&PulseParams { freeze: Some(freeze), ..PulseParams::new(n, 1.0, 6) }).unwrap();
        let (ours, _) = evolve_schedule(&built.initial, &built.schedule).unwrap();
        let oracle = full_hilbert_schedule(&built.schedule, &built.initial).unwrap();
        assert!(oracle.deficit.abs() <= 1e-10);
        assert!(1.0 - oracle.state.fidelity(&ours) <= 1e-10, "n = {n}");
    }
}
