use num_complex::Complex64;
use proptest::prelude::*;
use spinsqueeze::diagnostics::{mean_spin, moments, squeezing_report};
use spinsqueeze::dicke::{make_css, rotate, DickeState, RotationSpec};
use spinsqueeze::hamiltonians::HamiltonianSpec;
use spinsqueeze::propagator::evolve_hamiltonian;

fn random_state(n: usize, raw: &[(f64, f64)]) -> DickeState {
    let mut amps: Vec<Complex64> = raw.iter().take(n + 1).map(|&(re, im)| Complex64::new(re, im)).collect();
    amps[0] += 1.0;
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    amps.iter_mut().for_each(|a| *a /= norm);
    DickeState::from_amplitudes(n, amps).unwrap()
}

fn arb_state() -> impl Strategy<Value = DickeState> {
    (1usize..=24, prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 25)).prop_map(|(n, raw)| random_state(n, &raw))
}

fn arb_rotation() -> impl Strategy<Value = RotationSpec> {
    (0.0..std::f64::consts::PI, -3.2..3.2f64, -6.0..6.0f64).prop_map(|(th, ph, angle)| {
        RotationSpec::new([th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()], angle).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rotations_and_evolution_keep_unit_norm(s in arb_state(), r in arb_rotation(), t in 0.0..2.0f64) {
        prop_assert!((rotate(&s, &r).unwrap().norm_sqr() - 1.0).abs() < 1e-12);
        let e = evolve_hamiltonian(&s, &HamiltonianSpec::tact(1.0), t).unwrap();
        prop_assert!((e.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rotations_compose(s in arb_state(), a in arb_rotation(), b in arb_rotation()) {
        let stepwise = rotate(&rotate(&s, &a).unwrap(), &b).unwrap();
        let joint = rotate(&s, &a.followed_by(&b)).unwrap();
        prop_assert!(1.0 - stepwise.fidelity(&joint) < 1e-10);
    }

    #[test]
    fn mean_spin_follows_the_classical_rotation(s in arb_state(), r in arb_rotation()) {
        let want = r.rotate_vector(mean_spin(&s));
        let got = mean_spin(&rotate(&s, &r).unwrap());
        for k in 0..3 {
            prop_assert!((want[k] - got[k]).abs() < 1e-9 * (1.0 + s.j()));
        }
    }

    #[test]
    fn casimir_is_j_j_plus_one(s in arb_state()) {
        let m = moments(&s);
        let j = s.j();
        let total = m.second[0][0] + m.second[1][1] + m.second[2][2];
        prop_assert!((total - j * (j + 1.0)).abs() < 1e-9 * (1.0 + j * j));
    }

    #[test]
    fn coherent_states_are_unsqueezed(n in 1usize..=200, th in 0.0..std::f64::consts::PI, ph in -3.2..3.2f64) {
        let rep = squeezing_report(&make_css(n, th, ph).unwrap()).unwrap();
        prop_assert!((rep.xi2 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn xi2_is_rotation_invariant(n in 4usize..=60, t in 0.0..0.3f64, r in arb_rotation()) {
        let s = evolve_hamiltonian(&make_css(n, 1.1, 0.4).unwrap(), &HamiltonianSpec::oat(1.0), t).unwrap();
        let a = squeezing_report(&s).unwrap().xi2;
        let b = squeezing_report(&rotate(&s, &r).unwrap()).unwrap().xi2;
        prop_assert!((a - b).abs() < 1e-9 * (1.0 + a));
    }
}
