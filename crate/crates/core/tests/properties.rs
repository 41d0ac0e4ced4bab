use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

use phasekit::evolve::{eigen_propagate, TauGrid};
use phasekit::fock::{boson_basis, StateVector};
use phasekit::hamiltonian::{boson_dimer_hamiltonian, fermion_pair_hamiltonian, FermionVariant};
use phasekit::observe::{expectation, fluctuation};
use phasekit::ops::{boson_unitary_phase, jacobi_residual, OperatorMatrix};
use phasekit::runner::config::{Initial, Integrator, ModePair, ScenarioConfig};
use phasekit::C64;

fn complex_vec(len: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), len)
        .prop_map(|v| v.into_iter().map(|(re, im)| C64::new(re, im)).collect())
}

fn random_state(len: usize) -> impl Strategy<Value = StateVector> {
    complex_vec(len)
        .prop_filter("non-zero", |v| {
            v.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-3
        })
        .prop_map(|v| StateVector::normalized(DVector::from_vec(v)).unwrap())
}

fn matrix(dim: usize) -> impl Strategy<Value = OperatorMatrix> {
    complex_vec(dim * dim)
        .prop_map(move |v| OperatorMatrix::new("M", DMatrix::from_vec(dim, dim, v)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobi_holds_for_arbitrary_matrices(
        (a, b, c) in (1usize..6).prop_flat_map(|d| (matrix(d), matrix(d), matrix(d)))
    ) {
        let scale = a.max_abs().max(b.max_abs()).max(c.max_abs()).max(1.0);
        prop_assert!(jacobi_residual(&a, &b, &c).unwrap() <= 1e-12 * scale.powi(3) * 50.0);
    }

    #[test]
    fn boson_evolution_conserves_norm_and_energy(
        (n, psi) in (1usize..=8).prop_flat_map(|n| (Just(n), random_state(n + 1))),
        ubar in -6.0..6.0f64,
    ) {
        let h = boson_dimer_hamiltonian(&boson_basis(n).unwrap(), ubar).unwrap();
        let grid = TauGrid::uniform(10.0, 51).unwrap();
        let traj = eigen_propagate(&h, &psi, &grid).unwrap();
        let e0 = expectation(&h, &psi).unwrap();
        for s in &traj.states {
            prop_assert!((s.norm() - 1.0).abs() <= 1e-12);
            prop_assert!((expectation(&h, s).unwrap() - e0).abs() <= 1e-10);
        }
    }

    #[test]
    fn fermion_evolution_conserves_norm(psi in random_state(3), ubar in -6.0..6.0f64) {
        for variant in [FermionVariant::AsWritten, FermionVariant::UniformInteraction] {
            let h = fermion_pair_hamiltonian(ubar, variant).unwrap();
            let traj = eigen_propagate(&h, &psi, &TauGrid::uniform(5.0, 21).unwrap()).unwrap();
            prop_assert!(traj.max_norm_drift() <= 1e-12);
        }
    }

    #[test]
    fn unitary_phase_fluctuations_obey_uncertainty_sum(
        (n, psi) in (1usize..=8).prop_flat_map(|n| (Just(n), random_state(n + 1)))
    ) {
        // C² + S² = I for the unitary pair, so <C>² + <S>² + ΔC² + ΔS² = 1.
        let u = boson_unitary_phase(&boson_basis(n).unwrap()).unwrap();
        let c = expectation(&u.cos, &psi).unwrap();
        let s = expectation(&u.sin, &psi).unwrap();
        let dc = fluctuation(&u.cos, &psi).unwrap();
        let ds = fluctuation(&u.sin, &psi).unwrap();
        prop_assert!((c * c + s * s + dc * dc + ds * ds - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn config_round_trip(
        boson in any::<bool>(),
        n in 1usize..20,
        ubar in -10.0..10.0f64,
        tau_max in 0.1..100.0f64,
        steps in 2usize..5000,
        rk4 in any::<bool>(),
        up_up in any::<bool>(),
        amps in prop::option::of(complex_vec(3)),
    ) {
        let mut cfg = if boson {
            ScenarioConfig::boson(n, ubar)
        } else {
            ScenarioConfig::fermion(ubar, if up_up { ModePair::UpUp } else { ModePair::UpDown })
        };
        cfg.tau_max = tau_max;
        cfg.steps = steps;
        cfg.integrator = if rk4 { Integrator::Rk4 } else { Integrator::Eigen };
        if let Some(a) = amps.filter(|_| !boson) {
            let norm = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-3 {
                cfg.initial = Initial::Amplitudes(a.iter().map(|z| z / norm).collect());
            }
        }
        cfg.channels = vec!["avgW".into(), "norm".into()];
        let text = cfg.to_config_string();
        let parsed = ScenarioConfig::parse(&text).unwrap();
        prop_assert_eq!(&parsed, &cfg);
        prop_assert_eq!(parsed.to_config_string(), text);
    }
}
