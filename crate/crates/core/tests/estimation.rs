mod common;

use common::*;
use csvqe::hamiltonian::bundled;
use csvqe::sim::{apply_noise_channel, estimate_energy, exact_ground, sample_clique, NoiseChannelSpec, QuantumState};
use csvqe::DensityMatrix;
use rand::Rng;

#[test]
fn ground_energy_bounds_random_states() {
    let h = bundled::<f64>("h3").unwrap().hamiltonian();
    let (e0, _) = exact_ground(&h).unwrap();
    let mut r = rng(60);
    for _ in 0..500 {
        assert!(random_state(&mut r, 5).expectation(&h).unwrap() >= e0 - 1e-9);
    }
}

#[test]
fn rotations_about_one_axis_compose() {
    let mut r = rng(61);
    for _ in 0..100 {
        let p = random_nonidentity(&mut r, 5);
        let (a, b) = (r.random_range(-3.0..3.0), r.random_range(-3.0..3.0));
        let psi = random_state(&mut r, 5);
        let mut two = psi.clone();
        two.apply_pauli_exponential(&p, a).unwrap();
        two.apply_pauli_exponential(&p, b).unwrap();
        let mut one = psi;
        one.apply_pauli_exponential(&p, a + b).unwrap();
        assert!(two.amplitudes().iter().zip(one.amplitudes()).all(|(x, y)| (x - y).norm() < 1e-10));
        assert!((two.norm() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn repeated_pauli_channels_add_up() {
    let mut r = rng(62);
    for &p in &[0.01, 0.1, 0.3] {
        let rho = QuantumState::Mixed(DensityMatrix::from_pure(&random_state(&mut r, 2)));
        let twice = apply_noise_channel(&rho, NoiseChannelSpec::PauliDepolarizing { p }, &[1]).unwrap();
        let twice = apply_noise_channel(&twice, NoiseChannelSpec::PauliDepolarizing { p }, &[1]).unwrap().to_mixed();
        let once = apply_noise_channel(&rho, NoiseChannelSpec::PauliDepolarizing { p: 2.0 * p - 4.0 / 3.0 * p * p }, &[1])
            .unwrap()
            .to_mixed();
        let diff = twice.elements().iter().zip(once.elements()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(diff < 1e-12);
        let full = apply_noise_channel(&rho, NoiseChannelSpec::Depolarizing { p: 1.0 }, &[0]).unwrap().to_mixed();
        assert!((full.trace().re - 1.0).abs() < 1e-12);
    }
    let pure = QuantumState::Pure(random_state(&mut r, 2));
    assert!(apply_noise_channel(&pure, NoiseChannelSpec::Depolarizing { p: 0.1 }, &[0]).is_err());
}

#[test]
fn shot_noise_shrinks_as_inverse_root() {
    let h = bundled::<f64>("h0").unwrap();
    let psi = random_state(&mut rng(63), 5);
    let exact = psi.expectation(&h.hamiltonian()).unwrap();
    let state = QuantumState::Pure(psi);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for shots in [10_000u64, 100_000, 1_000_000] {
        let reps = 40;
        let mut mse = 0.0;
        for rep in 0..reps {
            let recs: Vec<_> = h
                .cover
                .cliques
                .iter()
                .enumerate()
                .map(|(k, cl)| sample_clique(&state, cl, k, shots, shots ^ (rep * 97 + k as u64)).unwrap())
                .collect();
            mse += (estimate_energy(&recs, &h.cover).unwrap() - exact).powi(2) / reps as f64;
        }
        xs.push((shots as f64).ln());
        ys.push(mse.sqrt().ln());
    }
    let slope1 = (ys[1] - ys[0]) / (xs[1] - xs[0]);
    let slope2 = (ys[2] - ys[1]) / (xs[2] - xs[1]);
    let slope = (ys[2] - ys[0]) / (xs[2] - xs[0]);
    assert!(ys[2] < ys[1] && ys[1] < ys[0]);
    assert!((slope + 0.5).abs() < 0.1, "{slope} ({slope1}, {slope2})");
}

#[test]
fn sampling_is_seed_deterministic() {
    let h = bundled::<f64>("h9").unwrap();
    let state = QuantumState::Pure(random_state(&mut rng(64), 5));
    let a = sample_clique(&state, &h.cover.cliques[0], 0, 1000, 5).unwrap();
    let b = sample_clique(&state, &h.cover.cliques[0], 0, 1000, 5).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.counts.values().sum::<u64>(), 1000);
    assert!(sample_clique(&state, &h.cover.cliques[0], 0, 0, 5).is_err());
    assert!(estimate_energy(&[a], &h.cover).is_err());
}
