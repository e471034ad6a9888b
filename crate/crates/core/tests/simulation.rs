mod common;

use common::*;
use csvqe::hamiltonian::{bundled, BUNDLED_IDS};
use csvqe::pauli::{PauliString, PauliSum};
use csvqe::sim::{
    apply_noise_channel, clique_probabilities, estimate_energy, exact_ground, sample_clique, DensityMatrix,
    NoiseChannelSpec, QuantumState, StateVector,
};
use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;

fn random_state<R: Rng>(r: &mut R, n: usize) -> StateVector<f64> {
    let amps: Vec<Complex64> = (0..1 << n).map(|_| c(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))).collect();
    let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    StateVector::from_amplitudes(n, amps.into_iter().map(|z| z / norm).collect()).unwrap()
}

fn as_vector(psi: &StateVector<f64>) -> DVector<Complex64> {
    DVector::from_iterator(psi.amplitudes().len(), psi.amplitudes().iter().copied())
}

fn as_matrix(rho: &DensityMatrix<f64>) -> CMat {
    let d = rho.dim();
    CMat::from_row_slice(d, d, rho.elements())
}

#[test]
fn expectation_and_exponential_match_dense() {
    let mut r = rng(21);
    for n in 1..=3 {
        for w in all_words(n) {
            let psi = random_state(&mut r, n);
            let v = as_vector(&psi);
            let exact = (v.adjoint() * pauli_matrix(&w) * &v)[(0, 0)];
            let got = psi.pauli_expectation(&w).unwrap();
            assert!((got - exact).norm() < 1e-12);
            if w.is_identity() {
                continue;
            }
            let theta = r.random_range(-3.0..3.0);
            let mut rot = psi.clone();
            rot.apply_pauli_exponential(&w, theta).unwrap();
            let expect = pauli_exp(&w, theta) * &v;
            assert!((as_vector(&rot) - expect).norm() < 1e-12);
        }
    }
    for _ in 0..200 {
        let psi = random_state(&mut r, 5);
        let w = random_nonidentity(&mut r, 5);
        let v = as_vector(&psi);
        let mut h = PauliSum::new(5);
        h.add_term(w, 0.7).unwrap();
        h.add_term(random_word(&mut r, 5), -0.3).unwrap();
        let exact = (v.adjoint() * sum_matrix(&h) * &v)[(0, 0)].re;
        assert!((psi.expectation(&h).unwrap() - exact).abs() < 1e-10);
        let rho = DensityMatrix::from_pure(&psi);
        assert!((rho.expectation(&h).unwrap() - exact).abs() < 1e-10);
    }
}

#[test]
fn density_matrix_gates_match_conjugation() {
    let mut r = rng(4);
    let psi = random_state(&mut r, 3);
    let mut rho = DensityMatrix::from_pure(&psi);
    let m0 = as_matrix(&rho);
    rho.apply_cnot(2, 0).unwrap();
    let u = gate_matrix(&csvqe::circuit::Gate::CNOT(2, 0), 3, &[]);
    assert!(max_abs_diff(&as_matrix(&rho), &(&u * &m0 * u.adjoint())) < 1e-12);
    let w: PauliString = "XYZ".parse().unwrap();
    let before = as_matrix(&rho);
    rho.conjugate_by_pauli(&w).unwrap();
    let pm = pauli_matrix(&w);
    assert!(max_abs_diff(&as_matrix(&rho), &(&pm * &before * pm.adjoint())) < 1e-12);
}

/// Kraus form of the replacement channel: uniform Pauli twirl weight.
fn depolarize_oracle(rho: &CMat, qubits: &[usize], n: usize, p: f64) -> CMat {
    let k = qubits.len();
    let mut twirl = CMat::zeros(rho.nrows(), rho.ncols());
    for w in all_words(k) {
        let mut letters = vec!['I'; n];
        for (j, &q) in qubits.iter().enumerate() {
            letters[n - 1 - q] = w.letter(j).as_char();
        }
        let full: PauliString = letters.into_iter().collect::<String>().parse().unwrap();
        let pm = pauli_matrix(&full);
        twirl += &pm * rho * pm.adjoint();
    }
    rho * c(1.0 - p, 0.0) + twirl * c(p / 4f64.powi(k as i32), 0.0)
}

#[test]
fn depolarizing_matches_pauli_twirl() {
    let mut r = rng(9);
    for qubits in [vec![0], vec![2], vec![0, 2], vec![1, 0]] {
        let rho = DensityMatrix::from_pure(&random_state(&mut r, 3));
        let out = apply_noise_channel(&QuantumState::Mixed(rho.clone()), NoiseChannelSpec::Depolarizing { p: 0.3 }, &qubits)
            .unwrap();
        let QuantumState::Mixed(out) = out else { unreachable!() };
        let expect = depolarize_oracle(&as_matrix(&rho), &qubits, 3, 0.3);
        assert!(max_abs_diff(&as_matrix(&out), &expect) < 1e-12);
        assert!((out.trace().re - 1.0).abs() < 1e-12);
        assert!(out.hermiticity_error() < 1e-12);
    }
    // A uniformly random non-identity Pauli at rate 15/16·p is the same map.
    let rho = DensityMatrix::from_pure(&random_state(&mut r, 2));
    let s = QuantumState::Mixed(rho);
    let a = apply_noise_channel(&s, NoiseChannelSpec::Depolarizing { p: 0.4 }, &[0, 1]).unwrap().to_mixed();
    let b = apply_noise_channel(&s, NoiseChannelSpec::PauliDepolarizing { p: 0.4 * 15.0 / 16.0 }, &[0, 1]).unwrap().to_mixed();
    assert!(max_abs_diff(&as_matrix(&a), &as_matrix(&b)) < 1e-12);
}

#[test]
fn ground_energies_match_dense_hermitian_solver() {
    for id in BUNDLED_IDS {
        let h = bundled::<f64>(id).unwrap().hamiltonian();
        let (e, psi) = exact_ground(&h).unwrap();
        let m = sum_matrix(&h);
        let eig = nalgebra::SymmetricEigen::new(m.clone());
        let lowest = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        assert!((e - lowest).abs() < 1e-9, "{id}: {e} vs {lowest}");
        let v = as_vector(&psi);
        let resid = (&m * &v - &v * c(e, 0.0)).norm();
        assert!(resid < 1e-7, "{id}: residual {resid}");
    }
}

#[test]
fn single_precision_path_agrees() {
    let h64 = bundled::<f64>("h4").unwrap().hamiltonian();
    let h32 = bundled::<f32>("h4").unwrap().hamiltonian();
    let (e64, _) = exact_ground(&h64).unwrap();
    let (e32, _) = exact_ground(&h32).unwrap();
    assert!((e32 as f64 - e64).abs() < 1e-3);
}

#[test]
fn sampled_energy_is_unbiased() {
    let h = bundled::<f64>("h9").unwrap();
    let (e, psi) = exact_ground(&h.hamiltonian()).unwrap();
    let state = QuantumState::Pure(psi);
    let mut means = Vec::new();
    for seed in 0..20u64 {
        let recs: Vec<_> = h
            .cover
            .cliques
            .iter()
            .enumerate()
            .map(|(k, cl)| sample_clique(&state, cl, k, 20_000, seed * 31 + k as u64).unwrap())
            .collect();
        means.push(estimate_energy(&recs, &h.cover).unwrap());
    }
    let mean = means.iter().sum::<f64>() / means.len() as f64;
    let sd = (means.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / (means.len() - 1) as f64).sqrt();
    assert!((mean - e).abs() < 5.0 * sd / (means.len() as f64).sqrt() + 1e-12, "{mean} vs {e} (sd {sd})");
    for cl in &h.cover.cliques {
        let probs = clique_probabilities(&state, cl).unwrap();
        assert!((probs.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}
