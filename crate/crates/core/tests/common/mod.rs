//! Dense-matrix oracles shared by the integration tests.
#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use csvqe::circuit::{Circuit, Gate};
use csvqe::pauli::{Letter, PauliString};

pub type CMat = DMatrix<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn letter_matrix(l: Letter) -> CMat {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    match l {
        Letter::I => CMat::from_row_slice(2, 2, &[o, z, z, o]),
        Letter::X => CMat::from_row_slice(2, 2, &[z, o, o, z]),
        Letter::Y => CMat::from_row_slice(2, 2, &[z, -i, i, z]),
        Letter::Z => CMat::from_row_slice(2, 2, &[o, z, z, -o]),
    }
}

/// Operator on `n` qubits with `m` acting on qubit `q` (basis bit `q`).
pub fn embed_1q(m: &CMat, q: usize, n: usize) -> CMat {
    let mut out = CMat::identity(1, 1);
    for k in (0..n).rev() {
        let f = if k == q { m.clone() } else { CMat::identity(2, 2) };
        out = out.kronecker(&f);
    }
    out
}

/// Full matrix of a word, including its phase.
pub fn pauli_matrix(p: &PauliString) -> CMat {
    let n = p.n_qubits();
    let mut out = CMat::identity(1, 1);
    for q in (0..n).rev() {
        out = out.kronecker(&letter_matrix(p.letter(q)));
    }
    let phase = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)][p.phase().power() as usize];
    out * phase
}

pub fn sum_matrix(h: &csvqe::pauli::PauliSum<f64>) -> CMat {
    let d = 1 << h.n_qubits();
    let mut out = CMat::zeros(d, d);
    for (p, &w) in h.iter() {
        out += pauli_matrix(p) * c(w, 0.0);
    }
    out
}

pub fn random_word<R: Rng>(r: &mut R, n: usize) -> PauliString {
    let letters: String = (0..n).map(|_| ['I', 'X', 'Y', 'Z'][r.random_range(0..4)]).collect();
    letters.parse().unwrap()
}

pub fn random_nonidentity<R: Rng>(r: &mut R, n: usize) -> PauliString {
    loop {
        let p = random_word(r, n);
        if !p.is_identity() {
            return p;
        }
    }
}

pub fn all_words(n: usize) -> Vec<PauliString> {
    (0..4usize.pow(n as u32))
        .map(|mut k| {
            let s: String = (0..n)
                .map(|_| {
                    let ch = ['I', 'X', 'Y', 'Z'][k % 4];
                    k /= 4;
                    ch
                })
                .collect();
            s.parse().unwrap()
        })
        .collect()
}

fn rz(phi: f64) -> CMat {
    CMat::from_row_slice(2, 2, &[Complex64::from_polar(1.0, -phi / 2.0), c(0.0, 0.0), c(0.0, 0.0), Complex64::from_polar(1.0, phi / 2.0)])
}

/// Matrix of `|1⟩⟨1|` on `q` when `one`, `|0⟩⟨0|` otherwise.
fn projector(q: usize, n: usize, one: bool) -> CMat {
    let p = if one {
        CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])
    } else {
        CMat::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
    };
    embed_1q(&p, q, n)
}

pub fn gate_matrix(g: &Gate, n: usize, params: &[f64]) -> CMat {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    match *g {
        Gate::X(q) => embed_1q(&letter_matrix(Letter::X), q, n),
        Gate::H(q) => embed_1q(&CMat::from_row_slice(2, 2, &[c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)]), q, n),
        Gate::SX(q) => embed_1q(
            &CMat::from_row_slice(2, 2, &[c(0.5, 0.5), c(0.5, -0.5), c(0.5, -0.5), c(0.5, 0.5)]),
            q,
            n,
        ),
        Gate::RZ(q, a) => embed_1q(&rz(a.value(params).unwrap()), q, n),
        Gate::CNOT(ct, t) => {
            projector(ct, n, false) + projector(ct, n, true) * embed_1q(&letter_matrix(Letter::X), t, n)
        }
        Gate::CP(a, b, ang) => {
            let phi = ang.value(params).unwrap();
            let d = 1 << n;
            let mut m = CMat::identity(d, d);
            for i in 0..d {
                if i >> a & 1 == 1 && i >> b & 1 == 1 {
                    m[(i, i)] = Complex64::from_polar(1.0, phi);
                }
            }
            m
        }
    }
}

pub fn circuit_unitary(circ: &Circuit, params: &[f64]) -> CMat {
    let d = 1 << circ.n_qubits();
    let mut u = CMat::identity(d, d);
    for g in circ.gates() {
        u = gate_matrix(g, circ.n_qubits(), params) * u;
    }
    u
}

/// `e^{iθP} = cos θ + i sin θ P` for a Hermitian word.
pub fn pauli_exp(p: &PauliString, theta: f64) -> CMat {
    let d = 1 << p.n_qubits();
    CMat::identity(d, d) * c(theta.cos(), 0.0) + pauli_matrix(p) * c(0.0, theta.sin())
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `|Tr(A†B)| / d`, equal to 1 iff the unitaries agree up to global phase.
pub fn phase_fidelity(a: &CMat, b: &CMat) -> f64 {
    (a.adjoint() * b).trace().norm() / a.nrows() as f64
}

pub fn basis_column(d: usize, k: usize) -> nalgebra::DVector<Complex64> {
    let mut v = nalgebra::DVector::from_element(d, c(0.0, 0.0));
    v[k] = c(1.0, 0.0);
    v
}

pub fn random_state<R: Rng>(r: &mut R, n: usize) -> csvqe::StateVector {
    let amps = (0..1usize << n).map(|_| c(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))).collect();
    csvqe::StateVector::from_amplitudes(n, amps).unwrap()
}

pub fn random_sum<R: Rng>(r: &mut R, n: usize, terms: usize) -> csvqe::PauliSum {
    let mut h = csvqe::PauliSum::new(n);
    for _ in 0..terms {
        h.add_term(random_word(r, n), r.random_range(-1.0..1.0)).unwrap();
    }
    h
}
