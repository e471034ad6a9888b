//! Shot-based estimation over qubit-wise commuting cliques.
//!
//! Measuring a clique rotates every qubit into the eigenbasis of the letter
//! the clique places on it: `H` for `X`, `S†` then `H` for `Y`, nothing for
//! `Z`. Each member is then diagonal and its eigenvalue on outcome `x` is
//! `(-1)^{|x ∧ support|}`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use super::kernels;
use super::state::QuantumState;
use crate::error::{Error, Result};
use crate::pauli::{clique_is_qwc, Letter, PauliSum, QwcCliqueCover};
use crate::scalar::Real;

/// Outcome counts for one clique; outcome bit `k` is qubit `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasurementRecord {
    pub counts: BTreeMap<u64, u64>,
    pub shots: u64,
    pub basis_clique: usize,
}

impl MeasurementRecord {
    pub fn new(basis_clique: usize, counts: BTreeMap<u64, u64>) -> Self {
        let shots = counts.values().sum();
        Self { counts, shots, basis_clique }
    }

    /// Empirical mean of `(-1)^{|x ∧ mask|}`.
    pub fn parity_mean(&self, mask: u64) -> Result<f64> {
        if self.shots == 0 {
            return Err(Error::ZeroShots);
        }
        let signed: i64 = self
            .counts
            .iter()
            .map(|(&x, &c)| if (x & mask).count_ones() & 1 == 1 { -(c as i64) } else { c as i64 })
            .sum();
        Ok(signed as f64 / self.shots as f64)
    }
}

/// Per-qubit measurement letter for a QWC clique (`I` where unconstrained).
pub fn measurement_basis<T: Real>(clique: &PauliSum<T>) -> Result<Vec<Letter>> {
    if !clique_is_qwc(clique)? {
        return Err(Error::NotQubitwiseCommuting);
    }
    let n = clique.n_qubits();
    let mut basis = vec![Letter::I; n];
    for (p, _) in clique.iter() {
        for q in p.support() {
            basis[q] = p.letter(q);
        }
    }
    Ok(basis)
}

/// Rotates `state` so every clique member becomes diagonal.
pub fn rotate_to_basis<T: Real>(state: &mut QuantumState<T>, basis: &[Letter]) -> Result<()> {
    if basis.len() != state.n_qubits() {
        return Err(Error::SizeMismatch { left: state.n_qubits(), right: basis.len() });
    }
    let h = kernels::hadamard::<T>();
    let sdg = kernels::s_dagger::<T>();
    for (q, l) in basis.iter().enumerate() {
        match l {
            Letter::X => state.apply_1q(q, &h)?,
            Letter::Y => {
                state.apply_1q(q, &sdg)?;
                state.apply_1q(q, &h)?;
            }
            Letter::Z | Letter::I => {}
        }
    }
    Ok(())
}

/// Exact Born distribution of the clique measurement.
pub fn clique_probabilities<T: Real>(state: &QuantumState<T>, clique: &PauliSum<T>) -> Result<Vec<T>> {
    if clique.n_qubits() != state.n_qubits() {
        return Err(Error::SizeMismatch { left: state.n_qubits(), right: clique.n_qubits() });
    }
    let basis = measurement_basis(clique)?;
    let mut rotated = state.clone();
    rotate_to_basis(&mut rotated, &basis)?;
    Ok(rotated.probabilities())
}

/// Multinomial draw of `shots` outcomes via sequential binomials.
///
/// Negative or tiny negative round-off entries are treated as zero.
pub fn sample_distribution<R: Rng + ?Sized>(probs: &[f64], shots: u64, rng: &mut R) -> BTreeMap<u64, u64> {
    let mut counts = BTreeMap::new();
    let mut remaining = shots;
    let mut mass: f64 = probs.iter().map(|p| p.max(0.0)).sum();
    for (x, &p) in probs.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        let p = p.max(0.0);
        let k = if x == probs.len() - 1 || mass <= p {
            remaining
        } else if p <= 0.0 {
            0
        } else {
            let q = (p / mass).clamp(0.0, 1.0);
            Binomial::new(remaining, q).map(|b| b.sample(rng)).unwrap_or(0)
        };
        if k > 0 {
            counts.insert(x as u64, k);
        }
        remaining -= k;
        mass -= p;
    }
    counts
}

/// Samples one clique from the exact Born distribution; deterministic in `seed`.
pub fn sample_clique<T: Real>(
    state: &QuantumState<T>,
    clique: &PauliSum<T>,
    clique_index: usize,
    shots: u64,
    seed: u64,
) -> Result<MeasurementRecord> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let probs: Vec<f64> = clique_probabilities(state, clique)?.into_iter().map(Real::as_f64).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(MeasurementRecord {
        counts: sample_distribution(&probs, shots, &mut rng),
        shots,
        basis_clique: clique_index,
    })
}

/// Identity coefficient plus every clique term weighted by its empirical
/// eigenvalue mean.
pub fn estimate_energy<T: Real>(records: &[MeasurementRecord], cover: &QwcCliqueCover<T>) -> Result<T> {
    let mut energy = cover.identity_coeff;
    for (i, clique) in cover.cliques.iter().enumerate() {
        let rec = records.iter().find(|r| r.basis_clique == i).ok_or(Error::MissingRecord(i))?;
        for (p, &c) in clique.iter() {
            energy += c * T::lit(rec.parity_mean(p.support_mask())?);
        }
    }
    Ok(energy)
}

/// Clique energy `Σ c·⟨(-1)^{|x∧s|}⟩` over a (possibly signed) distribution,
/// with the single-shot variance of that observable.
pub fn clique_estimate<T: Real>(clique: &PauliSum<T>, dist: &[T]) -> (T, T) {
    let mut mean = T::zero();
    let mut second = T::zero();
    for (x, &w) in dist.iter().enumerate() {
        if w == T::zero() {
            continue;
        }
        let mut o = T::zero();
        for (p, &c) in clique.iter() {
            if ((x as u64) & p.support_mask()).count_ones() & 1 == 1 {
                o -= c;
            } else {
                o += c;
            }
        }
        mean += w * o;
        second += w * o * o;
    }
    (mean, (second - mean * mean).max(T::zero()))
}

/// Splitmix-style seed derivation for named streams such as
/// `(clique, λ, tile)`.
pub fn derive_seed(seed: u64, stream: &[u64]) -> u64 {
    let mut h = seed ^ 0x9E37_79B9_7F4A_7C15;
    for &s in stream {
        h = mix(h ^ mix(s.wrapping_add(0x632B_E59B_D9B4_E019)));
    }
    h
}

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
