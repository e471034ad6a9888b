use serde::{Deserialize, Serialize};

use super::state::{DensityMatrix, QuantumState};
use crate::error::{Error, Result};
use crate::scalar::{cx, Real};

/// Depolarizing channel on a set of qubits.
///
/// `Depolarizing { p }` replaces the named qubits by the maximally mixed
/// state with probability `p`: `ρ → (1-p)ρ + p·(I/2^k) ⊗ Tr_Q ρ`.
/// `PauliDepolarizing { p }` applies a uniformly random non-identity Pauli
/// with probability `p`, which equals the replacement form with
/// `p · 4^k / (4^k - 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NoiseChannelSpec {
    Depolarizing { p: f64 },
    PauliDepolarizing { p: f64 },
}

impl NoiseChannelSpec {
    fn replacement_probability(self, k: usize) -> f64 {
        match self {
            NoiseChannelSpec::Depolarizing { p } => p,
            NoiseChannelSpec::PauliDepolarizing { p } => {
                let d2 = (1u64 << (2 * k)) as f64;
                p * d2 / (d2 - 1.0)
            }
        }
    }
}

/// Applies `channel` to `qubits` of a mixed state.
pub fn apply_noise_channel<T: Real>(
    state: &QuantumState<T>,
    channel: NoiseChannelSpec,
    qubits: &[usize],
) -> Result<QuantumState<T>> {
    match state {
        QuantumState::Mixed(rho) => {
            let mut out = rho.clone();
            depolarize(&mut out, channel, qubits)?;
            Ok(QuantumState::Mixed(out))
        }
        QuantumState::Pure(_) => Err(Error::WrongStateKind("mixed")),
    }
}

pub(crate) fn depolarize<T: Real>(rho: &mut DensityMatrix<T>, channel: NoiseChannelSpec, qubits: &[usize]) -> Result<()> {
    if qubits.is_empty() {
        return Err(Error::InvalidConfig("channel needs at least one qubit".into()));
    }
    let mut qmask = 0usize;
    for &q in qubits {
        rho.check_qubit(q)?;
        if qmask & (1 << q) != 0 {
            return Err(Error::InvalidQubit { qubit: q, n_qubits: rho.n_qubits() });
        }
        qmask |= 1 << q;
    }
    let p = channel.replacement_probability(qubits.len());
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidConfig(format!("depolarizing probability {p} outside [0, 1]")));
    }
    if p == 0.0 {
        return Ok(());
    }
    let d = rho.dim();
    let keep = T::lit(1.0 - p);
    let mix = T::lit(p / (1u64 << qubits.len()) as f64);
    let subsets: Vec<usize> = (0..=qmask).filter(|s| s & !qmask == 0).collect();
    let data = rho.elements_mut();
    let old = data.to_vec();
    for r in 0..d {
        for c in 0..d {
            let idx = r * d + c;
            let mut v = old[idx] * keep;
            if r & qmask == c & qmask {
                let (r0, c0) = (r & !qmask, c & !qmask);
                let mut tr = cx(T::zero(), T::zero());
                for &s in &subsets {
                    tr += old[(r0 | s) * d + (c0 | s)];
                }
                v += tr * mix;
            }
            data[idx] = v;
        }
    }
    Ok(())
}
