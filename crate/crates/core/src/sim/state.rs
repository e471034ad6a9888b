use serde::{Deserialize, Serialize};

use super::kernels::{self, Mat2};
use crate::error::{Error, Result};
use crate::pauli::{PauliString, PauliSum};
use crate::scalar::{cx, i_pow, Cx, Real};

/// Register size cap for dense simulation.
pub const MAX_SIM_QUBITS: usize = 14;

fn check_register(n: usize) -> Result<()> {
    if n == 0 || n > MAX_SIM_QUBITS {
        return Err(Error::TooManyQubits { n, max: MAX_SIM_QUBITS });
    }
    Ok(())
}

/// Residual tolerance used when asserting that an expectation is real.
fn imag_tolerance<T: Real>(scale: T) -> T {
    let floor = T::lit(1e-10).max(T::epsilon() * T::lit(1e4));
    floor * (T::one() + scale)
}

/// Dense pure state; amplitude index bit `k` is qubit `k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateVector<T> {
    n_qubits: usize,
    amps: Vec<Cx<T>>,
}

impl<T: Real> StateVector<T> {
    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_register(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::InvalidQubit { qubit: index, n_qubits });
        }
        let mut amps = vec![cx(T::zero(), T::zero()); dim];
        amps[index] = cx(T::one(), T::zero());
        Ok(Self { n_qubits, amps })
    }

    /// Wraps raw amplitudes, normalizing them.
    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Cx<T>>) -> Result<Self> {
        check_register(n_qubits)?;
        if amps.len() != 1usize << n_qubits {
            return Err(Error::SizeMismatch { left: n_qubits, right: amps.len().trailing_zeros() as usize });
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<T>().sqrt();
        if norm == T::zero() || !norm.is_finite() {
            return Err(Error::InvalidConfig("state has zero or non-finite norm".into()));
        }
        Ok(Self { n_qubits, amps: amps.into_iter().map(|a| a / norm).collect() })
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn amplitudes(&self) -> &[Cx<T>] {
        &self.amps
    }

    pub fn norm(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn inner(&self, other: &Self) -> Result<Cx<T>> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::SizeMismatch { left: self.n_qubits, right: other.n_qubits });
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// `|⟨self|other⟩|`, insensitive to global phase.
    pub fn fidelity(&self, other: &Self) -> Result<T> {
        Ok(self.inner(other)?.norm())
    }

    pub fn probabilities(&self) -> Vec<T> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    fn check(&self, n: usize) -> Result<()> {
        if n != self.n_qubits {
            return Err(Error::SizeMismatch { left: self.n_qubits, right: n });
        }
        Ok(())
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n_qubits {
            return Err(Error::InvalidQubit { qubit: q, n_qubits: self.n_qubits });
        }
        Ok(())
    }

    /// `P|ψ⟩` including the phase carried by `p`.
    pub fn pauli_image(&self, p: &PauliString) -> Result<Self> {
        self.check(p.n_qubits())?;
        let amps = kernels::pauli_image(&self.amps, p.x_bits(), p.z_bits(), p.phase().power(), 0);
        Ok(Self { n_qubits: self.n_qubits, amps })
    }

    /// `|ψ⟩ ← e^{iθP}|ψ⟩ = cos θ |ψ⟩ + i sin θ P|ψ⟩` for a Hermitian word.
    pub fn apply_pauli_exponential(&mut self, p: &PauliString, theta: T) -> Result<()> {
        self.check(p.n_qubits())?;
        if !p.phase().is_real() {
            return Err(Error::NonHermitian("imaginary"));
        }
        let image = kernels::pauli_image(&self.amps, p.x_bits(), p.z_bits(), p.phase().power(), 0);
        let c = theta.cos();
        let s = cx(T::zero(), theta.sin());
        for (a, b) in self.amps.iter_mut().zip(image) {
            *a = *a * c + s * b;
        }
        Ok(())
    }

    /// `⟨ψ|P|ψ⟩` for a single phase-free word.
    pub fn pauli_expectation(&self, p: &PauliString) -> Result<Cx<T>> {
        self.check(p.n_qubits())?;
        Ok(pure_pauli_expectation(&self.amps, p))
    }

    /// Real part of `⟨ψ|H|ψ⟩`.
    pub fn expectation(&self, h: &PauliSum<T>) -> Result<T> {
        self.check(h.n_qubits())?;
        let mut acc = cx(T::zero(), T::zero());
        let mut scale = T::zero();
        for (p, &c) in h.iter() {
            acc += pure_pauli_expectation(&self.amps, p) * c;
            scale += c.abs();
        }
        debug_assert!(acc.im.abs() <= imag_tolerance(scale), "complex expectation {acc}");
        Ok(acc.re)
    }

    pub fn apply_1q(&mut self, q: usize, m: &Mat2<T>) -> Result<()> {
        self.check_qubit(q)?;
        kernels::apply_1q(&mut self.amps, q, m);
        Ok(())
    }

    pub fn apply_cnot(&mut self, control: usize, target: usize) -> Result<()> {
        self.check_qubit(control)?;
        self.check_qubit(target)?;
        kernels::apply_cnot(&mut self.amps, control, target);
        Ok(())
    }

    pub fn apply_cphase(&mut self, a: usize, b: usize, phi: T) -> Result<()> {
        self.check_qubit(a)?;
        self.check_qubit(b)?;
        kernels::apply_cphase(&mut self.amps, a, b, cx(phi.cos(), phi.sin()));
        Ok(())
    }
}

fn pure_pauli_expectation<T: Real>(amps: &[Cx<T>], p: &PauliString) -> Cx<T> {
    let xm = p.x_bits() as usize;
    let zm = p.z_bits() as usize;
    let base: Cx<T> = i_pow(p.phase().power().wrapping_add(p.y_count() as u8));
    let mut acc = cx(T::zero(), T::zero());
    for (j, &a) in amps.iter().enumerate() {
        let term = amps[j ^ xm].conj() * a;
        if (j & zm).count_ones() & 1 == 1 {
            acc -= term;
        } else {
            acc += term;
        }
    }
    acc * base
}

/// Dense density matrix, row-major; element `(r, c)` sits at `r·2^n + c`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityMatrix<T> {
    n_qubits: usize,
    data: Vec<Cx<T>>,
}

impl<T: Real> DensityMatrix<T> {
    pub fn zero(n_qubits: usize) -> Result<Self> {
        Ok(Self::from_pure(&StateVector::zero(n_qubits)?))
    }

    pub fn from_pure(psi: &StateVector<T>) -> Self {
        let dim = 1usize << psi.n_qubits;
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(psi.amps[r] * psi.amps[c].conj());
            }
        }
        Self { n_qubits: psi.n_qubits, data }
    }

    pub fn from_elements(n_qubits: usize, data: Vec<Cx<T>>) -> Result<Self> {
        check_register(n_qubits)?;
        if data.len() != 1usize << (2 * n_qubits) {
            return Err(Error::InvalidConfig("density matrix has wrong dimension".into()));
        }
        Ok(Self { n_qubits, data })
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn dim(&self) -> usize {
        1usize << self.n_qubits
    }

    #[inline]
    pub fn elements(&self) -> &[Cx<T>] {
        &self.data
    }

    pub(crate) fn elements_mut(&mut self) -> &mut [Cx<T>] {
        &mut self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Cx<T> {
        self.data[r * self.dim() + c]
    }

    pub fn trace(&self) -> Cx<T> {
        (0..self.dim()).map(|i| self.get(i, i)).sum()
    }

    pub fn hermiticity_error(&self) -> T {
        let d = self.dim();
        let mut worst = T::zero();
        for r in 0..d {
            for c in r..d {
                worst = worst.max((self.get(r, c) - self.get(c, r).conj()).norm());
            }
        }
        worst
    }

    /// Diagonal in the computational basis.
    pub fn probabilities(&self) -> Vec<T> {
        (0..self.dim()).map(|i| self.get(i, i).re).collect()
    }

    fn check(&self, n: usize) -> Result<()> {
        if n != self.n_qubits {
            return Err(Error::SizeMismatch { left: self.n_qubits, right: n });
        }
        Ok(())
    }

    pub(crate) fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n_qubits {
            return Err(Error::InvalidQubit { qubit: q, n_qubits: self.n_qubits });
        }
        Ok(())
    }

    /// `Tr(ρP)`.
    pub fn pauli_expectation(&self, p: &PauliString) -> Result<Cx<T>> {
        self.check(p.n_qubits())?;
        let d = self.dim();
        let xm = p.x_bits() as usize;
        let zm = p.z_bits() as usize;
        let base: Cx<T> = i_pow(p.phase().power().wrapping_add(p.y_count() as u8));
        let mut acc = cx(T::zero(), T::zero());
        for j in 0..d {
            let term = self.data[j * d + (j ^ xm)];
            if (j & zm).count_ones() & 1 == 1 {
                acc -= term;
            } else {
                acc += term;
            }
        }
        Ok(acc * base)
    }

    /// Real part of `Tr(ρH)`.
    pub fn expectation(&self, h: &PauliSum<T>) -> Result<T> {
        self.check(h.n_qubits())?;
        let mut acc = cx(T::zero(), T::zero());
        let mut scale = T::zero();
        for (p, &c) in h.iter() {
            acc += self.pauli_expectation(p)? * c;
            scale += c.abs();
        }
        debug_assert!(acc.im.abs() <= imag_tolerance(scale), "complex expectation {acc}");
        Ok(acc.re)
    }

    /// `ρ ← UρU†` for a single-qubit unitary.
    pub fn apply_1q(&mut self, q: usize, m: &Mat2<T>) -> Result<()> {
        self.check_qubit(q)?;
        let n = self.n_qubits;
        kernels::apply_1q(&mut self.data, n + q, m);
        kernels::apply_1q(&mut self.data, q, &kernels::conj2(m));
        Ok(())
    }

    pub fn apply_cnot(&mut self, control: usize, target: usize) -> Result<()> {
        self.check_qubit(control)?;
        self.check_qubit(target)?;
        let n = self.n_qubits;
        kernels::apply_cnot(&mut self.data, n + control, n + target);
        kernels::apply_cnot(&mut self.data, control, target);
        Ok(())
    }

    pub fn apply_cphase(&mut self, a: usize, b: usize, phi: T) -> Result<()> {
        self.check_qubit(a)?;
        self.check_qubit(b)?;
        let n = self.n_qubits;
        let ph = cx(phi.cos(), phi.sin());
        kernels::apply_cphase(&mut self.data, n + a, n + b, ph);
        kernels::apply_cphase(&mut self.data, a, b, ph.conj());
        Ok(())
    }

    /// `ρ ← PρP†` for a Pauli word.
    pub fn conjugate_by_pauli(&mut self, p: &PauliString) -> Result<()> {
        self.check(p.n_qubits())?;
        let n = self.n_qubits;
        let left = kernels::pauli_image(&self.data, p.x_bits(), p.z_bits(), p.phase().power(), n);
        // Right multiplication by P† applies conj(P) to the column index:
        // conj(i^{ph+#Y}) = i^{-ph-2#Y} · i^{#Y}, and the kernel adds the i^{#Y}.
        let conj_phase = (4 - p.phase().power() + 2 * (p.y_count() as u8 & 1)) & 3;
        self.data = kernels::pauli_image(&left, p.x_bits(), p.z_bits(), conj_phase, 0);
        Ok(())
    }
}

/// Pure or mixed register state.
#[derive(Clone, Debug, PartialEq)]
pub enum QuantumState<T> {
    Pure(StateVector<T>),
    Mixed(DensityMatrix<T>),
}

impl<T: Real> QuantumState<T> {
    pub fn n_qubits(&self) -> usize {
        match self {
            QuantumState::Pure(s) => s.n_qubits(),
            QuantumState::Mixed(r) => r.n_qubits(),
        }
    }

    pub fn probabilities(&self) -> Vec<T> {
        match self {
            QuantumState::Pure(s) => s.probabilities(),
            QuantumState::Mixed(r) => r.probabilities(),
        }
    }

    pub fn to_mixed(&self) -> DensityMatrix<T> {
        match self {
            QuantumState::Pure(s) => DensityMatrix::from_pure(s),
            QuantumState::Mixed(r) => r.clone(),
        }
    }

    pub fn apply_1q(&mut self, q: usize, m: &Mat2<T>) -> Result<()> {
        match self {
            QuantumState::Pure(s) => s.apply_1q(q, m),
            QuantumState::Mixed(r) => r.apply_1q(q, m),
        }
    }
}

/// Returns `e^{iθP}|ψ⟩`; pure states only.
pub fn apply_pauli_exponential<T: Real>(
    state: &QuantumState<T>,
    p: &PauliString,
    theta: T,
) -> Result<QuantumState<T>> {
    match state {
        QuantumState::Pure(s) => {
            let mut out = s.clone();
            out.apply_pauli_exponential(p, theta)?;
            Ok(QuantumState::Pure(out))
        }
        QuantumState::Mixed(_) => Err(Error::WrongStateKind("pure")),
    }
}

/// `⟨ψ|H|ψ⟩` or `Tr(ρH)`.
pub fn expectation<T: Real>(state: &QuantumState<T>, h: &PauliSum<T>) -> Result<T> {
    match state {
        QuantumState::Pure(s) => s.expectation(h),
        QuantumState::Mixed(r) => r.expectation(h),
    }
}
