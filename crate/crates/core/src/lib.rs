//! Adaptive variational eigensolver workbench for five-qubit reduced N₂
//! Hamiltonians.
//!
//! The numerical core is generic over the real scalar (`f32` or `f64`);
//! the aliases below fix it to `f64`.

pub mod adapt;
pub mod circuit;
pub mod degeneracy;
pub mod error;
pub mod hamiltonian;
pub mod pauli;
pub mod qem;
pub mod scalar;
pub mod sim;
pub mod topology;

pub use error::{Error, Result};

pub type PauliSum = pauli::PauliSum<f64>;
pub type QwcCliqueCover = pauli::QwcCliqueCover<f64>;
pub type LabeledHamiltonian = hamiltonian::LabeledHamiltonian<f64>;
pub type StateVector = sim::StateVector<f64>;
pub type DensityMatrix = sim::DensityMatrix<f64>;
pub type QuantumState = sim::QuantumState<f64>;
pub type AdaptResult = adapt::AdaptResult<f64>;

pub type PauliSum32 = pauli::PauliSum<f32>;
pub type LabeledHamiltonian32 = hamiltonian::LabeledHamiltonian<f32>;
pub type StateVector32 = sim::StateVector<f32>;
pub type DensityMatrix32 = sim::DensityMatrix<f32>;
