//! Dense statevector and density-matrix simulation.

mod eigen;
pub(crate) mod kernels;
pub use kernels::Mat2;
mod measure;
mod noise;
mod state;

pub use eigen::{dense_matrix, exact_ground, symmetric_eigen};
pub use measure::{
    clique_estimate, clique_probabilities, derive_seed, estimate_energy, measurement_basis, rotate_to_basis,
    sample_clique, sample_distribution, MeasurementRecord,
};
pub use noise::{apply_noise_channel, NoiseChannelSpec};
pub(crate) use noise::depolarize;
pub use state::{apply_pauli_exponential, expectation, DensityMatrix, QuantumState, StateVector, MAX_SIM_QUBITS};
