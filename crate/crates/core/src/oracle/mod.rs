// SPDX-License-Identifier: Apache-2.0

//! Dense density-matrix oracle for registers of up to three qubits.

pub mod evolve;
pub mod generator;
pub mod linalg;
pub mod randomized;
pub mod state;

pub use evolve::{discrete_weak_step, integrate_master, iterate_weak_steps};
pub use generator::{
    coherent_generator, depolarizing_generator, paired_to_physical, physical_register_generator, register_generator,
    shuffle_matrix, single_qubit_generator, MAX_DENSE_QUBITS,
};
pub use linalg::{devectorize, vectorize, CMatrix, CVector};
pub use randomized::{depolarizing_generator_via_sampling, SampledGenerator, MIN_SAMPLES};
pub use state::{DensityMatrix, Superoperator, POSITIVITY_TOLERANCE, STATE_TOLERANCE};
