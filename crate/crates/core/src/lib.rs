// SPDX-License-Identifier: Apache-2.0

//! Mixing analysis for the continuous-time quantum walk on the n-dimensional
//! hypercube under single-qubit projective decoherence.
//!
//! The walk on `2^n` nodes is a register of `n` non-interacting qubits, each
//! driven by `Δ σx` and measured along a decoherence axis `r` at rate `γ`.
//! Every qubit therefore follows the same three-dimensional Bloch equation
//! `d⟨σ⟩/dt = A ⟨σ⟩`, and every register quantity reduces to `⟨σz(t)⟩` of a
//! single qubit.
//!
//! * [`bloch`] builds `A`, solves its characteristic cubic, classifies the
//!   Zeno / no-Zeno region and evaluates the Bloch trajectory.
//! * [`mixing`] turns `⟨σz(t)⟩` into total-variation distances and the
//!   instantaneous, classical and time-averaged mixing times.
//! * [`oracle`] is a brute-force density-matrix layer (vectorized master
//!   equation, discrete weak measurements, randomized axes) used to
//!   cross-check the closed forms.

pub mod bloch;
pub mod error;
pub mod expm;
pub mod mixing;
pub mod oracle;
pub mod quadrature;
pub mod sampling;
mod scan;

pub use bloch::{
    BlochSystem, BlochVector, Channel, DecoherenceAxis, DynamicalMatrix, Region, SpecialChannel, SpectralData,
    WalkParams,
};
pub use error::{Error, Result};
pub use mixing::{Envelope, Mixing, MixingReport, RegisterDistribution};
pub use oracle::{DensityMatrix, Superoperator};
