// SPDX-License-Identifier: Apache-2.0

//! Single-qubit Bloch dynamics `d⟨σ⟩/dt = A ⟨σ⟩`.

pub mod closed_form;
pub mod cubic;
pub mod dynamics;
pub mod matrix;
pub mod spectrum;
pub mod types;
pub mod witness;

pub use closed_form::{closed_form_special, damping, Damping, SpecialChannel};
pub use dynamics::{propagate, sigma_z, BlochSystem, Mode, Term, DEGENERACY_GAP};
pub use matrix::{build_dynamical_matrix, channel_matrix, DynamicalMatrix};
pub use spectrum::{
    channel_spectrum, characteristic_coefficients, chebyshev_roots, classify_region, discriminant, discriminant_eta,
    eigenvalues, zeno_boundary, Region, SpectralData, BOUNDARY_TOLERANCE,
};
pub use types::{BlochVector, Channel, DecoherenceAxis, WalkParams, AXIS_TOLERANCE};
pub use witness::{instantaneous_mixing_witness, REFINE_TOLERANCE};
