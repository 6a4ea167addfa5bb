// SPDX-License-Identifier: Apache-2.0

use nalgebra::SymmetricEigen;
use num_complex::Complex64;

use super::linalg::{devectorize, kron, vectorize, CMatrix};
use crate::bloch::BlochVector;
use crate::error::{Error, Result};
use crate::expm::expm;

/// Hermiticity and trace tolerance for physical states.
pub const STATE_TOLERANCE: f64 = 1e-12;
/// Most negative eigenvalue accepted for a physical state.
pub const POSITIVITY_TOLERANCE: f64 = 1e-10;

/// Density matrix of an `n`-qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    rho: CMatrix,
    qubits: usize,
}

fn qubits_of(dim: usize) -> Option<usize> {
    (dim.is_power_of_two() && dim >= 2).then(|| dim.trailing_zeros() as usize)
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(rho: CMatrix) -> Result<Self> {
        let qubits = match (rho.is_square(), qubits_of(rho.nrows())) {
            (true, Some(q)) => q,
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "density matrix must be 2^n square, got {}x{}",
                    rho.nrows(),
                    rho.ncols()
                )))
            }
        };
        let state = Self { rho, qubits };
        let herm = state.hermiticity_defect();
        if herm > STATE_TOLERANCE {
            return Err(Error::InvalidParameter(format!(
                "state is not Hermitian (defect {herm:e})"
            )));
        }
        let trace_defect = (state.trace() - 1.0).abs();
        if trace_defect > STATE_TOLERANCE {
            return Err(Error::InvalidParameter(format!(
                "trace deviates from one by {trace_defect:e}"
            )));
        }
        let min = state.min_eigenvalue();
        if min < -POSITIVITY_TOLERANCE {
            return Err(Error::InvalidParameter(format!("negative eigenvalue {min:e}")));
        }
        Ok(state)
    }

    /// `|0…0⟩⟨0…0|`.
    pub fn ground(qubits: usize) -> Self {
        let d = 1 << qubits;
        let mut rho = CMatrix::zeros(d, d);
        rho[(0, 0)] = Complex64::new(1.0, 0.0);
        Self { rho, qubits }
    }

    /// `½(I + x σx + y σy + z σz)`.
    pub fn from_bloch(v: &BlochVector) -> Result<Self> {
        let (x, y, z) = (v.x, v.y, v.z);
        let rho = CMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(0.5 * (1.0 + z), 0.0),
                Complex64::new(0.5 * x, -0.5 * y),
                Complex64::new(0.5 * x, 0.5 * y),
                Complex64::new(0.5 * (1.0 - z), 0.0),
            ],
        );
        Self::new(rho)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.rho
    }

    pub fn dim(&self) -> usize {
        self.rho.nrows()
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn trace(&self) -> f64 {
        self.rho.trace().re
    }

    /// `max |ρ − ρ†|`.
    pub fn hermiticity_defect(&self) -> f64 {
        (&self.rho - self.rho.adjoint())
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let herm = (&self.rho + self.rho.adjoint()) * Complex64::from(0.5);
        SymmetricEigen::new(herm)
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    /// Computational-basis probabilities.
    pub fn probabilities(&self) -> Vec<f64> {
        self.rho.diagonal().iter().map(|c| c.re).collect()
    }

    /// `(⟨σx⟩, ⟨σy⟩, ⟨σz⟩)` of a single qubit.
    pub fn bloch_vector(&self) -> Option<BlochVector> {
        (self.qubits == 1).then(|| {
            let r = &self.rho;
            BlochVector::new(2.0 * r[(1, 0)].re, 2.0 * r[(1, 0)].im, (r[(0, 0)] - r[(1, 1)]).re)
        })
    }

    /// `½ ‖ρ − σ‖₁`.
    pub fn trace_distance(&self, other: &DensityMatrix) -> f64 {
        let diff = &self.rho - &other.rho;
        let herm = (&diff + diff.adjoint()) * Complex64::from(0.5);
        0.5 * SymmetricEigen::new(herm)
            .eigenvalues
            .iter()
            .map(|l| l.abs())
            .sum::<f64>()
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix {
            rho: kron(&self.rho, &other.rho),
            qubits: self.qubits + other.qubits,
        }
    }

    /// Symmetrizes and renormalizes a near-physical matrix. Fails when the
    /// Hermiticity or trace defect exceeds [`STATE_TOLERANCE`].
    pub(crate) fn repaired(rho: CMatrix) -> Result<Self> {
        let qubits = qubits_of(rho.nrows()).ok_or_else(|| Error::Integration("bad dimension".into()))?;
        let raw = Self { rho, qubits };
        let herm = raw.hermiticity_defect();
        let trace_defect = (raw.trace() - 1.0).abs();
        if herm > STATE_TOLERANCE || trace_defect > STATE_TOLERANCE {
            return Err(Error::Integration(format!(
                "state drifted: hermiticity {herm:e}, trace {trace_defect:e}"
            )));
        }
        let sym = (&raw.rho + raw.rho.adjoint()) * Complex64::from(0.5);
        let tr = sym.trace().re;
        let state = Self {
            rho: sym / Complex64::from(tr),
            qubits,
        };
        let min = state.min_eigenvalue();
        if min < -POSITIVITY_TOLERANCE {
            return Err(Error::Integration(format!("negative eigenvalue {min:e}")));
        }
        Ok(state)
    }
}

/// Linear map on column-stacked density matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct Superoperator {
    matrix: CMatrix,
}

impl Superoperator {
    pub fn from_matrix(matrix: CMatrix) -> Self {
        assert!(matrix.is_square(), "superoperator must be square");
        Self { matrix }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Dimension of the vectorized space, `4ⁿ`.
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn qubits(&self) -> usize {
        (self.dim().trailing_zeros() / 2) as usize
    }

    /// `exp(t 𝒜)`.
    pub fn propagator(&self, t: f64) -> Superoperator {
        Superoperator {
            matrix: expm(&(&self.matrix * Complex64::from(t))),
        }
    }

    /// Applies the map to `ρ` without validating the result.
    pub fn apply(&self, rho: &CMatrix) -> CMatrix {
        devectorize(&(&self.matrix * vectorize(rho)))
    }

    pub fn tensor(&self, other: &Superoperator) -> Superoperator {
        Superoperator {
            matrix: kron(&self.matrix, &other.matrix),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unphysical_states() {
        let mut m = CMatrix::identity(2, 2) * Complex64::from(0.5);
        m[(0, 1)] = Complex64::new(0.1, 0.0);
        assert!(DensityMatrix::new(m.clone()).is_err());
        m[(1, 0)] = Complex64::new(0.1, 0.0);
        assert!(DensityMatrix::new(m.clone()).is_ok());
        let neg = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex64::from(1.2),
            Complex64::from(-0.2),
        ]));
        assert!(DensityMatrix::new(neg).is_err());
        assert!(DensityMatrix::new(CMatrix::identity(3, 3) / Complex64::from(3.0)).is_err());
    }

    #[test]
    fn bloch_round_trip() {
        let v = BlochVector::new(0.3, -0.4, 0.5);
        let rho = DensityMatrix::from_bloch(&v).unwrap();
        let back = rho.bloch_vector().unwrap();
        assert!((back.x - v.x).abs() < 1e-15 && (back.y - v.y).abs() < 1e-15 && (back.z - v.z).abs() < 1e-15);
    }

    #[test]
    fn trace_distance_of_orthogonal_states() {
        let up = DensityMatrix::from_bloch(&BlochVector::new(0.0, 0.0, 1.0)).unwrap();
        let down = DensityMatrix::from_bloch(&BlochVector::new(0.0, 0.0, -1.0)).unwrap();
        assert!((up.trace_distance(&down) - 1.0).abs() < 1e-14);
        assert_eq!(up.tensor(&down).qubits(), 2);
    }
}
