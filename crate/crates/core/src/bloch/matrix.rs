// SPDX-License-Identifier: Apache-2.0

use nalgebra::Matrix3;
use serde::Serialize;

use super::types::{Channel, DecoherenceAxis, WalkParams};

/// Generator `A` of the linear Bloch equation `d⟨σ⟩/dt = A ⟨σ⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DynamicalMatrix {
    a: Matrix3<f64>,
}

impl DynamicalMatrix {
    pub fn from_matrix(a: Matrix3<f64>) -> Self {
        Self { a }
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.a
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.a[(row, col)]
    }

    pub fn trace(&self) -> f64 {
        self.a.trace()
    }

    /// `(c₂, c₁, c₀)` of the monic characteristic polynomial
    /// `λ³ + c₂λ² + c₁λ + c₀`, computed from the matrix invariants.
    pub fn invariants(&self) -> (f64, f64, f64) {
        let a = &self.a;
        let minors = a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)] + a[(0, 0)] * a[(2, 2)] - a[(0, 2)] * a[(2, 0)]
            + a[(1, 1)] * a[(2, 2)]
            - a[(1, 2)] * a[(2, 1)];
        (-a.trace(), minors, -a.determinant())
    }

    /// Frobenius norm, an upper bound on the spectral norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.a.norm()
    }
}

/// Bloch generator for measurement along `axis`:
/// `A = γ(r rᵀ − I) + 2Δ (e₃e₂ᵀ − e₂e₃ᵀ)`.
pub fn build_dynamical_matrix(axis: &DecoherenceAxis, params: &WalkParams) -> DynamicalMatrix {
    let [rx, ry, rz] = axis.components();
    let g = params.gamma();
    let d2 = 2.0 * params.delta();
    #[rustfmt::skip]
    let a = Matrix3::new(
        g * (rx * rx - 1.0), g * rx * ry,        g * rx * rz,
        g * rx * ry,         g * (ry * ry - 1.0), g * ry * rz - d2,
        g * rx * rz,         g * ry * rz + d2,    g * (rz * rz - 1.0),
    );
    DynamicalMatrix { a }
}

/// Bloch generator of a channel, including the randomized-axis
/// (depolarizing) average `-(2γ/3) I + 2Δ (e₃e₂ᵀ − e₂e₃ᵀ)`.
pub fn channel_matrix(channel: &Channel, params: &WalkParams) -> DynamicalMatrix {
    match channel {
        Channel::Axis(axis) => build_dynamical_matrix(axis, params),
        Channel::Depolarizing => {
            let k = -2.0 * params.gamma() / 3.0;
            let d2 = 2.0 * params.delta();
            #[rustfmt::skip]
            let a = Matrix3::new(
                k,   0.0, 0.0,
                0.0, k,   -d2,
                0.0, d2,  k,
            );
            DynamicalMatrix { a }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(delta: f64, gamma: f64) -> WalkParams {
        WalkParams::new(delta, gamma).unwrap()
    }

    #[test]
    fn dephasing_matrix() {
        let a = build_dynamical_matrix(&DecoherenceAxis::DEPHASING, &params(1.0, 1.0));
        let want = Matrix3::new(-1.0, 0.0, 0.0, 0.0, -1.0, -2.0, 0.0, 2.0, 0.0);
        assert_eq!(*a.matrix(), want);
    }

    #[test]
    fn bit_flip_matrix() {
        let a = build_dynamical_matrix(&DecoherenceAxis::BIT_FLIP, &params(1.0, 1.0));
        let want = Matrix3::new(0.0, 0.0, 0.0, 0.0, -1.0, -2.0, 0.0, 2.0, -1.0);
        assert_eq!(*a.matrix(), want);
    }

    #[test]
    fn decoherence_free_matrix_is_rotation() {
        let axis = DecoherenceAxis::normalized(0.3, -0.5, 0.8).unwrap();
        let a = build_dynamical_matrix(&axis, &params(1.5, 0.0));
        let want = Matrix3::new(0.0, 0.0, 0.0, 0.0, 0.0, -3.0, 0.0, 3.0, 0.0);
        assert_eq!(*a.matrix(), want);
    }

    #[test]
    fn trace_and_symmetric_part() {
        let axis = DecoherenceAxis::normalized(0.2, 0.7, -0.4).unwrap();
        let p = params(0.8, 2.5);
        let a = build_dynamical_matrix(&axis, &p);
        assert!((a.trace() + 2.0 * p.gamma()).abs() < 1e-12);
        let sym = (a.matrix() + a.matrix().transpose()) / 2.0;
        let mut eig: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
        eig.sort_by(f64::total_cmp);
        for (got, want) in eig.iter().zip([-p.gamma(), -p.gamma(), 0.0]) {
            assert!((got - want).abs() < 1e-12, "{eig:?}");
        }
    }

    #[test]
    fn invariants_match_printed_cubic() {
        let axis = DecoherenceAxis::normalized(0.6, 0.1, 0.3).unwrap();
        let p = params(1.3, 0.9);
        let (c2, c1, c0) = build_dynamical_matrix(&axis, &p).invariants();
        let (g, d) = (p.gamma(), p.delta());
        let eta = 1.0 - axis.x() * axis.x();
        assert!((c2 - 2.0 * g).abs() < 1e-12);
        assert!((c1 - (g * g + 4.0 * d * d)).abs() < 1e-12);
        assert!((c0 - 4.0 * g * d * d * eta).abs() < 1e-12);
    }
}
