// SPDX-License-Identifier: Apache-2.0

//! Dense complex helpers: Paulis, Kronecker products and column-stacking
//! vectorization, for which `vec(A X B) = (Bᵀ ⊗ A) vec(X)`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::bloch::DecoherenceAxis;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

pub fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO])
}

pub fn pauli_y() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[ZERO, -I, I, ZERO])
}

pub fn pauli_z() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE])
}

/// `r · σ`.
pub fn axis_operator(axis: &DecoherenceAxis) -> CMatrix {
    let [x, y, z] = axis.components();
    pauli_x() * Complex64::from(x) + pauli_y() * Complex64::from(y) + pauli_z() * Complex64::from(z)
}

/// Projectors `(I ± r·σ)/2` onto the two outcomes along `axis`.
pub fn axis_projectors(axis: &DecoherenceAxis) -> [CMatrix; 2] {
    let r = axis_operator(axis);
    let id = identity(2);
    [(&id + &r) * Complex64::from(0.5), (&id - &r) * Complex64::from(0.5)]
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// `op` acting on qubit `k` (0 = most significant) of an `n`-qubit register.
pub fn embed(op: &CMatrix, k: usize, n: usize) -> CMatrix {
    let d = op.nrows();
    let left = identity(d.pow(k as u32));
    let right = identity(d.pow((n - k - 1) as u32));
    kron(&kron(&left, op), &right)
}

/// Stacks the columns of `m`.
pub fn vectorize(m: &CMatrix) -> CVector {
    assert!(m.is_square(), "vectorize expects a square matrix");
    CVector::from_column_slice(m.as_slice())
}

/// Inverse of [`vectorize`].
pub fn devectorize(v: &CVector) -> CMatrix {
    let d = (v.len() as f64).sqrt().round() as usize;
    assert_eq!(d * d, v.len(), "vector length is not a square");
    CMatrix::from_column_slice(d, d, v.as_slice())
}

/// Largest absolute entry of `a − b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).iter().map(|c| c.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_matrix(seed: u64, d: usize) -> CMatrix {
        // Small LCG; test data only.
        let mut s = seed;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        CMatrix::from_fn(d, d, |_, _| Complex64::new(next(), next()))
    }

    #[test]
    fn identity_vectorizes_to_unit_pattern() {
        let v = vectorize(&identity(2));
        let want = [ONE, ZERO, ZERO, ONE];
        assert_eq!(v.as_slice(), &want);
    }

    #[test]
    fn sandwich_identity() {
        let (a, x, b) = (random_matrix(1, 2), random_matrix(2, 2), random_matrix(3, 2));
        let lhs = vectorize(&(&a * &x * &b));
        let rhs = kron(&b.transpose(), &a) * vectorize(&x);
        let diff = (lhs - rhs).iter().map(|c| c.norm()).fold(0.0, f64::max);
        assert!(diff < 1e-14);
    }

    #[test]
    fn conjugation_by_unitary() {
        // vec(U X U†) = (U* ⊗ U) vec(X).
        let h = pauli_x() * Complex64::from(0.7);
        let u = crate::expm::expm(&(h * Complex64::new(0.0, -1.0)));
        let x = random_matrix(9, 2);
        let lhs = vectorize(&(&u * &x * u.adjoint()));
        let rhs = kron(&u.conjugate(), &u) * vectorize(&x);
        let diff = (lhs - rhs).iter().map(|c| c.norm()).fold(0.0, f64::max);
        assert!(diff < 1e-14);
    }

    #[test]
    fn round_trip() {
        let m = random_matrix(4, 4);
        assert_eq!(devectorize(&vectorize(&m)), m);
    }

    #[test]
    fn projectors_resolve_identity() {
        let axis = DecoherenceAxis::normalized(0.3, -0.2, 0.9).unwrap();
        let [p, q] = axis_projectors(&axis);
        assert!(max_abs_diff(&(&p + &q), &identity(2)) < 1e-15);
        assert!(max_abs_diff(&(&p * &p), &p) < 1e-15);
        assert!((&p * &q).iter().all(|c| c.norm() < 1e-15));
    }
}
