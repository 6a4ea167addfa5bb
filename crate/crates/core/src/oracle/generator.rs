// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;

use super::linalg::{axis_operator, embed, identity, kron, pauli_x, pauli_y, pauli_z, CMatrix};
use super::state::Superoperator;
use crate::bloch::{Channel, WalkParams};
use crate::error::{Error, Result};

/// Largest register handled by the dense oracle.
pub const MAX_DENSE_QUBITS: usize = 3;

const I: Complex64 = Complex64::new(0.0, 1.0);

pub(crate) fn check_capacity(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("register needs at least one qubit".into()));
    }
    if n > MAX_DENSE_QUBITS {
        return Err(Error::Capacity {
            requested: n,
            limit: MAX_DENSE_QUBITS,
        });
    }
    Ok(())
}

/// `iΔ[σx ⊗ I − I ⊗ σx]`.
pub fn coherent_generator(params: &WalkParams) -> CMatrix {
    let (sx, id) = (pauli_x(), identity(2));
    (kron(&sx, &id) - kron(&id, &sx)) * (I * params.delta())
}

/// Jump operators `L` and weight `w` with dissipator `Σ w (L ρ L − ρ)`.
pub(crate) fn jump_operators(channel: &Channel, gamma: f64) -> (Vec<CMatrix>, f64) {
    match channel {
        Channel::Axis(axis) => (vec![axis_operator(axis)], 0.5 * gamma),
        Channel::Depolarizing => (vec![pauli_x(), pauli_y(), pauli_z()], gamma / 6.0),
    }
}

/// Single-qubit generator on column-stacked `2 × 2` states:
/// `iΔ[σx⊗I − I⊗σx] − (γ/2) I + (γ/2)(r·σ)* ⊗ (r·σ)`, with the projector
/// term replaced by `(γ/6) Σ_α σα* ⊗ σα` for the depolarizing channel.
pub fn single_qubit_generator(channel: impl Into<Channel>, params: &WalkParams) -> Superoperator {
    let channel = channel.into();
    let gamma = params.gamma();
    let (ops, w) = jump_operators(&channel, gamma);
    let mut a = coherent_generator(params) - identity(4) * Complex64::from(0.5 * gamma);
    for l in &ops {
        a += kron(&l.conjugate(), l) * Complex64::from(w);
    }
    Superoperator::from_matrix(a)
}

/// [`single_qubit_generator`] for the depolarizing channel.
pub fn depolarizing_generator(params: &WalkParams) -> Superoperator {
    single_qubit_generator(Channel::Depolarizing, params)
}

/// `Σ_k I₄^{⊗k} ⊗ 𝒜̄ ⊗ I₄^{⊗(n−k−1)}` in the qubit-paired basis, where the
/// factor for qubit `k` acts on its own column-stacked `2 × 2` block.
pub fn register_generator(n: usize, channel: impl Into<Channel>, params: &WalkParams) -> Result<Superoperator> {
    check_capacity(n)?;
    let single = single_qubit_generator(channel, params);
    let d = 4usize.pow(n as u32);
    let mut a = CMatrix::zeros(d, d);
    for k in 0..n {
        a += embed(single.matrix(), k, n);
    }
    Ok(Superoperator::from_matrix(a))
}

/// Generator acting on the column-stacked full `2ⁿ × 2ⁿ` register state:
/// `−i(I ⊗ H − Hᵀ ⊗ I) + Σ_k Σ_L w (L_k* ⊗ L_k − I)` with `H = Δ Σ_k σx^{(k)}`.
pub fn physical_register_generator(
    n: usize,
    channel: impl Into<Channel>,
    params: &WalkParams,
) -> Result<Superoperator> {
    check_capacity(n)?;
    let channel = channel.into();
    let dim = 1usize << n;
    let id = identity(dim);
    let mut h = CMatrix::zeros(dim, dim);
    for k in 0..n {
        h += embed(&pauli_x(), k, n) * Complex64::from(params.delta());
    }
    let mut a = (kron(&id, &h) - kron(&h.transpose(), &id)) * (-I);
    let (ops, w) = jump_operators(&channel, params.gamma());
    let id_super = identity(dim * dim);
    for k in 0..n {
        for l in &ops {
            let lk = embed(l, k, n);
            a += (kron(&lk.conjugate(), &lk) - &id_super) * Complex64::from(w);
        }
    }
    Ok(Superoperator::from_matrix(a))
}

/// Position in the column-stacked full state of each qubit-paired index.
///
/// Paired index `Σ_k a_k 4^{n−k−1}` with `a_k = i_k + 2 j_k` maps to
/// `I + 2ⁿ J`, where `I = Σ_k i_k 2^{n−k−1}` and likewise for `J`.
pub fn paired_to_physical(n: usize) -> Vec<usize> {
    let dim = 1usize << n;
    (0..dim * dim)
        .map(|paired| {
            let (mut row, mut col) = (0, 0);
            for k in 0..n {
                let a = (paired >> (2 * (n - k - 1))) & 3;
                row |= (a & 1) << (n - k - 1);
                col |= (a >> 1) << (n - k - 1);
            }
            row + dim * col
        })
        .collect()
}

/// Permutation matrix `P` with `vec_physical = P vec_paired`.
pub fn shuffle_matrix(n: usize) -> CMatrix {
    let map = paired_to_physical(n);
    let mut p = CMatrix::zeros(map.len(), map.len());
    for (paired, &phys) in map.iter().enumerate() {
        p[(phys, paired)] = Complex64::from(1.0);
    }
    p
}
