// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;

use super::generator::{check_capacity, physical_register_generator};
use super::linalg::{
    axis_projectors, devectorize, embed, identity, kron, pauli_x, pauli_y, pauli_z, vectorize, CMatrix,
};
use super::state::DensityMatrix;
use crate::bloch::{Channel, WalkParams};
use crate::error::{Error, Result};
use crate::expm::expm;

/// `exp(𝒜 t) ρ0` for the `n`-qubit register, with `𝒜` acting on the
/// column-stacked full state.
pub fn integrate_master(
    n: usize,
    channel: impl Into<Channel>,
    params: &WalkParams,
    rho0: &DensityMatrix,
    t: f64,
) -> Result<DensityMatrix> {
    check_capacity(n)?;
    if rho0.qubits() != n {
        return Err(Error::InvalidParameter(format!(
            "initial state has {} qubits, register has {n}",
            rho0.qubits()
        )));
    }
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "time must be finite and >= 0, got {t}"
        )));
    }
    if t == 0.0 {
        return Ok(rho0.clone());
    }
    let a = physical_register_generator(n, channel, params)?;
    let propagator = expm(&(a.matrix() * Complex64::from(t)));
    DensityMatrix::repaired(devectorize(&(propagator * vectorize(rho0.matrix()))))
}

/// Measurement projectors per qubit, each list summing to `Σ P = 1` with
/// weights: two projectors for a fixed axis, six (weight 1/3) for the
/// randomized axis.
fn outcome_projectors(channel: &Channel) -> Vec<(CMatrix, f64)> {
    match channel {
        Channel::Axis(axis) => axis_projectors(axis).into_iter().map(|p| (p, 1.0)).collect(),
        Channel::Depolarizing => {
            let id = identity(2);
            [pauli_x(), pauli_y(), pauli_z()]
                .into_iter()
                .flat_map(|s| {
                    let up = (&id + &s) * Complex64::from(0.5);
                    let down = (&id - &s) * Complex64::from(0.5);
                    [(up, 1.0 / 3.0), (down, 1.0 / 3.0)]
                })
                .collect()
        }
    }
}

/// One weak-measurement step of length `tau`:
/// `(1 − nγτ) σ + γτ Σ_k Σ_α P_α^{(k)} σ P_α^{(k)}` with `σ = U ρ U†` and
/// `U = ⊗_k exp(−iΔτ σx)` evaluated exactly.
pub fn discrete_weak_step(
    state: &DensityMatrix,
    channel: impl Into<Channel>,
    params: &WalkParams,
    tau: f64,
) -> Result<DensityMatrix> {
    let channel = channel.into();
    let n = state.qubits();
    let p = params.gamma() * tau;
    if !(tau.is_finite() && tau >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "step must be finite and >= 0, got {tau}"
        )));
    }
    if n as f64 * p > 1.0 {
        return Err(Error::InvalidParameter(format!(
            "measurement probability n*gamma*tau = {} exceeds 1",
            n as f64 * p
        )));
    }
    let (c, s) = ((params.delta() * tau).cos(), (params.delta() * tau).sin());
    let u1 = identity(2) * Complex64::from(c) - pauli_x() * Complex64::new(0.0, s);
    let mut u = u1.clone();
    for _ in 1..n {
        u = kron(&u, &u1);
    }
    let sigma = &u * state.matrix() * u.adjoint();
    let mut next = &sigma * Complex64::from(1.0 - n as f64 * p);
    if p > 0.0 {
        let projectors = outcome_projectors(&channel);
        for k in 0..n {
            for (proj, w) in &projectors {
                let pk = embed(proj, k, n);
                next += &pk * &sigma * &pk * Complex64::from(p * w);
            }
        }
    }
    DensityMatrix::repaired(next)
}

/// Applies [`discrete_weak_step`] `steps` times.
pub fn iterate_weak_steps(
    state: &DensityMatrix,
    channel: impl Into<Channel>,
    params: &WalkParams,
    tau: f64,
    steps: usize,
) -> Result<DensityMatrix> {
    let channel = channel.into();
    let mut rho = state.clone();
    for _ in 0..steps {
        rho = discrete_weak_step(&rho, channel, params, tau)?;
    }
    Ok(rho)
}
