// SPDX-License-Identifier: Apache-2.0

//! Point sets on the Bloch sphere.

use rand::Rng;
use std::f64::consts::{PI, TAU};

use crate::bloch::DecoherenceAxis;

/// `n` nearly equal-area points on the unit sphere (golden-angle spiral).
pub fn fibonacci_sphere(n: usize) -> Vec<DecoherenceAxis> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let rho = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden * i as f64;
            DecoherenceAxis::normalized(rho * phi.cos(), rho * phi.sin(), z).expect("spiral point is nonzero")
        })
        .collect()
}

/// Area-uniform random axis: `φ` uniform on `[0, 2π)`, `cos θ` uniform on
/// `[−1, 1]`.
pub fn uniform_axis<R: Rng + ?Sized>(rng: &mut R) -> DecoherenceAxis {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..TAU);
    let rho = (1.0 - z * z).max(0.0).sqrt();
    DecoherenceAxis::normalized(rho * phi.cos(), rho * phi.sin(), z).expect("unit vector")
}
