// SPDX-License-Identifier: Apache-2.0

//! Walker-position law of an `n`-qubit register whose qubits are identical
//! and independent.

use serde::Serialize;

use super::distance::{hellinger_bound, log_binomials, register_tv, CompensatedSum};
use crate::error::{invalid, Result};

/// Product law with single-qubit probability `p0` of reading `0`; a string
/// of Hamming weight `k` has probability `(1 − p0)ᵏ p0ⁿ⁻ᵏ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegisterDistribution {
    n: u64,
    p0: f64,
}

impl RegisterDistribution {
    pub fn new(n: u64, p0: f64) -> Result<Self> {
        if n == 0 {
            return Err(invalid("register needs at least one qubit"));
        }
        if !(0.0..=1.0).contains(&p0) {
            return Err(invalid(format!("p0 must lie in [0, 1], got {p0}")));
        }
        Ok(Self { n, p0 })
    }

    /// From the single-qubit `⟨σz⟩`, with `p0 = (1 + z)/2`.
    pub fn from_sigma_z(n: u64, z: f64) -> Result<Self> {
        if !z.is_finite() || z.abs() > 1.0 + 1e-12 {
            return Err(invalid(format!("|z| must be <= 1, got {z}")));
        }
        Self::new(n, (0.5 * (1.0 + z)).clamp(0.0, 1.0))
    }

    pub fn qubits(&self) -> u64 {
        self.n
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    pub fn sigma_z(&self) -> f64 {
        2.0 * self.p0 - 1.0
    }

    fn log_string(&self, k: u64) -> f64 {
        let mut e = 0.0;
        if k > 0 {
            e += k as f64 * (1.0 - self.p0).ln();
        }
        if self.n > k {
            e += (self.n - k) as f64 * self.p0.ln();
        }
        e
    }

    /// Probability of one particular string of Hamming weight `k`.
    pub fn string_probability(&self, k: u64) -> Result<f64> {
        self.check_weight(k)?;
        Ok(self.log_string(k).exp())
    }

    /// Probability of observing Hamming weight `k`.
    pub fn weight_probability(&self, k: u64) -> Result<f64> {
        self.check_weight(k)?;
        Ok((log_binomials(self.n)[k as usize] + self.log_string(k)).exp())
    }

    /// `P(k)` for `k = 0..=n`.
    pub fn weight_law(&self) -> Vec<f64> {
        log_binomials(self.n)
            .iter()
            .enumerate()
            .map(|(k, lc)| (lc + self.log_string(k as u64)).exp())
            .collect()
    }

    /// `Σₖ P(k)`, which should be one.
    pub fn total(&self) -> f64 {
        let mut s = CompensatedSum::default();
        for p in self.weight_law() {
            s.add(p);
        }
        s.value()
    }

    pub fn tv_to_uniform(&self) -> f64 {
        register_tv(self.n, self.p0).expect("validated register")
    }

    pub fn hellinger_bound(&self) -> f64 {
        hellinger_bound(self.n, self.sigma_z().clamp(-1.0, 1.0)).expect("validated register")
    }

    fn check_weight(&self, k: u64) -> Result<()> {
        if k > self.n {
            return Err(invalid(format!("Hamming weight {k} exceeds register size {}", self.n)));
        }
        Ok(())
    }
}

/// Probability of one string of weight `k` under the decoherence-free walk
/// from the origin: `cos^{2(n−k)}(Δt) sin^{2k}(Δt)`.
pub fn coherent_distribution(n: u64, delta: f64, t: f64, k: u64) -> Result<f64> {
    if k > n {
        return Err(invalid(format!("Hamming weight {k} exceeds register size {n}")));
    }
    let (s, c) = (delta * t).sin_cos();
    let log = |x: f64, m: u64| if m == 0 { 0.0 } else { 2.0 * m as f64 * x.abs().ln() };
    Ok((log(c, n - k) + log(s, k)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn coherent_examples() {
        assert_eq!(coherent_distribution(5, 1.0, 0.0, 0).unwrap(), 1.0);
        assert_eq!(coherent_distribution(5, 1.0, 0.0, 2).unwrap(), 0.0);
        for n in [1u64, 4, 9] {
            for k in 0..=n {
                let p = coherent_distribution(n, 2.0, FRAC_PI_4 / 2.0, k).unwrap();
                assert!((p - 0.5f64.powi(n as i32)).abs() < 1e-15);
            }
        }
        let t = 0.7;
        let p = coherent_distribution(1, 1.3, t, 1).unwrap();
        assert!((p - (1.3 * t).sin().powi(2)).abs() < 1e-15);
        assert!(coherent_distribution(3, 1.0, 0.2, 4).is_err());
    }

    #[test]
    fn weight_law_examples() {
        let d = RegisterDistribution::new(2, 1.0).unwrap();
        assert_eq!(d.weight_law(), vec![1.0, 0.0, 0.0]);
        assert!((d.tv_to_uniform() - 1.5).abs() < 1e-15);
        let u = RegisterDistribution::from_sigma_z(10, 0.0).unwrap();
        assert!((u.string_probability(3).unwrap() - 2f64.powi(-10)).abs() < 1e-18);
        assert!(u.weight_probability(11).is_err());
        assert!(RegisterDistribution::new(0, 0.5).is_err());
        assert!(RegisterDistribution::new(3, -0.1).is_err());
    }

    #[test]
    fn large_register_normalizes() {
        for p0 in [1e-6, 0.2, 0.5, 0.93] {
            let d = RegisterDistribution::new(1 << 10, p0).unwrap();
            assert!((d.total() - 1.0).abs() < 1e-12, "p0={p0}");
            let big = RegisterDistribution::new(1 << 16, p0).unwrap();
            assert!((big.total() - 1.0).abs() < 1e-9, "p0={p0}");
        }
    }
}
