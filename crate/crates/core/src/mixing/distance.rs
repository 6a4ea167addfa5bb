// SPDX-License-Identifier: Apache-2.0

//! Distances to the uniform distribution. Total variation here is the
//! unnormalized `Σ |p − q|`, which ranges over `[0, 2]`.

use std::f64::consts::LN_2;

use crate::error::{invalid, Result};

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// `ln C(n, k)` for `k = 0..=n`, accumulated from both ends so each entry
/// carries at most `min(k, n − k)` rounding steps.
pub(crate) fn log_binomials(n: u64) -> Vec<f64> {
    let mut out = vec![0.0; n as usize + 1];
    let mut acc = 0.0;
    for k in 1..=n / 2 {
        acc += ((n - k + 1) as f64).ln() - (k as f64).ln();
        out[k as usize] = acc;
        out[(n - k) as usize] = acc;
    }
    out
}

/// TV of one qubit with `⟨σz⟩ = z` from the fair coin: `|z|`.
pub fn single_qubit_tv(z: f64) -> f64 {
    debug_assert!(z.abs() <= 1.0 + 1e-9);
    z.abs()
}

fn check_register(n: u64, p0: f64) -> Result<()> {
    if n == 0 {
        return Err(invalid("register needs at least one qubit"));
    }
    if !(0.0..=1.0).contains(&p0) {
        return Err(invalid(format!("p0 must lie in [0, 1], got {p0}")));
    }
    Ok(())
}

/// `Σₖ C(n,k) |(1 − p0)ᵏ p0ⁿ⁻ᵏ − 2⁻ⁿ|`.
///
/// With `e = k ln 2q + (n−k) ln 2p`, each term `C(n,k) 2⁻ⁿ |eᵉ − 1|` is
/// evaluated as `exp(ln C(n,k) − n ln 2 + max(e, 0)) · (1 − e^{−|e|})`, so
/// the sum vanishes exactly at `p0 = ½` and never overflows.
pub fn register_tv(n: u64, p0: f64) -> Result<f64> {
    check_register(n, p0)?;
    let (lp, lq) = ((2.0 * p0).ln(), (2.0 * (1.0 - p0)).ln());
    let logs = log_binomials(n);
    let mut sum = CompensatedSum::default();
    for (k, lc) in logs.iter().enumerate() {
        let k = k as u64;
        let mut e = 0.0;
        if k > 0 {
            e += k as f64 * lq;
        }
        if n > k {
            e += (n - k) as f64 * lp;
        }
        let base = lc - n as f64 * LN_2;
        sum.add((base + e.max(0.0)).exp() * -(-e.abs()).exp_m1());
    }
    Ok(sum.value())
}

/// `ln[(√(1 − z) + √(1 + z)) / 2]`, the per-qubit Bhattacharyya
/// coefficient with the uniform law, without cancellation near `z = 0`.
fn log_overlap(z: f64) -> f64 {
    let up = z / ((1.0 + z).sqrt() + 1.0);
    let down = -z / ((1.0 - z).sqrt() + 1.0);
    (0.5 * (up + down)).ln_1p()
}

/// `√(4[1 − 2⁻ⁿ(√(1 − z) + √(1 + z))ⁿ])`, twice the Hellinger distance
/// `H² = ½ Σ (√P − √U)²` of the product law from uniform.
///
/// This is not an upper bound on [`register_tv`] for small `|z|` (at
/// `n = 1`, `z = 0.1` it is 0.0708 against a distance of 0.1); see
/// [`register_tv_bound`].
pub fn hellinger_bound(n: u64, z: f64) -> Result<f64> {
    check_z(z)?;
    if n == 0 {
        return Err(invalid("register needs at least one qubit"));
    }
    let inner = -(n as f64 * log_overlap(z)).exp_m1();
    Ok((4.0 * inner).max(0.0).sqrt())
}

/// `√2 ×` [`hellinger_bound`], which does dominate [`register_tv`]:
/// `Σ|P − U| ≤ 2√2 H`.
pub fn register_tv_bound(n: u64, z: f64) -> Result<f64> {
    Ok(std::f64::consts::SQRT_2 * hellinger_bound(n, z)?)
}

/// Second-order form `√(4 − 4(1 − z²/8)ⁿ)` of [`hellinger_bound`].
pub fn hellinger_bound_small_z(n: u64, z: f64) -> f64 {
    let inner = -(n as f64 * (-z * z / 8.0).ln_1p()).exp_m1();
    (4.0 * inner).max(0.0).sqrt()
}

fn check_z(z: f64) -> Result<()> {
    if !(z.is_finite() && z.abs() <= 1.0 + 1e-12) {
        return Err(invalid(format!("|z| must be <= 1, got {z}")));
    }
    Ok(())
}

/// `Σ |p − q|` over a common support.
pub fn total_variation(p: &[f64], q: &[f64]) -> f64 {
    assert_eq!(p.len(), q.len(), "distributions on different supports");
    let mut s = CompensatedSum::default();
    for (a, b) in p.iter().zip(q) {
        s.add((a - b).abs());
    }
    s.value()
}

/// Hellinger distance with `H² = ½ Σ (√p − √q)²`.
pub fn hellinger(p: &[f64], q: &[f64]) -> f64 {
    assert_eq!(p.len(), q.len(), "distributions on different supports");
    let mut s = CompensatedSum::default();
    for (a, b) in p.iter().zip(q) {
        let d = a.max(0.0).sqrt() - b.max(0.0).sqrt();
        s.add(d * d);
    }
    (0.5 * s.value()).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct enumeration over all `2ⁿ` strings.
    fn brute_register_tv(n: u32, p0: f64) -> f64 {
        (0u64..1 << n)
            .map(|s| {
                let k = s.count_ones() as i32;
                ((1.0 - p0).powi(k) * p0.powi(n as i32 - k) - 0.5f64.powi(n as i32)).abs()
            })
            .sum()
    }

    #[test]
    fn single_qubit_examples() {
        assert_eq!(single_qubit_tv(0.0), 0.0);
        assert_eq!(single_qubit_tv(1.0), 1.0);
        assert_eq!(single_qubit_tv(0.5), 0.5);
        assert_eq!(single_qubit_tv(-0.25), 0.25);
    }

    #[test]
    fn register_examples() {
        for n in [1, 5, 64, 1024] {
            assert_eq!(register_tv(n, 0.5).unwrap(), 0.0);
        }
        assert!((register_tv(2, 1.0).unwrap() - 1.5).abs() < 1e-15);
        assert!((register_tv(1, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((register_tv(1, 0.75).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn register_matches_enumeration() {
        for n in [1, 2, 3, 7, 12] {
            for p0 in [0.0, 0.1, 0.37, 0.5, 0.61, 0.999, 1.0] {
                let got = register_tv(n as u64, p0).unwrap();
                let want = brute_register_tv(n, p0);
                assert!((got - want).abs() < 1e-13, "n={n} p0={p0}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn register_stays_finite_for_large_registers() {
        let v = register_tv(1 << 12, 0.6).unwrap();
        assert!(v.is_finite() && v > 1.99 && v <= 2.0);
        let w = register_tv(1 << 12, 0.5 + 1e-9).unwrap();
        assert!(w > 0.0 && w < 1e-5);
    }

    #[test]
    fn register_rejects_bad_input() {
        assert!(register_tv(0, 0.5).is_err());
        assert!(register_tv(3, 1.5).is_err());
        assert!(hellinger_bound(2, 1.5).is_err());
    }

    #[test]
    fn hellinger_bound_examples() {
        assert_eq!(hellinger_bound(5, 0.0).unwrap(), 0.0);
        let b = hellinger_bound(1, 1.0).unwrap();
        let want = (4.0 * (1.0 - 2f64.sqrt() / 2.0)).sqrt();
        assert!((b - want).abs() < 1e-15);
        assert!((b - 1.08239).abs() < 1e-5);
        assert!(register_tv(1, 1.0).unwrap() <= b);
    }

    #[test]
    fn small_z_expansion() {
        for n in [1u64, 10, 100] {
            let z = 1e-3;
            let exact = hellinger_bound(n, z).unwrap();
            let approx = hellinger_bound_small_z(n, z);
            assert!(((exact - approx) / exact).abs() < 1e-5, "n={n}");
        }
    }

    #[test]
    fn printed_bound_undershoots_near_uniform() {
        let tv = register_tv(1, 0.55).unwrap();
        let bound = hellinger_bound(1, 0.1).unwrap();
        assert!((tv - 0.1).abs() < 1e-15);
        assert!((bound - 0.070_821_660_236_6).abs() < 1e-12);
        assert!(register_tv_bound(1, 0.1).unwrap() >= tv);
    }

    #[test]
    fn hellinger_of_product_law_matches_closed_form() {
        let (n, p0) = (6u32, 0.8f64);
        let p: Vec<f64> = (0u64..1 << n)
            .map(|s| {
                let k = s.count_ones() as i32;
                (1.0 - p0).powi(k) * p0.powi(n as i32 - k)
            })
            .collect();
        let u = vec![0.5f64.powi(n as i32); p.len()];
        let h = hellinger(&p, &u);
        let z = 2.0 * p0 - 1.0;
        assert!((2.0 * h - hellinger_bound(n as u64, z).unwrap()).abs() < 1e-13);
    }
}
