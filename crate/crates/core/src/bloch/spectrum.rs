// SPDX-License-Identifier: Apache-2.0

//! Spectrum of the Bloch generator and the Zeno / no-Zeno classification.
//!
//! For an axis channel the characteristic polynomial is
//! `λ³ + 2γλ² + (γ² + 4Δ²)λ + 4γΔ²η` with `η = 1 − r_x²`, so the spectrum
//! depends on the axis only through `r_x`. Its discriminant (sign flipped so
//! that positive means an oscillating pair) is evaluated in terms of
//! `u = r_x²`:
//!
//! `Λ = 16Δ² [27γ²Δ²u² + γ²(γ² − 18Δ²)u + Δ²(16Δ² − γ²)]`,
//!
//! which is the same quadratic as the η-form but avoids the cancellation of
//! the `γ⁶` terms.

use num_complex::Complex64;
use serde::Serialize;

use super::cubic::{solve_monic, CubicRoots};
use super::types::{Channel, WalkParams};
use crate::error::{invalid, Result};

/// Relative threshold (against the magnitude of the summed terms) under
/// which the discriminant is treated as zero.
pub const BOUNDARY_TOLERANCE: f64 = 1e-9;

/// Eigenvalue type of the Bloch generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    /// All eigenvalues real: no oscillation in `⟨σz(t)⟩`.
    Zeno,
    /// One real eigenvalue and a complex-conjugate pair.
    NoZeno,
    /// Discriminant zero within tolerance (repeated eigenvalues).
    Boundary,
}

impl Region {
    pub fn as_str(&self) -> &'static str {
        match self {
            Region::Zeno => "zeno",
            Region::NoZeno => "no_zeno",
            Region::Boundary => "boundary",
        }
    }
}

/// Eigenvalues of the Bloch generator with their classification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralData {
    /// `[λ₁, λ₂ = λ₁*, λ₃ real]` in the no-Zeno case, otherwise three real
    /// values in descending order.
    pub eigenvalues: [Complex64; 3],
    /// `Λ`: positive when a complex pair exists.
    pub discriminant: f64,
    /// `η = 1 − r_x²`; absent for the depolarizing channel.
    pub eta: Option<f64>,
    pub region: Region,
    /// Largest deviation from the Chebyshev closed form, where that form is
    /// real-valued (`γ² > 12Δ²` and `|m| ≤ 1`).
    pub chebyshev_deviation: Option<f64>,
}

impl SpectralData {
    pub fn max_real_part(&self) -> f64 {
        self.eigenvalues.iter().map(|l| l.re).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn max_imag_part(&self) -> f64 {
        self.eigenvalues.iter().map(|l| l.im.abs()).fold(0.0, f64::max)
    }

    pub fn max_modulus(&self) -> f64 {
        self.eigenvalues.iter().map(|l| l.norm()).fold(0.0, f64::max)
    }

    /// Smallest pairwise distance between eigenvalues.
    pub fn min_gap(&self) -> f64 {
        let l = &self.eigenvalues;
        (l[0] - l[1]).norm().min((l[0] - l[2]).norm()).min((l[1] - l[2]).norm())
    }
}

fn check_rx(r_x: f64) -> Result<()> {
    if !(r_x.is_finite() && r_x.abs() <= 1.0 + 1e-12) {
        return Err(invalid(format!("|r_x| must be <= 1, got {r_x}")));
    }
    Ok(())
}

/// `(2γ, γ² + 4Δ², 4γΔ²(1 − r_x²))`.
pub fn characteristic_coefficients(params: &WalkParams, r_x: f64) -> Result<(f64, f64, f64)> {
    check_rx(r_x)?;
    let (g, d) = (params.gamma(), params.delta());
    let eta = (1.0 - r_x * r_x).max(0.0);
    Ok((2.0 * g, g * g + 4.0 * d * d, 4.0 * g * d * d * eta))
}

/// `Λ` and the magnitude of its summed terms.
fn discriminant_with_scale(params: &WalkParams, r_x: f64) -> (f64, f64) {
    let (g2, d2) = (params.gamma().powi(2), params.delta().powi(2));
    let u = (r_x * r_x).min(1.0);
    let quad = 27.0 * g2 * d2 * u * u;
    let lin_hi = g2 * g2 * u;
    let lin_lo = 18.0 * g2 * d2 * u;
    let c_hi = 16.0 * d2 * d2;
    let c_lo = d2 * g2;
    let value = 16.0 * d2 * (quad + (lin_hi - lin_lo) + (c_hi - c_lo));
    let scale = 16.0 * d2 * (quad + lin_hi + lin_lo + c_hi + c_lo);
    (value, scale)
}

/// `Λ(η)` of the characteristic cubic as a function of `r_x`.
pub fn discriminant(params: &WalkParams, r_x: f64) -> Result<f64> {
    check_rx(r_x)?;
    Ok(discriminant_with_scale(params, r_x).0)
}

/// `Λ(η)` in its expanded η-polynomial form
/// `432γ²Δ⁴η² − (16γ⁴Δ² + 576γ²Δ⁴)η + 4(γ² + 4Δ²)³ − 4γ²(γ² + 4Δ²)²`.
pub fn discriminant_eta(params: &WalkParams, eta: f64) -> f64 {
    let (g2, d2) = (params.gamma().powi(2), params.delta().powi(2));
    let s = g2 + 4.0 * d2;
    432.0 * g2 * d2 * d2 * eta * eta - (16.0 * g2 * g2 * d2 + 576.0 * g2 * d2 * d2) * eta
        + (4.0 * s * s * s - 4.0 * g2 * s * s)
}

fn region_from(value: f64, scale: f64) -> Region {
    if value.abs() <= BOUNDARY_TOLERANCE * scale {
        Region::Boundary
    } else if value > 0.0 {
        Region::NoZeno
    } else {
        Region::Zeno
    }
}

pub fn classify_region(params: &WalkParams, r_x: f64) -> Result<Region> {
    check_rx(r_x)?;
    let (value, scale) = discriminant_with_scale(params, r_x);
    Ok(region_from(value, scale))
}

/// Chebyshev cube-root form of the three real eigenvalues,
/// `λ₁ = 2s cos(arccos(m)/3) − 2γ/3`, `λ₂ = −2s cos(arccos(−m)/3) − 2γ/3`,
/// `λ₃ = −λ₁ − λ₂ − 2γ` with `s = √((γ² − 12Δ²)/9)`.
///
/// Returns `None` where the form is not real-valued.
pub fn chebyshev_roots(params: &WalkParams, r_x: f64) -> Option<[f64; 3]> {
    let (g, d) = (params.gamma(), params.delta());
    let big = g * g - 12.0 * d * d;
    if big <= 0.0 {
        return None;
    }
    let m = g / big.powf(1.5) * (g * g + 18.0 * d * d * (3.0 * r_x * r_x - 1.0));
    if m.is_nan() || m.abs() > 1.0 {
        return None;
    }
    let s = (big / 9.0).sqrt();
    let l1 = 2.0 * s * (m.acos() / 3.0).cos() - 2.0 * g / 3.0;
    let l2 = -2.0 * s * ((-m).acos() / 3.0).cos() - 2.0 * g / 3.0;
    let l3 = -l1 - l2 - 2.0 * g;
    Some([l1, l2, l3])
}

fn from_roots(roots: CubicRoots, discriminant: f64, eta: Option<f64>, region: Region) -> SpectralData {
    SpectralData {
        eigenvalues: roots.to_complex(),
        discriminant,
        eta,
        region,
        chebyshev_deviation: None,
    }
}

/// Spectrum of an axis channel with the given `r_x`.
pub fn eigenvalues(params: &WalkParams, r_x: f64) -> Result<SpectralData> {
    let (c2, c1, c0) = characteristic_coefficients(params, r_x)?;
    let roots = solve_monic(c2, c1, c0);
    let (value, scale) = discriminant_with_scale(params, r_x);
    let eta = (1.0 - r_x * r_x).max(0.0);
    let mut data = from_roots(roots, value, Some(eta), region_from(value, scale));
    if let (Some(mut closed), CubicRoots::Real(solved)) = (chebyshev_roots(params, r_x), roots) {
        closed.sort_by(|a, b| b.total_cmp(a));
        let dev = closed
            .iter()
            .zip(solved.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        data.chebyshev_deviation = Some(dev);
    }
    Ok(data)
}

/// Spectrum for any channel (depolarizing included).
pub fn channel_spectrum(channel: &Channel, params: &WalkParams) -> SpectralData {
    match channel {
        Channel::Axis(axis) => eigenvalues(params, axis.x()).expect("unit axis has |r_x| <= 1"),
        Channel::Depolarizing => {
            // Roots μ and μ ± 2iΔ with μ = −2γ/3; Λ = −Π(λᵢ − λⱼ)² = 4(2Δ)⁶.
            let mu = -2.0 * params.gamma() / 3.0;
            let omega = 2.0 * params.delta();
            let value = 4.0 * omega.powi(6);
            let roots = if omega > 0.0 {
                CubicRoots::Mixed {
                    pair: Complex64::new(mu, omega),
                    real: mu,
                }
            } else {
                CubicRoots::Real([mu; 3])
            };
            from_roots(roots, value, None, region_from(value, value))
        }
    }
}

/// Values of `r_x` at which `Λ = 0`, sorted ascending.
///
/// Empty for `γ < √12 Δ`; both branches for `√12 Δ ≤ γ ≤ 4Δ`; only the outer
/// branch for `γ > 4Δ`, where the inner one leaves `[0, 1]` in `r_x²`.
pub fn zeno_boundary(params: &WalkParams) -> Vec<f64> {
    let (g, d) = (params.gamma(), params.delta());
    if g == 0.0 {
        return Vec::new();
    }
    let (g2, d2) = (g * g, d * d);
    let mut big = g2 - 12.0 * d2;
    if big < 0.0 {
        if big > -1e-12 * 12.0 * d2 {
            big = 0.0;
        } else {
            return Vec::new();
        }
    }
    // r_x² = 1/3 − γ²/(54Δ²) ± (γ² − 12Δ²)^{3/2} / (54γΔ²)
    let centre = 1.0 / 3.0 - g2 / (54.0 * d2);
    let spread = big.powf(1.5) / (54.0 * g * d2);
    let mut out = Vec::with_capacity(4);
    for u in [centre - spread, centre + spread] {
        let u = if u.abs() < 1e-15 { 0.0 } else { u };
        if (0.0..=1.0).contains(&u) {
            let r = u.sqrt();
            out.push(r);
            out.push(-r);
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(delta: f64, gamma: f64) -> WalkParams {
        WalkParams::new(delta, gamma).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn coefficients_examples() {
        assert_eq!(
            characteristic_coefficients(&params(1.0, 1.0), 0.0).unwrap(),
            (2.0, 5.0, 4.0)
        );
        assert_eq!(
            characteristic_coefficients(&params(1.0, 0.0), 0.37).unwrap(),
            (0.0, 4.0, 0.0)
        );
        assert_eq!(
            characteristic_coefficients(&params(1.0, 4.0), 1.0).unwrap(),
            (8.0, 20.0, 0.0)
        );
        assert!(characteristic_coefficients(&params(1.0, 1.0), 1.5).is_err());
    }

    #[test]
    fn decoherence_free_spectrum() {
        let s = eigenvalues(&params(1.0, 0.0), 0.3).unwrap();
        let want = [
            Complex64::new(0.0, 2.0),
            Complex64::new(0.0, -2.0),
            Complex64::new(0.0, 0.0),
        ];
        for (l, w) in s.eigenvalues.iter().zip(want) {
            assert!(close(*l, w, 1e-15), "{:?}", s.eigenvalues);
        }
        assert_eq!(s.region, Region::NoZeno);
    }

    #[test]
    fn bit_flip_spectrum_factorizes() {
        // λ(λ² + 2γλ + γ² + 4Δ²): 0 and −γ ± 2iΔ
        let s = eigenvalues(&params(1.0, 1.0), 1.0).unwrap();
        assert!(close(s.eigenvalues[0], Complex64::new(-1.0, 2.0), 1e-14));
        assert!(close(s.eigenvalues[1], Complex64::new(-1.0, -2.0), 1e-14));
        assert!(close(s.eigenvalues[2], Complex64::new(0.0, 0.0), 1e-14));
    }

    #[test]
    fn sqrt12_boundary_is_repeated_root() {
        let p = params(1.0, 12f64.sqrt());
        let s = eigenvalues(&p, 1.0 / 3.0).unwrap();
        assert_eq!(s.region, Region::Boundary);
        assert!(s.min_gap() < 1e-4, "{:?}", s.eigenvalues);
        assert_eq!(classify_region(&p, -1.0 / 3.0).unwrap(), Region::Boundary);
    }

    #[test]
    fn printed_eta_form_agrees() {
        for &(d, g, rx) in &[(1.0, 1.0, 0.1), (1.0, 5.0, 0.4), (0.7, 3.9, 0.85), (2.0, 0.3, -0.6)] {
            let p = params(d, g);
            let a = discriminant(&p, rx).unwrap();
            let b = discriminant_eta(&p, 1.0 - rx * rx);
            assert!((a - b).abs() <= 1e-10 * a.abs().max(1.0), "{a} vs {b}");
        }
    }

    #[test]
    fn discriminant_sign_matches_root_type() {
        for &(g, rx) in &[(1.0, 0.0), (5.0, 0.0), (5.0, 0.999), (3.8, 0.3), (20.0, 0.02)] {
            let s = eigenvalues(&params(1.0, g), rx).unwrap();
            let complex = s.eigenvalues.iter().any(|l| l.im != 0.0);
            match s.region {
                Region::NoZeno => assert!(complex, "g={g} rx={rx}"),
                Region::Zeno => assert!(!complex, "g={g} rx={rx}"),
                Region::Boundary => {}
            }
        }
    }

    #[test]
    fn region_examples() {
        for rx in [-1.0, -0.5, 0.0, 0.3, 1.0] {
            assert_eq!(classify_region(&params(1.0, 1.0), rx).unwrap(), Region::NoZeno);
        }
        assert_eq!(classify_region(&params(1.0, 5.0), 0.0).unwrap(), Region::Zeno);
        assert_eq!(classify_region(&params(1.0, 5.0), 0.999).unwrap(), Region::NoZeno);
        assert!(discriminant(&params(1.0, 5.0), 0.999).unwrap() > 0.0);
    }

    #[test]
    fn boundary_examples() {
        assert!(zeno_boundary(&params(1.0, 1.0)).is_empty());
        let b = zeno_boundary(&params(1.0, 12f64.sqrt()));
        assert_eq!(b.len(), 2);
        assert!((b[0] + 1.0 / 3.0).abs() < 1e-9 && (b[1] - 1.0 / 3.0).abs() < 1e-9);
        // γ = √20 > 4Δ: outer branch only.
        let b = zeno_boundary(&params(1.0, 20f64.sqrt()));
        assert_eq!(b.len(), 2);
        let g = 20f64.sqrt();
        let u = 1.0 / 3.0 - 20.0 / 54.0 + 8f64.powf(1.5) / (54.0 * g);
        assert!((b[1] - u.sqrt()).abs() < 1e-14);
        // √12 < γ < 4: two bands.
        assert_eq!(zeno_boundary(&params(1.0, 15f64.sqrt())).len(), 4);
    }

    #[test]
    fn boundary_values_zero_the_discriminant() {
        for g in [3.6, 15f64.sqrt(), 3.95, 20f64.sqrt(), 7.0, 30.0] {
            let p = params(1.0, g);
            for rx in zeno_boundary(&p) {
                let (value, scale) = discriminant_with_scale(&p, rx);
                assert!(value.abs() < 1e-12 * scale, "g={g} rx={rx} value={value}");
            }
        }
    }

    #[test]
    fn chebyshev_form_matches_solver_in_zeno_region() {
        let s = eigenvalues(&params(1.0, 5.0), 0.1).unwrap();
        assert_eq!(s.region, Region::Zeno);
        assert!(s.chebyshev_deviation.unwrap() < 1e-12);
        let s = eigenvalues(&params(1.0, 1.0), 0.1).unwrap();
        assert!(s.chebyshev_deviation.is_none());
    }

    #[test]
    fn depolarizing_spectrum() {
        let p = params(1.0, 3.0);
        let s = channel_spectrum(&Channel::Depolarizing, &p);
        assert!(close(s.eigenvalues[0], Complex64::new(-2.0, 2.0), 1e-13));
        assert!(close(s.eigenvalues[2], Complex64::new(-2.0, 0.0), 1e-13));
        assert_eq!(s.region, Region::NoZeno);
    }
}
