// SPDX-License-Identifier: Apache-2.0

//! Roots of real monic cubics `x³ + b x² + c x + d`.
//!
//! Trigonometric form when all three roots are real, Cardano otherwise, then
//! a few complex Newton steps on the undepressed polynomial.

use num_complex::Complex64;
use std::f64::consts::TAU;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CubicRoots {
    /// Real roots sorted in descending order.
    Real([f64; 3]),
    /// One real root and a conjugate pair; `pair` has positive imaginary part.
    Mixed { pair: Complex64, real: f64 },
}

impl CubicRoots {
    /// `[pair, conj(pair), real]` or the three real roots, descending.
    pub fn to_complex(self) -> [Complex64; 3] {
        match self {
            CubicRoots::Real(r) => r.map(|x| Complex64::new(x, 0.0)),
            CubicRoots::Mixed { pair, real } => [pair, pair.conj(), Complex64::new(real, 0.0)],
        }
    }
}

fn eval(b: f64, c: f64, d: f64, x: Complex64) -> (Complex64, Complex64) {
    let p = ((x + b) * x + c) * x + d;
    let dp = (x * 3.0 + 2.0 * b) * x + c;
    (p, dp)
}

fn polish(b: f64, c: f64, d: f64, mut x: Complex64) -> Complex64 {
    let (mut px, _) = eval(b, c, d, x);
    for _ in 0..4 {
        let (p, dp) = eval(b, c, d, x);
        if dp.norm() == 0.0 || p.norm() == 0.0 {
            break;
        }
        let next = x - p / dp;
        let (pn, _) = eval(b, c, d, next);
        if pn.norm().is_nan() || pn.norm() >= px.norm() {
            break;
        }
        x = next;
        px = pn;
    }
    x
}

/// Solves `x³ + b x² + c x + d = 0`.
pub fn solve_monic(b: f64, c: f64, d: f64) -> CubicRoots {
    if d == 0.0 {
        // x (x² + b x + c)
        return with_zero_root(b, c);
    }
    let shift = b / 3.0;
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    // Negative of the (scaled) discriminant: < 0 means three real roots.
    let kernel = 4.0 * p * p * p + 27.0 * q * q;

    if kernel <= 0.0 && p < 0.0 {
        let amp = 2.0 * (-p / 3.0).sqrt();
        let arg = (1.5 * q / p * (-3.0 / p).sqrt()).clamp(-1.0, 1.0);
        let phi = arg.acos() / 3.0;
        let mut r = [0usize, 1, 2].map(|k| {
            let t = amp * (phi - TAU * k as f64 / 3.0).cos() - shift;
            polish(b, c, d, Complex64::new(t, 0.0)).re
        });
        r.sort_by(|x, y| y.total_cmp(x));
        CubicRoots::Real(r)
    } else {
        let sq = (q * q / 4.0 + p * p * p / 27.0).max(0.0).sqrt();
        let u = -(q.signum()) * (q.abs() / 2.0 + sq).cbrt();
        let v = if u == 0.0 { 0.0 } else { -p / (3.0 * u) };
        let real = polish(b, c, d, Complex64::new(u + v - shift, 0.0)).re;
        let half_im = 3f64.sqrt() / 2.0 * (u - v);
        if half_im == 0.0 {
            // Exactly repeated real root of the depressed cubic.
            let t = -(u + v) / 2.0 - shift;
            let mut r = [real, t, t];
            r.sort_by(|x, y| y.total_cmp(x));
            return CubicRoots::Real(r);
        }
        let guess = Complex64::new(-(u + v) / 2.0 - shift, half_im.abs());
        let mut pair = polish(b, c, d, guess);
        if pair.im < 0.0 {
            pair = pair.conj();
        }
        CubicRoots::Mixed { pair, real }
    }
}

fn with_zero_root(b: f64, c: f64) -> CubicRoots {
    let disc = b * b - 4.0 * c;
    if disc >= 0.0 {
        let s = disc.sqrt();
        let big = -0.5 * (b + b.signum() * s);
        let (r1, r2) = if big == 0.0 { (0.0, 0.0) } else { (big, c / big) };
        let mut r = [0.0, r1, r2];
        r.sort_by(|x, y| y.total_cmp(x));
        CubicRoots::Real(r)
    } else {
        CubicRoots::Mixed {
            pair: Complex64::new(-b / 2.0, (-disc).sqrt() / 2.0),
            real: 0.0,
        }
    }
}
