// SPDX-License-Identifier: Apache-2.0

//! Earliest time at which `⟨σz(t)⟩` reaches zero, if it ever does.

use std::f64::consts::TAU;

use super::dynamics::{BlochSystem, Term, DEGENERATE_SAFETY};
use super::types::{Channel, WalkParams};
use crate::scan::{first_nonpositive, Grid, ScanMeta};

/// Relative bisection tolerance for all crossing refinements.
pub const REFINE_TOLERANCE: f64 = 1e-10;

/// Horizon used when no dominant-mode argument applies, in units of the
/// slowest decay time.
const FALLBACK_DECAY_TIMES: f64 = 40.0;

/// Grid step for scans of `⟨σz⟩` up to `horizon`.
pub(crate) fn grid_step(sys: &BlochSystem, horizon: f64) -> f64 {
    let omega = sys.spectrum().max_imag_part();
    let by_period = if omega > 0.0 {
        std::f64::consts::PI / (20.0 * omega)
    } else {
        f64::INFINITY
    };
    by_period.min(horizon / 1000.0)
}

/// Slowest real part among the significant terms; the scan scale.
pub(crate) fn dominant_rate(terms: &[Term]) -> f64 {
    terms.iter().map(|t| t.lambda.re).fold(f64::NEG_INFINITY, f64::max)
}

/// Doubling search for the first `t` (on a geometric ladder) from which
/// `ok` holds at `t`, `2t` and `4t`.
fn settle(ok: impl Fn(f64) -> bool, t0: f64) -> Option<f64> {
    if ok(0.0) && ok(t0) && ok(2.0 * t0) {
        return Some(0.0);
    }
    let mut t = t0;
    for _ in 0..200 {
        if ok(t) && ok(2.0 * t) && ok(4.0 * t) {
            return Some(t);
        }
        t *= 2.0;
    }
    None
}

/// Time after which the sign of `⟨σz⟩` is either settled (non-oscillating
/// dominant mode) or guaranteed to have changed (oscillating one).
pub(crate) fn sign_horizon(sys: &BlochSystem) -> f64 {
    let terms = sys.significant_terms();
    let r = dominant_rate(&terms);
    let radius = sys.spectrum().max_modulus().max(f64::MIN_POSITIVE);
    let t0 = 1e-3 / radius;
    let tol = 1e-9 * radius;
    let (group, rest): (Vec<Term>, Vec<Term>) = terms.iter().partition(|t| t.lambda.re >= r - tol);
    let safety = if sys.is_degenerate() { DEGENERATE_SAFETY } else { 1.0 };
    let rest_bound = |t: f64| -> f64 {
        safety
            * rest
                .iter()
                .map(|term| term.poly_bound(t) * ((term.lambda.re - r) * t).exp())
                .sum::<f64>()
    };
    let fallback = FALLBACK_DECAY_TIMES / r.abs().max(1e-3 * radius);

    let omegas: Vec<f64> = group
        .iter()
        .filter(|t| t.is_oscillating())
        .map(|t| t.lambda.im)
        .collect();
    if let Some(&omega) = omegas.iter().min_by(|a, b| a.total_cmp(b)) {
        let amplitude: f64 = group
            .iter()
            .filter(|t| t.is_oscillating())
            .map(|t| t.coef[0].norm())
            .sum();
        let real_part = |t: f64| -> f64 {
            group
                .iter()
                .filter(|g| !g.is_oscillating())
                .map(|g| g.poly_bound(t))
                .sum::<f64>()
        };
        let margin = |t: f64| amplitude - real_part(t) - rest_bound(t);
        return match settle(|t| margin(t) > 0.5 * amplitude, t0) {
            Some(t) => t + TAU / omega,
            None => fallback,
        };
    }

    // Real dominant group: combine into one polynomial factor.
    let mut coef = [0.0f64; 3];
    for term in &group {
        for (c, g) in coef.iter_mut().zip(term.coef) {
            *c += g.re;
        }
    }
    let mass: f64 = coef.iter().map(|c| c.abs()).sum();
    let degree = coef.iter().rposition(|c| c.abs() > 1e-12 * mass).unwrap_or(0);
    let lead = coef[degree].abs();
    let lower: Vec<f64> = coef[..degree].iter().map(|c| c.abs()).collect();
    let margin = |t: f64| -> f64 {
        let low: f64 = lower.iter().enumerate().map(|(i, c)| c * t.powi(i as i32)).sum();
        lead * t.powi(degree as i32) - low - rest_bound(t)
    };
    match settle(|t| margin(t) > 0.0, t0) {
        Some(t) => t * (1.0 + 1e-6) + t0,
        None => fallback,
    }
}

pub(crate) fn witness_scan(sys: &BlochSystem) -> (Option<f64>, ScanMeta) {
    let horizon = sign_horizon(sys);
    let step = grid_step(sys, horizon);
    let grid = Grid::new(0.0, horizon, step, REFINE_TOLERANCE);
    let s = dominant_rate(&sys.significant_terms());
    let g = |t: f64| sys.sigma_z_scaled(t, s);
    let lip = |t: f64| sys.slope_bound(t, horizon, s);
    (first_nonpositive(&g, &lip, &grid), grid.meta())
}

/// Earliest `t` with `⟨σz(t)⟩ ≤ 0` from `|0⟩`, or `None` if the walk never
/// reaches the uniform single-qubit distribution.
pub fn instantaneous_mixing_witness(channel: impl Into<Channel>, params: &WalkParams) -> Option<f64> {
    witness_scan(&BlochSystem::new(channel, params)).0
}
