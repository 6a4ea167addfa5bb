// SPDX-License-Identifier: Apache-2.0

//! Level-crossing search on a grid with Lipschitz certification.
//!
//! A grid cell `[a, b]` is skipped only when the Lipschitz bound proves that
//! `g` cannot reach the target sign inside it; otherwise it is bisected down
//! to `MIN_CELL_FRACTION` of the grid step. The bracketing crossing is then
//! refined by bisection.

/// Cells narrower than this fraction of the grid step are not split further.
const MIN_CELL_FRACTION: f64 = 1e-3;

/// Upper bound on the number of grid cells; the step is widened past it.
const MAX_CELLS: f64 = 4.0e6;

use serde::Serialize;

/// How a crossing time was located.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanMeta {
    /// End of the scanned interval.
    pub horizon: f64,
    pub grid_step: f64,
    /// Relative tolerance of the final bisection.
    pub refine_tolerance: f64,
}

/// Shared scan configuration.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Grid {
    pub start: f64,
    pub horizon: f64,
    pub step: f64,
    pub rel_tol: f64,
}

impl Grid {
    pub fn new(start: f64, horizon: f64, step: f64, rel_tol: f64) -> Self {
        let span = (horizon - start).max(0.0);
        let step = if span == 0.0 {
            1.0
        } else {
            step.max(span / MAX_CELLS).min(span)
        };
        Self {
            start,
            horizon: horizon.max(start),
            step,
            rel_tol,
        }
    }

    pub fn meta(&self) -> ScanMeta {
        ScanMeta {
            horizon: self.horizon,
            grid_step: self.step,
            refine_tolerance: self.rel_tol,
        }
    }

    pub fn cells(&self) -> usize {
        ((self.horizon - self.start) / self.step).ceil() as usize
    }

    pub fn node(&self, i: usize) -> f64 {
        (self.start + i as f64 * self.step).min(self.horizon)
    }
}

/// Earliest `t` in the grid span with `g(t) <= 0`.
///
/// `lip(t)` must bound `|g'|` on `[t, horizon]`.
pub(crate) fn first_nonpositive(g: &dyn Fn(f64) -> f64, lip: &dyn Fn(f64) -> f64, grid: &Grid) -> Option<f64> {
    let g0 = g(grid.start);
    if g0 <= 0.0 {
        return Some(grid.start);
    }
    let min_width = grid.step * MIN_CELL_FRACTION;
    let mut a = grid.start;
    let mut ga = g0;
    for i in 1..=grid.cells() {
        let b = grid.node(i);
        let gb = g(b);
        if let Some((lo, hi)) = seek_first(g, lip(a), a, ga, b, gb, min_width) {
            return Some(refine(g, lo, hi, grid.rel_tol, |v| v <= 0.0).1);
        }
        a = b;
        ga = gb;
    }
    None
}

/// Latest `t` in the grid span with `g(t) >= 0`.
pub(crate) fn last_nonnegative(g: &dyn Fn(f64) -> f64, lip: &dyn Fn(f64) -> f64, grid: &Grid) -> Option<f64> {
    let n = grid.cells();
    let mut b = grid.node(n);
    let mut gb = g(b);
    if gb >= 0.0 {
        return Some(b);
    }
    let min_width = grid.step * MIN_CELL_FRACTION;
    for i in (0..n).rev() {
        let a = grid.node(i);
        let ga = g(a);
        if let Some((lo, hi)) = seek_last(g, lip(a), a, ga, b, gb, min_width) {
            return Some(refine(g, lo, hi, grid.rel_tol, |v| v < 0.0).0);
        }
        b = a;
        gb = ga;
    }
    None
}

/// Bracket `(lo, hi)` with `g(lo) > 0`, `g(hi) <= 0` around the leftmost
/// non-positive point of `[a, b]`, given `g(a) > 0`.
fn seek_first(
    g: &dyn Fn(f64) -> f64,
    lip: f64,
    a: f64,
    ga: f64,
    b: f64,
    gb: f64,
    min_width: f64,
) -> Option<(f64, f64)> {
    if b - a <= min_width {
        return (gb <= 0.0).then_some((a, b));
    }
    let lower = 0.5 * (ga + gb) - 0.5 * lip * (b - a);
    if lower > 0.0 {
        return None;
    }
    let m = 0.5 * (a + b);
    let gm = g(m);
    if let Some(found) = seek_first(g, lip, a, ga, m, gm, min_width) {
        return Some(found);
    }
    if gm <= 0.0 {
        return Some((a, m));
    }
    seek_first(g, lip, m, gm, b, gb, min_width)
}

/// Bracket `(lo, hi)` with `g(lo) >= 0`, `g(hi) < 0` around the rightmost
/// non-negative point of `[a, b]`, given `g(b) < 0`.
fn seek_last(g: &dyn Fn(f64) -> f64, lip: f64, a: f64, ga: f64, b: f64, gb: f64, min_width: f64) -> Option<(f64, f64)> {
    if b - a <= min_width {
        return (ga >= 0.0).then_some((a, b));
    }
    let upper = 0.5 * (ga + gb) + 0.5 * lip * (b - a);
    if upper < 0.0 {
        return None;
    }
    let m = 0.5 * (a + b);
    let gm = g(m);
    if let Some(found) = seek_last(g, lip, m, gm, b, gb, min_width) {
        return Some(found);
    }
    if gm >= 0.0 {
        return Some((m, b));
    }
    seek_last(g, lip, a, ga, m, gm, min_width)
}

/// Bisects `[lo, hi]`, keeping `hit(g(hi))` true and `hit(g(lo))` false.
fn refine(g: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64, rel_tol: f64, hit: impl Fn(f64) -> bool) -> (f64, f64) {
    for _ in 0..200 {
        if hi - lo <= rel_tol * hi.abs().max(lo.abs()).max(f64::MIN_POSITIVE) {
            break;
        }
        let m = 0.5 * (lo + hi);
        if m <= lo || m >= hi {
            break;
        }
        if hit(g(m)) {
            hi = m;
        } else {
            lo = m;
        }
    }
    (lo, hi)
}
