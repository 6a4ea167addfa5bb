// SPDX-License-Identifier: Apache-2.0

//! Instantaneous, classical and time-averaged mixing times.
//!
//! Every scan runs on `[0, horizon]`, where the horizon comes from a bound
//! that rules out further crossings, with a grid step of at most a
//! twentieth of the fastest half-period. Cells are only skipped when a
//! Lipschitz bound proves the crossing cannot be inside.

use serde::{Serialize, Serializer};

use super::distance::register_tv;
use super::envelope::Envelope;
use crate::bloch::witness::{grid_step, sign_horizon, witness_scan, REFINE_TOLERANCE};
use crate::bloch::{BlochSystem, Channel, WalkParams};
use crate::error::{invalid, Error, Result};
use crate::quadrature::integrate;
use crate::scan::{first_nonpositive, last_nonnegative, Grid, ScanMeta};

/// A mixing time, or the marker that the distance never settles below the
/// threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mixing {
    Time(f64),
    Never,
}

impl Mixing {
    pub fn time(&self) -> Option<f64> {
        match self {
            Mixing::Time(t) => Some(*t),
            Mixing::Never => None,
        }
    }

    pub fn is_never(&self) -> bool {
        matches!(self, Mixing::Never)
    }
}

/// Serializes as the time, or the string `"no_mixing"`.
impl Serialize for Mixing {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Mixing::Time(t) => s.serialize_f64(*t),
            Mixing::Never => s.serialize_str("no_mixing"),
        }
    }
}

fn check_epsilon(epsilon: f64, allow_zero: bool) -> Result<()> {
    let ok = epsilon.is_finite() && (epsilon > 0.0 || (allow_zero && epsilon == 0.0));
    if !ok {
        return Err(invalid(format!("epsilon must be finite and positive, got {epsilon}")));
    }
    Ok(())
}

/// Shared last-crossing scan for `|⟨σz⟩|`-type distances.
fn classical_scan(sys: &BlochSystem, epsilon: f64) -> Result<(Mixing, Option<ScanMeta>)> {
    let env = match Envelope::from_system(sys) {
        Ok(env) => env,
        Err(Error::NoDecay { .. }) => return Ok((Mixing::Never, None)),
        Err(e) => return Err(e),
    };
    let horizon = env.horizon(epsilon);
    if horizon == 0.0 || epsilon >= 1.0 {
        return Ok((Mixing::Time(0.0), None));
    }
    let grid = Grid::new(0.0, horizon, grid_step(sys, horizon), REFINE_TOLERANCE);
    let g = |t: f64| sys.sigma_z(t).abs() - epsilon;
    let lip = |t: f64| sys.slope_bound(t, horizon, 0.0);
    let t = last_nonnegative(&g, &lip, &grid).unwrap_or(0.0);
    Ok((Mixing::Time(t), Some(grid.meta())))
}

/// Last time the single-qubit distance `|⟨σz(t)⟩|` is at least `epsilon`.
///
/// [`Mixing::Never`] when the slowest mode does not decay.
pub fn classical_mixing_time(channel: impl Into<Channel>, params: &WalkParams, epsilon: f64) -> Result<Mixing> {
    check_epsilon(epsilon, false)?;
    Ok(classical_scan(&BlochSystem::new(channel, params), epsilon)?.0)
}

fn instantaneous_scan(sys: &BlochSystem, epsilon: f64) -> (Option<f64>, Option<ScanMeta>) {
    if epsilon == 0.0 {
        let (t, meta) = witness_scan(sys);
        return (t, Some(meta));
    }
    if epsilon > 1.0 {
        return (Some(0.0), None);
    }
    let horizon = match Envelope::from_system(sys) {
        Ok(env) => env.horizon(epsilon) * (1.0 + 1e-9) + f64::MIN_POSITIVE,
        Err(_) => sign_horizon(sys),
    };
    let grid = Grid::new(0.0, horizon, grid_step(sys, horizon), REFINE_TOLERANCE);
    let g = |t: f64| sys.sigma_z(t).abs() - epsilon;
    let lip = |t: f64| sys.slope_bound(t, horizon, 0.0);
    (first_nonpositive(&g, &lip, &grid), Some(grid.meta()))
}

/// First time `|⟨σz(t)⟩|` drops to `epsilon`. With `epsilon = 0` this is the
/// first zero of `⟨σz⟩`, which may not exist.
pub fn instantaneous_mixing_time(
    channel: impl Into<Channel>,
    params: &WalkParams,
    epsilon: f64,
) -> Result<Option<f64>> {
    check_epsilon(epsilon, true)?;
    Ok(instantaneous_scan(&BlochSystem::new(channel, params), epsilon).0)
}

/// Running integral `I(τ) = ∫₀^τ ⟨σz⟩` with cached values at grid nodes.
struct RunningIntegral<'a> {
    sys: &'a BlochSystem,
    grid: Grid,
    nodes: Vec<f64>,
}

const QUADRATURE_TOLERANCE: f64 = 1e-10;

impl<'a> RunningIntegral<'a> {
    fn new(sys: &'a BlochSystem, grid: Grid) -> Self {
        let f = |t: f64| sys.sigma_z(t);
        let mut nodes = Vec::with_capacity(grid.cells() + 1);
        let mut acc = 0.0;
        nodes.push(0.0);
        for i in 1..=grid.cells() {
            let (a, b) = (grid.node(i - 1), grid.node(i));
            acc += integrate(&f, a, b, QUADRATURE_TOLERANCE, 1e-15 * (b - a));
            nodes.push(acc);
        }
        Self { sys, grid, nodes }
    }

    fn at(&self, tau: f64) -> f64 {
        let i = (((tau - self.grid.start) / self.grid.step).floor().max(0.0) as usize).min(self.nodes.len() - 1);
        let a = self.grid.node(i);
        if tau <= a {
            return self.nodes[i];
        }
        let f = |t: f64| self.sys.sigma_z(t);
        self.nodes[i] + integrate(&f, a, tau, QUADRATURE_TOLERANCE, 1e-15 * (tau - a))
    }

    fn mean(&self, tau: f64) -> f64 {
        if tau <= 0.0 {
            1.0
        } else {
            self.at(tau) / tau
        }
    }
}

/// Bound on `sup_τ |∫₀^τ ⟨σz⟩|` and the asymptotic mean, if non-zero.
fn integral_bound(sys: &BlochSystem, env: Option<&Envelope>) -> (f64, f64) {
    if sys.is_degenerate() {
        if let Some(env) = env {
            return (env.constant / env.rate, 0.0);
        }
    }
    let mut bound = 0.0;
    let mut drift = 0.0;
    let radius = sys.spectrum().max_modulus();
    for term in sys.significant_terms() {
        let c = term.coef[0].norm();
        if term.lambda.norm() <= 1e-14 * radius {
            drift += term.coef[0].re;
            continue;
        }
        let swing = if term.lambda.re < 0.0 && !term.is_oscillating() {
            1.0
        } else {
            2.0
        };
        bound += swing * c / term.lambda.norm();
    }
    (bound, drift)
}

fn average_scan(sys: &BlochSystem, epsilon: f64) -> (Mixing, Option<ScanMeta>) {
    if epsilon > 1.0 {
        return (Mixing::Time(0.0), None);
    }
    let env = Envelope::from_system(sys).ok();
    let (bound, drift) = integral_bound(sys, env.as_ref());
    if drift.abs() >= epsilon {
        return (Mixing::Never, None);
    }
    let horizon = bound / (epsilon - drift.abs());
    if horizon == 0.0 {
        return (Mixing::Time(0.0), None);
    }
    let grid = Grid::new(0.0, horizon, grid_step(sys, horizon), REFINE_TOLERANCE);
    let running = RunningIntegral::new(sys, grid);
    let half_slope = 0.5 * sys.matrix().frobenius_norm();
    let g = |tau: f64| running.mean(tau).abs() - epsilon;
    let lip = |tau: f64| {
        if tau <= 0.0 {
            return half_slope;
        }
        let now = env.map_or(1.0, |e| e.value(tau).min(1.0));
        let mean = (bound / tau).min(1.0) + drift.abs();
        half_slope.min((now + mean) / tau)
    };
    let t = last_nonnegative(&g, &lip, &grid).unwrap_or(0.0);
    (Mixing::Time(t), Some(grid.meta()))
}

/// Last `τ` at which the time-averaged distance `|(1/τ)∫₀^τ ⟨σz⟩|` is at
/// least `epsilon`. Finite without decoherence as well.
pub fn average_mixing_time(channel: impl Into<Channel>, params: &WalkParams, epsilon: f64) -> Result<Mixing> {
    check_epsilon(epsilon, false)?;
    Ok(average_scan(&BlochSystem::new(channel, params), epsilon).0)
}

/// Last time the `n`-qubit register distance to uniform is at least
/// `epsilon`.
pub fn register_mixing_time(n: u64, channel: impl Into<Channel>, params: &WalkParams, epsilon: f64) -> Result<Mixing> {
    Ok(register_scan(n, &BlochSystem::new(channel, params), epsilon)?.0)
}

pub(crate) fn register_scan(n: u64, sys: &BlochSystem, epsilon: f64) -> Result<(Mixing, Option<ScanMeta>)> {
    check_epsilon(epsilon, false)?;
    if n == 0 {
        return Err(invalid("register needs at least one qubit"));
    }
    let env = match Envelope::from_system(sys) {
        Ok(env) => env,
        Err(Error::NoDecay { .. }) => return Ok((Mixing::Never, None)),
        Err(e) => return Err(e),
    };
    // The register distance is at most n |⟨σz⟩| and n-Lipschitz in ⟨σz⟩.
    let nf = n as f64;
    let horizon = env.horizon(epsilon / nf);
    if horizon == 0.0 {
        return Ok((Mixing::Time(0.0), None));
    }
    let grid = Grid::new(0.0, horizon, grid_step(sys, horizon), REFINE_TOLERANCE);
    let g = |t: f64| {
        let p0 = (0.5 * (1.0 + sys.sigma_z(t))).clamp(0.0, 1.0);
        register_tv(n, p0).expect("validated register") - epsilon
    };
    let lip = |t: f64| nf * sys.slope_bound(t, horizon, 0.0);
    let t = last_nonnegative(&g, &lip, &grid).unwrap_or(0.0);
    Ok((Mixing::Time(t), Some(grid.meta())))
}

/// All three single-qubit mixing times at one threshold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixingReport {
    pub epsilon: f64,
    pub instantaneous: Option<f64>,
    pub classical: Mixing,
    pub average: Mixing,
    pub envelope: Option<Envelope>,
    pub instantaneous_scan: Option<ScanMeta>,
    pub classical_scan: Option<ScanMeta>,
    pub average_scan: Option<ScanMeta>,
}

pub fn mixing_report(channel: impl Into<Channel>, params: &WalkParams, epsilon: f64) -> Result<MixingReport> {
    check_epsilon(epsilon, false)?;
    let sys = BlochSystem::new(channel, params);
    let (instantaneous, instantaneous_scan) = instantaneous_scan(&sys, epsilon);
    let (classical, classical_scan) = classical_scan(&sys, epsilon)?;
    let (average, average_scan) = average_scan(&sys, epsilon);
    Ok(MixingReport {
        epsilon,
        instantaneous,
        classical,
        average,
        envelope: Envelope::from_system(&sys).ok(),
        instantaneous_scan,
        classical_scan,
        average_scan,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::DecoherenceAxis;
    use std::f64::consts::FRAC_PI_4;

    fn params(delta: f64, gamma: f64) -> WalkParams {
        WalkParams::new(delta, gamma).unwrap()
    }

    /// Last crossing of `h ≥ 0` on a fine uniform grid, then bisection.
    fn brute_last_crossing(h: impl Fn(f64) -> f64, horizon: f64, step: f64) -> f64 {
        let n = (horizon / step).ceil() as usize;
        let mut last = 0.0;
        for i in 0..n {
            let (a, b) = (i as f64 * step, (i + 1) as f64 * step);
            if h(a) >= 0.0 && h(b) < 0.0 {
                let (mut lo, mut hi) = (a, b);
                for _ in 0..100 {
                    let m = 0.5 * (lo + hi);
                    if h(m) >= 0.0 {
                        lo = m
                    } else {
                        hi = m
                    }
                }
                last = lo;
            }
        }
        last
    }

    #[test]
    fn bit_flip_classical_time() {
        let t = classical_mixing_time(DecoherenceAxis::BIT_FLIP, &params(1.0, 1.0), 1e-3)
            .unwrap()
            .time()
            .unwrap();
        let want = brute_last_crossing(|t| (-t).exp() * (2.0 * t).cos().abs() - 1e-3, 8.0, 1e-4);
        assert!(t <= 1000f64.ln());
        assert!((t - want).abs() < 1e-9 * want, "{t} vs {want}");
    }

    #[test]
    fn depolarizing_classical_time() {
        let t = classical_mixing_time(Channel::Depolarizing, &params(1.0, 3.0), 1e-3)
            .unwrap()
            .time()
            .unwrap();
        let want = brute_last_crossing(|t| (-2.0 * t).exp() * (2.0 * t).cos().abs() - 1e-3, 4.0, 1e-4);
        assert!(t <= 1.5 * 1000f64.ln());
        assert!((t - want).abs() < 1e-9 * want, "{t} vs {want}");
    }

    #[test]
    fn classical_edge_cases() {
        let p = params(1.0, 2.0);
        assert_eq!(
            classical_mixing_time(DecoherenceAxis::DEPHASING, &p, 1.0).unwrap(),
            Mixing::Time(0.0)
        );
        assert_eq!(
            classical_mixing_time(DecoherenceAxis::DEPHASING, &p, 3.0).unwrap(),
            Mixing::Time(0.0)
        );
        assert_eq!(
            classical_mixing_time(DecoherenceAxis::DEPHASING, &params(1.0, 0.0), 1e-3).unwrap(),
            Mixing::Never
        );
        assert!(classical_mixing_time(DecoherenceAxis::DEPHASING, &p, 0.0).is_err());
        assert!(classical_mixing_time(DecoherenceAxis::DEPHASING, &p, f64::NAN).is_err());
    }

    #[test]
    fn instantaneous_examples() {
        let coherent = instantaneous_mixing_time(DecoherenceAxis::DEPHASING, &params(1.0, 0.0), 0.0).unwrap();
        assert!((coherent.unwrap() - FRAC_PI_4).abs() < 1e-9);
        let zeno = instantaneous_mixing_time(DecoherenceAxis::DEPHASING, &params(1.0, 5.0), 0.0).unwrap();
        assert!(zeno.is_none());
        let big = instantaneous_mixing_time(DecoherenceAxis::DEPHASING, &params(1.0, 5.0), 1.1).unwrap();
        assert_eq!(big, Some(0.0));
    }

    #[test]
    fn instantaneous_with_threshold() {
        // γ = 0: |cos 2t| < 0.1 first at acos(0.1)/2.
        let t = instantaneous_mixing_time(DecoherenceAxis::DEPHASING, &params(1.0, 0.0), 0.1)
            .unwrap()
            .unwrap();
        assert!((t - 0.1f64.acos() / 2.0).abs() < 1e-9);
    }

    #[test]
    fn coherent_average_time() {
        // z̄(τ) = sin(2τ)/(2τ).
        let eps = 1e-3;
        let t = average_mixing_time(DecoherenceAxis::DEPHASING, &params(1.0, 0.0), eps)
            .unwrap()
            .time()
            .unwrap();
        let want = brute_last_crossing(|tau| ((2.0 * tau).sin() / (2.0 * tau)).abs() - eps, 600.0, 1e-3);
        assert!((t - want).abs() < 1e-8 * want, "{t} vs {want}");
    }

    #[test]
    fn average_quadrature_matches_analytic_integral() {
        let axis = DecoherenceAxis::normalized(0.3, 0.5, 0.6).unwrap();
        let sys = BlochSystem::new(axis, &params(1.0, 0.7));
        let horizon = 30.0;
        let grid = Grid::new(0.0, horizon, grid_step(&sys, horizon), REFINE_TOLERANCE);
        let running = RunningIntegral::new(&sys, grid);
        for tau in [0.3, 2.9, 17.1, 30.0] {
            let exact: f64 = sys
                .modes()
                .unwrap()
                .iter()
                .map(|m| (m.weight * ((m.lambda * tau).exp() - 1.0) / m.lambda).re)
                .sum();
            assert!(
                (running.at(tau) - exact).abs() < 1e-10 * exact.abs().max(1.0),
                "tau={tau}"
            );
        }
    }

    #[test]
    fn register_single_qubit_consistency() {
        let p = params(1.0, 1.0);
        let single = classical_mixing_time(DecoherenceAxis::DEPHASING, &p, 1e-3).unwrap();
        let reg = register_mixing_time(1, DecoherenceAxis::DEPHASING, &p, 1e-3).unwrap();
        assert!((single.time().unwrap() - reg.time().unwrap()).abs() < 1e-9);
        assert_eq!(
            register_mixing_time(4, DecoherenceAxis::DEPHASING, &p, 2.0).unwrap(),
            Mixing::Time(0.0)
        );
        assert_eq!(
            register_mixing_time(4, DecoherenceAxis::DEPHASING, &params(1.0, 0.0), 1e-3).unwrap(),
            Mixing::Never
        );
    }

    #[test]
    fn report_without_decoherence() {
        let report = mixing_report(DecoherenceAxis::DEPHASING, &params(1.0, 0.0), 1e-3).unwrap();
        assert_eq!(report.classical, Mixing::Never);
        assert!(report.envelope.is_none());
        assert!(report.average.time().is_some());
        assert!((report.instantaneous.unwrap() - 1e-3f64.acos() / 2.0).abs() < 1e-9);
    }
}
