// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use qwalk_core::bloch::closed_form_special;
use qwalk_core::oracle::{
    depolarizing_generator, depolarizing_generator_via_sampling, integrate_master, iterate_weak_steps, CMatrix,
};
use qwalk_core::sampling::uniform_axis;
use qwalk_core::{BlochSystem, BlochVector, DensityMatrix, SpecialChannel, WalkParams};

use crate::args::Format;
use crate::config::Settings;
use crate::error::{bad_input, CliError, CliResult};
use crate::output::write_json;

/// Multiplies every tolerance; `0` forces every check to fail.
pub const TOLERANCE_SCALE_VAR: &str = "QWALK_VALIDATE_TOL_SCALE";

const SEPARABILITY_DRAWS: usize = 20;
const DEPOLARIZING_SAMPLES: usize = 1_000_000;

#[derive(Debug, Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    residual: f64,
    tolerance: f64,
}

#[derive(Debug, Serialize)]
struct Report {
    seed: u64,
    tolerance_scale: f64,
    passed: bool,
    checks: Vec<Check>,
}

fn check(name: &'static str, residual: f64, tolerance: f64) -> Check {
    Check {
        name,
        passed: residual.is_finite() && residual <= tolerance,
        residual,
        tolerance,
    }
}

fn tolerance_scale() -> CliResult<f64> {
    match std::env::var(TOLERANCE_SCALE_VAR) {
        Ok(raw) => {
            let s: f64 = raw
                .trim()
                .parse()
                .map_err(|e| bad_input(format!("{TOLERANCE_SCALE_VAR}='{raw}': {e}")))?;
            if !(s.is_finite() && s >= 0.0) {
                return Err(bad_input(format!(
                    "{TOLERANCE_SCALE_VAR} must be finite and >= 0, got {s}"
                )));
            }
            Ok(s)
        }
        Err(std::env::VarError::NotPresent) => Ok(1.0),
        Err(e) => Err(bad_input(format!("{TOLERANCE_SCALE_VAR}: {e}"))),
    }
}

fn params(delta: f64, gamma: f64) -> CliResult<WalkParams> {
    Ok(WalkParams::new(delta, gamma)?)
}

/// Largest |spectral − printed closed form| over the special channels.
fn closed_form_residual() -> CliResult<f64> {
    let cases = [
        (SpecialChannel::DephasingFamily { r_z: 1.0 }, 1.0),
        (SpecialChannel::DephasingFamily { r_z: 0.6 }, 2.5),
        (SpecialChannel::DephasingFamily { r_z: 1.0 }, 6.0),
        (SpecialChannel::DephasingFamily { r_z: 0.3 }, 11.0),
        (SpecialChannel::DephasingFamily { r_z: 0.5 }, 4.0),
        (SpecialChannel::BitFlip, 1.0),
        (SpecialChannel::Depolarizing, 3.0),
    ];
    let mut worst: f64 = 0.0;
    for (special, gamma) in cases {
        let p = params(1.0, gamma)?;
        let sys = BlochSystem::new(special.channel()?, &p);
        for i in 0..1000 {
            let t = 20.0 * i as f64 / 999.0;
            worst = worst.max((sys.sigma_z(t) - closed_form_special(&special, &p, t)?).abs());
        }
    }
    Ok(worst)
}

fn pure_state(rng: &mut ChaCha8Rng) -> CliResult<DensityMatrix> {
    let [x, y, z] = uniform_axis(rng).components();
    Ok(DensityMatrix::from_bloch(&BlochVector::new(x, y, z))?)
}

/// Largest trace distance between the two-qubit master equation and the
/// product of single-qubit Bloch evolutions.
fn separability_residual(seed: u64) -> CliResult<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..SEPARABILITY_DRAWS {
        let delta = rng.random_range(0.5..2.0);
        let gamma = delta * rng.random_range(-2.0f64..2.0).exp2();
        let axis = uniform_axis(&mut rng);
        let p = params(delta, gamma)?;
        let (a, b) = (pure_state(&mut rng)?, pure_state(&mut rng)?);
        let sys = BlochSystem::new(axis, &p);
        for scale in [0.1, 1.0, 10.0] {
            let t = scale / delta;
            let full = integrate_master(2, axis, &p, &a.tensor(&b), t)?;
            let single = |rho: &DensityMatrix| -> CliResult<DensityMatrix> {
                let v0 = rho.bloch_vector().ok_or_else(|| bad_input("expected one qubit"))?;
                Ok(DensityMatrix::from_bloch(&sys.propagate(&v0, t))?)
            };
            worst = worst.max(full.trace_distance(&single(&a)?.tensor(&single(&b)?)));
        }
    }
    Ok(worst)
}

/// Largest deviation of the halving ratio error(τ)/error(τ/2) from 2.
fn weak_measurement_residual(seed: u64) -> CliResult<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let axis = uniform_axis(&mut rng);
    let p = params(1.0, rng.random_range(0.5..1.5))?;
    let horizon = 1.0;
    let rho0 = DensityMatrix::ground(1);
    let exact = integrate_master(1, axis, &p, &rho0, horizon)?;
    let mut errors = Vec::new();
    for tau in [1e-2, 5e-3, 2.5e-3] {
        let steps = (horizon / tau).round() as usize;
        let rho = iterate_weak_steps(&rho0, axis, &p, tau, steps)?;
        errors.push(
            (rho.matrix() - exact.matrix())
                .iter()
                .map(|c| c.norm())
                .fold(0.0, f64::max),
        );
    }
    Ok([errors[0] / errors[1], errors[1] / errors[2]]
        .iter()
        .map(|r| (r - 2.0).abs())
        .fold(0.0, f64::max))
}

/// (max z-score of the sampled generator, max ⟨σz⟩ deviation).
fn depolarizing_residuals(seed: u64) -> CliResult<(f64, f64)> {
    let p = params(1.0, 1.5)?;
    let sampled = depolarizing_generator_via_sampling(&p, DEPOLARIZING_SAMPLES, seed)?;
    let z = sampled.max_z_score(depolarizing_generator(&p).matrix());
    let mut rho0 = CMatrix::zeros(2, 2);
    rho0[(0, 0)] = Complex64::from(1.0);
    let mut worst: f64 = 0.0;
    for i in 0..=100 {
        let t = 0.05 * i as f64;
        let rho = sampled.generator.propagator(t).apply(&rho0);
        let want = (-2.0 * p.gamma() * t / 3.0).exp() * (2.0 * p.delta() * t).cos();
        worst = worst.max(((rho[(0, 0)] - rho[(1, 1)]).re - want).abs());
    }
    Ok((z, worst))
}

pub fn run(settings: &Settings) -> CliResult<()> {
    if settings.format(Format::Json)? != Format::Json {
        return Err(bad_input("validate emits JSON only"));
    }
    let seed = settings.seed()?;
    let scale = tolerance_scale()?;
    let (z_score, sigma_z_dev) = depolarizing_residuals(seed)?;
    let checks = vec![
        check("closed_form_agreement", closed_form_residual()?, 1e-9 * scale),
        check("separability", separability_residual(seed)?, 1e-8 * scale),
        check(
            "weak_measurement_convergence",
            weak_measurement_residual(seed)?,
            0.2 * scale,
        ),
        check("depolarizing_sampling_z_score", z_score, 3.0 * scale),
        check("depolarizing_sampling_sigma_z", sigma_z_dev, 1e-3 * scale),
    ];
    let passed = checks.iter().all(|c| c.passed);
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
    write_json(
        settings.out()?.as_deref(),
        &Report {
            seed,
            tolerance_scale: scale,
            passed,
            checks,
        },
    )?;
    if passed {
        Ok(())
    } else {
        Err(CliError::Validation(failed.join(", ")))
    }
}
