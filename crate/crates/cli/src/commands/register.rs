// SPDX-License-Identifier: Apache-2.0

use rayon::prelude::*;
use serde::Serialize;

use qwalk_core::mixing::{
    classical_mixing_time, hellinger_bound, instantaneous_mixing_time, register_mixing_time, register_tv,
    register_tv_bound,
};
use qwalk_core::oracle::{integrate_master, MAX_DENSE_QUBITS};
use qwalk_core::{BlochSystem, Channel, DensityMatrix, RegisterDistribution, WalkParams};

use crate::args::{Format, RegisterArgs};
use crate::config::Settings;
use crate::error::{bad_input, CliError, CliResult};
use crate::output::{ensure_finite, write_json};

/// Trace length when the register never mixes, in units of `1/Δ`.
const UNMIXED_TRACE: f64 = 10.0;

#[derive(Debug, Serialize)]
struct TracePoint {
    t: f64,
    sigma_z: f64,
    register_tv: f64,
    hellinger_bound: f64,
    /// `√2 ×` the Hellinger bound.
    tv_bound: f64,
}

#[derive(Debug, Serialize)]
struct OracleResiduals {
    /// Largest |oracle − product law| over strings and trace times.
    max_probability_residual: f64,
    /// Largest |oracle TV − register_tv| over trace times.
    max_tv_residual: f64,
}

#[derive(Debug, Serialize)]
struct QubitReport {
    qubits: u64,
    register_mixing_time: Option<f64>,
    no_classical_mixing: bool,
    single_qubit_mixing_time: Option<f64>,
    /// First zero of `⟨σz⟩`, where every register is exactly uniform.
    instantaneous_mixing_time: Option<f64>,
    trace: Vec<TracePoint>,
    oracle: Option<OracleResiduals>,
}

#[derive(Debug, Serialize)]
struct LogFit {
    intercept: f64,
    slope: f64,
    r_squared: f64,
}

#[derive(Debug, Serialize)]
struct Report {
    channel: Channel,
    gamma: f64,
    delta: f64,
    epsilon: f64,
    reports: Vec<QubitReport>,
    /// Least-squares `t = intercept + slope · ln n` over reports with a time.
    log_fit: Option<LogFit>,
}

fn log_fit(reports: &[QubitReport]) -> Option<LogFit> {
    let pts: Vec<(f64, f64)> = reports
        .iter()
        .filter_map(|r| r.register_mixing_time.map(|t| ((r.qubits as f64).ln(), t)))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Some(LogFit {
        intercept: my - slope * mx,
        slope,
        r_squared,
    })
}

fn oracle_residuals(
    n: u64,
    channel: Channel,
    params: &WalkParams,
    sys: &BlochSystem,
    times: &[f64],
) -> CliResult<OracleResiduals> {
    let qubits = n as usize;
    let rho0 = DensityMatrix::ground(qubits);
    let mut prob: f64 = 0.0;
    let mut tv: f64 = 0.0;
    for &t in times {
        let rho = integrate_master(qubits, channel, params, &rho0, t)?;
        let law = RegisterDistribution::from_sigma_z(n, sys.sigma_z(t).clamp(-1.0, 1.0))?;
        let uniform = 0.5f64.powi(qubits as i32);
        let mut oracle_tv = 0.0;
        for (s, p) in rho.probabilities().iter().enumerate() {
            prob = prob.max((p - law.string_probability(s.count_ones() as u64)?).abs());
            oracle_tv += (p - uniform).abs();
        }
        tv = tv.max((oracle_tv - law.tv_to_uniform()).abs());
    }
    Ok(OracleResiduals {
        max_probability_residual: prob,
        max_tv_residual: tv,
    })
}

fn qubit_report(
    n: u64,
    channel: Channel,
    params: &WalkParams,
    epsilon: f64,
    trace_points: usize,
    oracle: bool,
) -> CliResult<QubitReport> {
    let sys = BlochSystem::new(channel, params);
    let register = register_mixing_time(n, channel, params, epsilon)?;
    let end = match register.time() {
        Some(t) if t > 0.0 => 1.5 * t,
        _ => UNMIXED_TRACE / params.delta(),
    };
    let times: Vec<f64> = (0..trace_points)
        .map(|i| match trace_points {
            1 => 0.0,
            m => end * i as f64 / (m - 1) as f64,
        })
        .collect();
    let trace = times
        .iter()
        .map(|&t| -> CliResult<TracePoint> {
            let z = sys.sigma_z(t).clamp(-1.0, 1.0);
            let h = hellinger_bound(n, z)?;
            let point = TracePoint {
                t,
                sigma_z: z,
                register_tv: register_tv(n, 0.5 * (1.0 + z))?,
                hellinger_bound: h,
                tv_bound: register_tv_bound(n, z)?,
            };
            ensure_finite(
                "register trace",
                &[point.t, point.sigma_z, point.register_tv, h, point.tv_bound],
            )?;
            Ok(point)
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(QubitReport {
        qubits: n,
        register_mixing_time: register.time(),
        no_classical_mixing: register.is_never(),
        single_qubit_mixing_time: classical_mixing_time(channel, params, epsilon)?.time(),
        instantaneous_mixing_time: instantaneous_mixing_time(channel, params, 0.0)?,
        trace,
        oracle: if oracle {
            Some(oracle_residuals(n, channel, params, &sys, &times)?)
        } else {
            None
        },
    })
}

pub fn run(settings: &Settings, args: &RegisterArgs) -> CliResult<()> {
    let params = settings.params()?;
    let channel = settings.channel()?;
    let epsilon = settings.epsilon()?;
    let qubits = settings.list(args.qubits.clone(), "qubits")?.unwrap_or_else(|| vec![1]);
    let oracle = settings.flag(args.oracle, "oracle")?;
    let trace_points = settings.get_or(args.trace_points, "trace_points", 50)?;
    if qubits.is_empty() || qubits.contains(&0) {
        return Err(bad_input("--qubits must list sizes >= 1"));
    }
    if trace_points == 0 {
        return Err(bad_input("--trace-points must be >= 1"));
    }
    if oracle {
        if let Some(&n) = qubits.iter().find(|&&n| n > MAX_DENSE_QUBITS as u64) {
            return Err(CliError::Capacity(format!(
                "oracle cross-check supports at most {MAX_DENSE_QUBITS} qubits, got {n}"
            )));
        }
    }
    if settings.format(Format::Json)? != Format::Json {
        return Err(bad_input("register emits JSON only"));
    }

    let reports: Vec<QubitReport> = qubits
        .par_iter()
        .map(|&n| qubit_report(n, channel, &params, epsilon, trace_points, oracle))
        .collect::<CliResult<_>>()?;
    let report = Report {
        channel,
        gamma: params.gamma(),
        delta: params.delta(),
        epsilon,
        log_fit: log_fit(&reports),
        reports,
    };
    write_json(settings.out()?.as_deref(), &report)
}
