// SPDX-License-Identifier: Apache-2.0

use rayon::prelude::*;
use serde::Serialize;

use qwalk_core::{BlochSystem, BlochVector};

use crate::args::{DynamicsArgs, Format};
use crate::config::Settings;
use crate::error::{bad_input, CliResult};
use crate::output::{ensure_finite, write_csv, write_json};

const MAX_ROWS: usize = 10_000_000;

#[derive(Debug, Serialize)]
struct Row {
    t: f64,
    x: f64,
    y: f64,
    z: f64,
}

pub fn run(settings: &Settings, args: &DynamicsArgs) -> CliResult<()> {
    let params = settings.params()?;
    let channel = settings.channel()?;
    let t_max = settings.get_or(args.t_max, "t_max", 10.0)?;
    let dt = settings.get_or(args.dt, "dt", 0.01)?;
    if !(t_max.is_finite() && t_max >= 0.0) {
        return Err(bad_input(format!("--t-max must be finite and >= 0, got {t_max}")));
    }
    if !(dt.is_finite() && dt > 0.0) {
        return Err(bad_input(format!("--dt must be finite and > 0, got {dt}")));
    }
    let steps = (t_max / dt * (1.0 + 1e-12)).floor();
    if steps >= MAX_ROWS as f64 {
        return Err(bad_input(format!("{steps} rows requested; limit is {MAX_ROWS}")));
    }

    let sys = BlochSystem::new(channel, &params);
    let rows: Vec<Row> = (0..=steps as usize)
        .into_par_iter()
        .map(|k| {
            let t = k as f64 * dt;
            let v = sys.propagate(&BlochVector::GROUND, t);
            Row {
                t,
                x: v.x,
                y: v.y,
                z: v.z,
            }
        })
        .collect();
    for r in &rows {
        ensure_finite("dynamics", &[r.t, r.x, r.y, r.z])?;
    }

    let out = settings.out()?;
    match settings.format(Format::Csv)? {
        Format::Csv => write_csv(out.as_deref(), &rows),
        Format::Json => write_json(out.as_deref(), &rows),
    }
}
