// SPDX-License-Identifier: Apache-2.0

use rayon::prelude::*;
use serde::Serialize;

use qwalk_core::bloch::classify_region;
use qwalk_core::mixing::classical_mixing_time;
use qwalk_core::sampling::fibonacci_sphere;

use crate::args::{Format, SphereArgs};
use crate::config::Settings;
use crate::error::{bad_input, CliResult};
use crate::output::{ensure_finite, write_csv, write_json};

pub const MIN_POINTS: usize = 10;

#[derive(Debug, Serialize)]
struct Row {
    theta: f64,
    phi: f64,
    r_x: f64,
    r_y: f64,
    r_z: f64,
    /// Empty when the walk never mixes (γ = 0).
    mixing_time: Option<f64>,
    region: &'static str,
}

pub fn run(settings: &Settings, args: &SphereArgs) -> CliResult<()> {
    let params = settings.params()?;
    let epsilon = settings.epsilon()?;
    let points = settings.get_or(args.points, "points", 1000)?;
    if points < MIN_POINTS {
        return Err(bad_input(format!("--points must be >= {MIN_POINTS}, got {points}")));
    }

    let rows: Vec<Row> = fibonacci_sphere(points)
        .par_iter()
        .map(|axis| -> CliResult<Row> {
            let (theta, phi) = axis.angles();
            // Sign-flipped axes share this representative.
            let time = classical_mixing_time(axis.canonical(), &params, epsilon)?.time();
            Ok(Row {
                theta,
                phi,
                r_x: axis.x(),
                r_y: axis.y(),
                r_z: axis.z(),
                mixing_time: time,
                region: classify_region(&params, axis.x())?.as_str(),
            })
        })
        .collect::<CliResult<_>>()?;
    for r in &rows {
        ensure_finite(
            "sphere map",
            &[r.theta, r.phi, r.r_x, r.r_y, r.r_z, r.mixing_time.unwrap_or(0.0)],
        )?;
    }

    let out = settings.out()?;
    match settings.format(Format::Csv)? {
        Format::Csv => write_csv(out.as_deref(), &rows),
        Format::Json => write_json(out.as_deref(), &rows),
    }
}
