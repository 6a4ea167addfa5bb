// SPDX-License-Identifier: Apache-2.0

use rayon::prelude::*;
use serde::Serialize;

use qwalk_core::bloch::{classify_region, discriminant, zeno_boundary};
use qwalk_core::WalkParams;

use crate::args::{Format, PhaseArgs};
use crate::config::{sibling, Settings};
use crate::error::{bad_input, CliResult};
use crate::output::{ensure_finite, log_space, write_csv, write_json};

#[derive(Debug, Serialize)]
struct Row {
    gamma_over_delta: f64,
    r_x: f64,
    region: &'static str,
    discriminant: f64,
}

#[derive(Debug, Serialize)]
struct BoundaryRow {
    gamma_over_delta: f64,
    r_x: f64,
}

#[derive(Debug, Serialize)]
struct Report<'a> {
    grid: &'a [Row],
    boundaries: &'a [BoundaryRow],
}

fn rx_grid(n: usize) -> CliResult<Vec<f64>> {
    match n {
        0 => Err(bad_input("--rx-points must be >= 1")),
        1 => Ok(vec![0.0]),
        n => Ok((0..n).map(|i| -1.0 + 2.0 * i as f64 / (n - 1) as f64).collect()),
    }
}

pub fn run(settings: &Settings, args: &PhaseArgs) -> CliResult<()> {
    let delta = settings.delta()?;
    let ratios = match settings.list(args.ratios.clone(), "ratios")? {
        Some(list) => {
            if list.is_empty() || list.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
                return Err(bad_input("--ratios must be positive and finite"));
            }
            list
        }
        None => log_space(
            settings.get_or(args.ratio_min, "ratio_min", 0.1)?,
            settings.get_or(args.ratio_max, "ratio_max", 10.0)?,
            settings.get_or(args.ratio_points, "ratio_points", 100)?,
        )?,
    };
    let rx = rx_grid(settings.get_or(args.rx_points, "rx_points", 201)?)?;

    let per_ratio: Vec<(Vec<Row>, Vec<BoundaryRow>)> = ratios
        .par_iter()
        .map(|&ratio| -> CliResult<_> {
            let params = WalkParams::new(delta, ratio * delta)?;
            let rows = rx
                .iter()
                .map(|&r_x| -> CliResult<Row> {
                    Ok(Row {
                        gamma_over_delta: ratio,
                        r_x,
                        region: classify_region(&params, r_x)?.as_str(),
                        discriminant: discriminant(&params, r_x)?,
                    })
                })
                .collect::<CliResult<Vec<_>>>()?;
            let bounds = zeno_boundary(&params)
                .into_iter()
                .map(|r_x| BoundaryRow {
                    gamma_over_delta: ratio,
                    r_x,
                })
                .collect();
            Ok((rows, bounds))
        })
        .collect::<CliResult<_>>()?;
    let (grid, boundaries): (Vec<Vec<Row>>, Vec<Vec<BoundaryRow>>) = per_ratio.into_iter().unzip();
    let grid: Vec<Row> = grid.into_iter().flatten().collect();
    let boundaries: Vec<BoundaryRow> = boundaries.into_iter().flatten().collect();
    for r in &grid {
        ensure_finite("phase diagram", &[r.gamma_over_delta, r.r_x, r.discriminant])?;
    }

    let out = settings.out()?;
    match settings.format(Format::Csv)? {
        Format::Csv => {
            write_csv(out.as_deref(), &grid)?;
            let boundary_out = settings
                .path(args.boundary_out.clone(), "boundary_out")?
                .or_else(|| out.as_deref().map(|p| sibling(p, ".boundary")));
            match boundary_out {
                Some(path) => write_csv(Some(&path), &boundaries),
                None => Ok(()),
            }
        }
        Format::Json => write_json(
            out.as_deref(),
            &Report {
                grid: &grid,
                boundaries: &boundaries,
            },
        ),
    }
}
