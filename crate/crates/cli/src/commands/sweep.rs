// SPDX-License-Identifier: Apache-2.0

use rayon::prelude::*;
use serde::Serialize;

use qwalk_core::mixing::classical_mixing_time;
use qwalk_core::WalkParams;

use crate::args::{Format, SweepArgs};
use crate::config::Settings;
use crate::error::CliResult;
use crate::output::{ensure_finite, log_space, write_csv, write_json};

#[derive(Debug, Serialize)]
struct Row {
    gamma_over_delta: f64,
    /// Empty when the walk never mixes.
    mixing_time: Option<f64>,
    /// Empty when the mixing time is absent or zero.
    log_mixing_time: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
struct Argmin {
    index: usize,
    gamma_over_delta: f64,
    mixing_time: f64,
}

#[derive(Debug, Serialize)]
struct Report<'a> {
    rows: &'a [Row],
    /// Global minimum when it lies strictly inside the range.
    interior_argmin: Option<Argmin>,
}

fn interior_argmin(rows: &[Row]) -> Option<Argmin> {
    let (index, gamma_over_delta, mixing_time) = rows
        .iter()
        .enumerate()
        .filter_map(|(i, r)| r.mixing_time.map(|t| (i, r.gamma_over_delta, t)))
        .min_by(|a, b| a.2.total_cmp(&b.2))?;
    (index > 0 && index + 1 < rows.len()).then_some(Argmin {
        index,
        gamma_over_delta,
        mixing_time,
    })
}

pub fn run(settings: &Settings, args: &SweepArgs) -> CliResult<()> {
    let delta = settings.delta()?;
    let channel = settings.channel()?;
    let epsilon = settings.epsilon()?;
    let ratios = log_space(
        settings.get_or(args.ratio_min, "ratio_min", 0.01)?,
        settings.get_or(args.ratio_max, "ratio_max", 100.0)?,
        settings.get_or(args.points, "points", 161)?,
    )?;

    let rows: Vec<Row> = ratios
        .par_iter()
        .map(|&ratio| -> CliResult<Row> {
            let params = WalkParams::new(delta, ratio * delta)?;
            let time = classical_mixing_time(channel, &params, epsilon)?.time();
            Ok(Row {
                gamma_over_delta: ratio,
                mixing_time: time,
                log_mixing_time: time.filter(|t| *t > 0.0).map(f64::ln),
            })
        })
        .collect::<CliResult<_>>()?;
    for r in &rows {
        ensure_finite("gamma sweep", &[r.gamma_over_delta, r.mixing_time.unwrap_or(0.0)])?;
    }
    let argmin = interior_argmin(&rows);

    let out = settings.out()?;
    match settings.format(Format::Csv)? {
        Format::Csv => {
            write_csv(out.as_deref(), &rows)?;
            match argmin {
                Some(m) => eprintln!(
                    "interior argmin: gamma/delta = {} (mixing time {})",
                    m.gamma_over_delta, m.mixing_time
                ),
                None => eprintln!("no interior argmin"),
            }
            Ok(())
        }
        Format::Json => write_json(
            out.as_deref(),
            &Report {
                rows: &rows,
                interior_argmin: argmin,
            },
        ),
    }
}
