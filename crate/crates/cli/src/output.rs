// SPDX-License-Identifier: Apache-2.0

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::{bad_input, CliError, CliResult};

fn open(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| io_error(Some(p), e))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn io_error(path: Option<&Path>, source: io::Error) -> CliError {
    CliError::Output {
        path: path.map_or_else(|| "stdout".to_string(), |p| p.display().to_string()),
        source,
    }
}

/// Header plus one record per row, LF line endings.
pub fn write_csv<T: Serialize>(path: Option<&Path>, rows: &[T]) -> CliResult<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(open(path)?);
    for row in rows {
        w.serialize(row).map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(io) => io_error(path, io),
            other => bad_input(format!("csv encoding: {other:?}")),
        })?;
    }
    w.flush().map_err(|e| io_error(path, e))
}

/// Pretty-printed JSON with a trailing newline.
pub fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> CliResult<()> {
    let mut w = open(path)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| io_error(path, e.into()))?;
    w.write_all(b"\n")
        .and_then(|_| w.flush())
        .map_err(|e| io_error(path, e))
}

/// Fails on the first non-finite value, so that NaN and ±∞ never reach a
/// dataset.
pub fn ensure_finite(label: &str, values: &[f64]) -> CliResult<()> {
    match values.iter().find(|v| !v.is_finite()) {
        Some(v) => Err(bad_input(format!("{label}: non-finite value {v}"))),
        None => Ok(()),
    }
}

/// `n` log-spaced values from `lo` to `hi` inclusive.
pub fn log_space(lo: f64, hi: f64, n: usize) -> CliResult<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && hi >= lo) {
        return Err(bad_input(format!(
            "range must satisfy 0 < min <= max, got [{lo}, {hi}]"
        )));
    }
    if n == 0 {
        return Err(bad_input("grid needs at least one point"));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    let (a, b) = (lo.ln(), hi.ln());
    Ok((0..n)
        .map(|i| match i {
            0 => lo,
            i if i == n - 1 => hi,
            i => (a + (b - a) * i as f64 / (n - 1) as f64).exp(),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_space_endpoints() {
        let v = log_space(0.01, 100.0, 5).unwrap();
        assert_eq!(v[0], 0.01);
        assert_eq!(v[4], 100.0);
        assert!((v[2] - 1.0).abs() < 1e-12);
        assert_eq!(log_space(2.0, 3.0, 1).unwrap(), vec![2.0]);
        assert!(log_space(0.0, 1.0, 3).is_err());
        assert!(log_space(1.0, 2.0, 0).is_err());
    }

    #[test]
    fn finite_guard() {
        assert!(ensure_finite("x", &[1.0, 2.0]).is_ok());
        assert!(ensure_finite("x", &[1.0, f64::NAN]).is_err());
    }
}
