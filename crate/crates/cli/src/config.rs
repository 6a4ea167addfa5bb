// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::ValueEnum;
use qwalk_core::{Channel, DecoherenceAxis, WalkParams};

use crate::args::{Common, Format};
use crate::error::{bad_input, CliResult};

pub const DEFAULT_EPSILON: f64 = 1e-3;
pub const DEFAULT_DELTA: f64 = 1.0;
pub const DEFAULT_SEED: u64 = 1;

const KNOWN_KEYS: &[&str] = &[
    "gamma",
    "delta",
    "theta",
    "phi",
    "axis",
    "depolarizing",
    "epsilon",
    "out",
    "seed",
    "workers",
    "format",
    "t_max",
    "dt",
    "ratio_min",
    "ratio_max",
    "ratio_points",
    "ratios",
    "rx_points",
    "boundary_out",
    "points",
    "qubits",
    "oracle",
    "trace_points",
];

/// Parses `key = value` lines. Blank lines and `#` comments are skipped;
/// keys accept `-` or `_`.
pub fn parse_config(text: &str) -> CliResult<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| bad_input(format!("config line {}: expected key = value", lineno + 1)))?;
        let key = key.trim().to_ascii_lowercase().replace('-', "_");
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(bad_input(format!("config line {}: unknown key '{key}'", lineno + 1)));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

/// Flags merged over the config file.
#[derive(Debug, Clone, Default)]
pub struct Settings {
    common: Common,
    file: BTreeMap<String, String>,
}

impl Settings {
    pub fn load(common: Common) -> CliResult<Self> {
        let file = match &common.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| bad_input(format!("cannot read config {}: {e}", path.display())))?;
                parse_config(&text)?
            }
            None => BTreeMap::new(),
        };
        Ok(Self { common, file })
    }

    /// `flag`, else the file entry for `key`, else `None`.
    pub fn lookup<T: FromStr>(&self, flag: Option<T>, key: &str) -> CliResult<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        self.file
            .get(key)
            .map(|raw| {
                raw.parse::<T>()
                    .map_err(|e| bad_input(format!("config key '{key}': {e}")))
            })
            .transpose()
    }

    pub fn get_or<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> CliResult<T>
    where
        T::Err: std::fmt::Display,
    {
        Ok(self.lookup(flag, key)?.unwrap_or(default))
    }

    pub fn flag(&self, set: bool, key: &str) -> CliResult<bool> {
        Ok(set || self.lookup::<bool>(None, key)?.unwrap_or(false))
    }

    /// Comma-separated list from `flag` or the file.
    pub fn list<T: FromStr>(&self, flag: Option<Vec<T>>, key: &str) -> CliResult<Option<Vec<T>>>
    where
        T::Err: std::fmt::Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        self.file
            .get(key)
            .map(|raw| {
                raw.split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<T>()
                            .map_err(|e| bad_input(format!("config key '{key}': {e}")))
                    })
                    .collect()
            })
            .transpose()
    }

    pub fn path(&self, flag: Option<PathBuf>, key: &str) -> CliResult<Option<PathBuf>> {
        self.lookup(flag, key)
    }

    pub fn out(&self) -> CliResult<Option<PathBuf>> {
        self.path(self.common.out.clone(), "out")
    }

    pub fn delta(&self) -> CliResult<f64> {
        let d = self.get_or(self.common.delta, "delta", DEFAULT_DELTA)?;
        if !(d.is_finite() && d > 0.0) {
            return Err(bad_input(format!("--delta must be finite and > 0, got {d}")));
        }
        Ok(d)
    }

    pub fn gamma(&self) -> CliResult<Option<f64>> {
        self.lookup(self.common.gamma, "gamma")
    }

    /// Walk parameters; `--gamma` is mandatory.
    pub fn params(&self) -> CliResult<WalkParams> {
        let gamma = self.gamma()?.ok_or_else(|| bad_input("--gamma is required"))?;
        Ok(WalkParams::new(self.delta()?, gamma)?)
    }

    pub fn epsilon(&self) -> CliResult<f64> {
        let e = self.get_or(self.common.epsilon, "epsilon", DEFAULT_EPSILON)?;
        if !(e.is_finite() && e > 0.0) {
            return Err(bad_input(format!("--epsilon must be finite and > 0, got {e}")));
        }
        Ok(e)
    }

    pub fn seed(&self) -> CliResult<u64> {
        self.get_or(self.common.seed, "seed", DEFAULT_SEED)
    }

    pub fn workers(&self) -> CliResult<usize> {
        self.get_or(self.common.workers, "workers", 0)
    }

    pub fn format(&self, default: Format) -> CliResult<Format> {
        if let Some(f) = self.common.format {
            return Ok(f);
        }
        match self.file.get("format") {
            Some(raw) => Format::from_str(raw, true).map_err(|e| bad_input(format!("config key 'format': {e}"))),
            None => Ok(default),
        }
    }

    /// Channel from `--depolarizing`, `--axis` or `--theta/--phi`; the
    /// dephasing axis when none is given.
    pub fn channel(&self) -> CliResult<Channel> {
        let depolarizing = self.flag(self.common.depolarizing, "depolarizing")?;
        let axis: Option<String> = self.lookup(self.common.axis.clone(), "axis")?;
        let theta: Option<f64> = self.lookup(self.common.theta, "theta")?;
        let phi: Option<f64> = self.lookup(self.common.phi, "phi")?;
        let angles = theta.is_some() || phi.is_some();
        let given = [depolarizing, axis.is_some(), angles].iter().filter(|b| **b).count();
        if given > 1 {
            return Err(bad_input("choose one of --depolarizing, --axis, --theta/--phi"));
        }
        if depolarizing {
            return Ok(Channel::Depolarizing);
        }
        if let Some(raw) = axis {
            return Ok(Channel::Axis(parse_axis(&raw)?));
        }
        if angles {
            let theta = theta.ok_or_else(|| bad_input("--phi needs --theta"))?;
            return Ok(Channel::Axis(DecoherenceAxis::from_angles(theta, phi.unwrap_or(0.0))?));
        }
        Ok(Channel::Axis(DecoherenceAxis::DEPHASING))
    }
}

pub fn parse_axis(raw: &str) -> CliResult<DecoherenceAxis> {
    let parts: Vec<f64> = raw
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| bad_input(format!("--axis '{raw}': {e}")))
        })
        .collect::<CliResult<_>>()?;
    let [x, y, z] = parts[..] else {
        return Err(bad_input(format!("--axis expects three components, got '{raw}'")));
    };
    Ok(DecoherenceAxis::normalized(x, y, z)?)
}

/// `path` with `suffix` inserted before the extension.
pub fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}{suffix}.{}", ext.to_string_lossy()),
        None => format!("{stem}{suffix}"),
    };
    path.with_file_name(name)
}
