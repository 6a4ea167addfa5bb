// SPDX-License-Identifier: Apache-2.0

//! Benchmark fixtures.

use qwalk_core::{Channel, DecoherenceAxis, WalkParams};

/// Named channels covering the no-Zeno, Zeno and depolarizing cases.
pub fn channels() -> Vec<(&'static str, Channel, WalkParams)> {
    let generic = DecoherenceAxis::normalized(0.3, 0.5, 0.8).expect("nonzero axis");
    vec![
        ("generic_weak", Channel::Axis(generic), params(1.0, 0.5)),
        (
            "dephasing_zeno",
            Channel::Axis(DecoherenceAxis::DEPHASING),
            params(1.0, 6.0),
        ),
        ("depolarizing", Channel::Depolarizing, params(1.0, 1.5)),
    ]
}

pub fn params(delta: f64, gamma: f64) -> WalkParams {
    WalkParams::new(delta, gamma).expect("valid parameters")
}

/// Sample times spanning several oscillation periods.
pub fn times(n: usize, horizon: f64) -> Vec<f64> {
    (0..n).map(|i| horizon * i as f64 / n as f64).collect()
}
