// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("decoherence axis is not a unit vector (|r|^2 = {norm_sq})")]
    AxisNotNormalized { norm_sq: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("channel {channel} does not admit {requirement}")]
    InvalidChannel { channel: &'static str, requirement: String },

    #[error("register of {requested} qubits exceeds the dense-oracle limit of {limit}")]
    Capacity { requested: usize, limit: usize },

    #[error("dynamics do not decay (max Re lambda = {max_real_part}); no exponential envelope exists")]
    NoDecay { max_real_part: f64 },

    #[error("integration produced a non-physical state: {0}")]
    Integration(String),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
