// SPDX-License-Identifier: Apache-2.0

use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    BadInput(String),

    #[error("{0}")]
    Capacity(String),

    /// The validation suite ran and at least one check failed.
    #[error("validation failed: {0}")]
    Validation(String),

    #[error("cannot write {path}: {source}")]
    Output {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Validation(_) => 1,
            CliError::BadInput(_) | CliError::Output { .. } => 2,
            CliError::Capacity(_) => 3,
        })
    }
}

impl From<qwalk_core::Error> for CliError {
    fn from(e: qwalk_core::Error) -> Self {
        match e {
            qwalk_core::Error::Capacity { .. } => CliError::Capacity(e.to_string()),
            other => CliError::BadInput(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn bad_input(msg: impl Into<String>) -> CliError {
    CliError::BadInput(msg.into())
}
