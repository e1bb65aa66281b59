use std::io;

use thiserror::Error;
use trapwell_core::model::ModelError;
use trapwell_core::oracle::OracleError;
use trapwell_core::wavefunction::WavefunctionError;
use trapwell_core::SpectrumError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NOT_FOUND: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("state {index} not found: the spectrum has {count} bound state(s)")]
    StateNotFound { index: usize, count: usize },
    #[error("verification failed: {0}")]
    VerifyFailed(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::StateNotFound { .. } => EXIT_NOT_FOUND,
            CliError::VerifyFailed(_) => EXIT_VERIFY,
            CliError::Numeric(_) | CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => EXIT_FAILURE,
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<SpectrumError> for CliError {
    fn from(e: SpectrumError) -> Self {
        match e {
            SpectrumError::NoBoundStates { .. } | SpectrumError::Model(_) => CliError::Invalid(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::EigensolverFailure => CliError::Numeric(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<WavefunctionError> for CliError {
    fn from(e: WavefunctionError) -> Self {
        CliError::Numeric(e.to_string())
    }
}
