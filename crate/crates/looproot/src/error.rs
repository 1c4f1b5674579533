//! Errors surfaced by the CLI, each tagged with the module that raised it.

use looproot_core::coweight::CoweightError;
use looproot_core::roots::RootSystemError;
use looproot_core::scaling::ScalingError;
use looproot_core::{GcmError, LoopError, SubsystemError};
use thiserror::Error;

use crate::formats::{FormatError, PairError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{module}::{name}: {message}")]
    Domain { module: &'static str, name: &'static str, message: String },
}

impl CliError {
    pub fn domain(module: &'static str, name: &'static str, message: impl Into<String>) -> Self {
        CliError::Domain { module, name, message: message.into() }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain { .. } => 1,
        }
    }
}

impl From<GcmError> for CliError {
    fn from(e: GcmError) -> Self {
        CliError::domain("root_core", e.name(), e.to_string())
    }
}

impl From<RootSystemError> for CliError {
    fn from(e: RootSystemError) -> Self {
        CliError::domain("root_core", e.name(), e.to_string())
    }
}

impl From<SubsystemError> for CliError {
    fn from(e: SubsystemError) -> Self {
        CliError::domain("subsystems", e.name(), e.to_string())
    }
}

impl From<CoweightError> for CliError {
    fn from(e: CoweightError) -> Self {
        CliError::domain("coweight", e.name(), e.to_string())
    }
}

impl From<ScalingError> for CliError {
    fn from(e: ScalingError) -> Self {
        CliError::domain("scaling", e.name(), e.to_string())
    }
}

impl From<LoopError> for CliError {
    fn from(e: LoopError) -> Self {
        match e {
            LoopError::Subsystem(inner) => inner.into(),
            LoopError::Coweight(inner) => inner.into(),
            other => CliError::domain("loop_classifier", other.name(), other.to_string()),
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Gcm(inner) => inner.into(),
            other => CliError::domain("formats", other.name(), other.to_string()),
        }
    }
}

impl From<PairError> for CliError {
    fn from(e: PairError) -> Self {
        match e {
            PairError::Format(inner) => inner.into(),
            PairError::Subsystem(inner) => inner.into(),
            PairError::Loop(inner) => inner.into(),
        }
    }
}
