use serde::Serialize;
use thiserror::Error;
use wonderfan::affine::AffineError;
use wonderfan::fans::FanError;
use wonderfan::lattice::LatticeError;
use wonderfan::root::RootError;
use wonderfan::voronoi::VoronoiError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Unsupported(_) => 3,
            CliError::Internal(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Unsupported(_) => "unsupported",
            CliError::Internal(_) => "internal",
        }
    }

    pub fn payload(&self, command: &str) -> ErrorPayload {
        ErrorPayload {
            schema_version: crate::envelope::SCHEMA_VERSION,
            command: command.to_string(),
            error: ErrorBody {
                kind: self.kind(),
                exit_code: self.exit_code(),
                message: self.to_string(),
            },
        }
    }
}

#[derive(Serialize)]
pub struct ErrorPayload {
    pub schema_version: u32,
    pub command: String,
    pub error: ErrorBody,
}

#[derive(Serialize)]
pub struct ErrorBody {
    pub kind: &'static str,
    pub exit_code: i32,
    pub message: String,
}

impl From<RootError> for CliError {
    fn from(e: RootError) -> Self {
        match e {
            RootError::UnknownType(_)
            | RootError::RankOutOfRange { .. }
            | RootError::Reducible
            | RootError::CapExceeded { .. } => CliError::Unsupported(e.to_string()),
            RootError::Lattice(l) => l.into(),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::DimensionMismatch { .. } => CliError::Config(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<AffineError> for CliError {
    fn from(e: AffineError) -> Self {
        match e {
            AffineError::Root(r) => r.into(),
            AffineError::CapExceeded { .. } => CliError::Unsupported(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<FanError> for CliError {
    fn from(e: FanError) -> Self {
        match e {
            FanError::Root(r) => r.into(),
            FanError::Affine(a) => a.into(),
            FanError::Lattice(l) => l.into(),
            FanError::InfiniteCokernel(_) => CliError::Internal(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<VoronoiError> for CliError {
    fn from(e: VoronoiError) -> Self {
        match e {
            VoronoiError::RankTooLarge { .. } => CliError::Unsupported(e.to_string()),
            VoronoiError::Lattice(l) => l.into(),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Internal(format!("serialization failed: {e}"))
    }
}
