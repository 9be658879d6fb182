use std::io;
use std::path::PathBuf;

use lyaploc_core::Error;

/// Process exit codes.
pub mod exit {
    pub const VERDICT_TRUE: i32 = 0;
    pub const VERDICT_FALSE: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const NO_CONVERGENCE: i32 = 3;
    pub const SINGULAR_SYSTEM: i32 = 4;
    pub const REGION_PARAMS: i32 = 5;
    pub const BASE_CERTIFICATE: i32 = 6;
    pub const KREIN_VIOLATION: i32 = 7;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("cannot parse {}: {message}", path.display())]
    Parse { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("invalid region parameters: {0}")]
    RegionParams(String),
    #[error("base certificate failed: {0}")]
    BaseCertificate(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Usage(_) => exit::INPUT,
            CliError::RegionParams(_) => exit::REGION_PARAMS,
            CliError::BaseCertificate(_) => exit::BASE_CERTIFICATE,
            CliError::Core(e) => match e {
                Error::NoConvergence { .. } => exit::NO_CONVERGENCE,
                Error::SingularSystem { .. } => exit::SINGULAR_SYSTEM,
                Error::InvalidRegionParams(_) | Error::UnsupportedRegion(_) => exit::REGION_PARAMS,
                Error::KreinViolation { .. } => exit::KREIN_VIOLATION,
                _ => exit::INPUT,
            },
        }
    }

    /// Short machine-readable tag for reports.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Parse { .. } => "parse",
            CliError::Usage(_) => "usage",
            CliError::RegionParams(_) => "region_params",
            CliError::BaseCertificate(_) => "base_certificate",
            CliError::Core(e) => match e {
                Error::NoConvergence { .. } => "no_convergence",
                Error::SingularSystem { .. } => "singular_system",
                Error::InvalidRegionParams(_) => "region_params",
                Error::UnsupportedRegion(_) => "unsupported_region",
                Error::KreinViolation { .. } => "krein_violation",
                Error::CNotPositiveDefinite => "c_not_positive_definite",
                Error::DimensionMismatch { .. } | Error::NotSquare { .. } => "dimension",
                _ => "numerical",
            },
        }
    }
}
