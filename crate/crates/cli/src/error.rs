use ql_core::{ClassifyError, CohomError, LinkError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}:{line}: {msg}")]
    Scenario {
        path: String,
        line: usize,
        msg: String,
    },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Infeasible(String),
    #[error("{0}")]
    Inconsistent(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Scenario { .. } | CliError::Io { .. } => 1,
            CliError::Infeasible(_) => 2,
            CliError::Inconsistent(_) => 3,
        }
    }
}

impl From<CohomError> for CliError {
    fn from(e: CohomError) -> Self {
        match e {
            CohomError::InvalidCurve(_) | CohomError::NotAcm => CliError::Usage(e.to_string()),
            CohomError::NegativeDimension { .. } | CohomError::NegativeSections { .. } => {
                CliError::Infeasible(e.to_string())
            }
            CohomError::RegularityConflict { .. } => CliError::Inconsistent(e.to_string()),
        }
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::Cohom(c) => c.into(),
            ClassifyError::NegativeKernelDimension { .. } => CliError::Infeasible(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<LinkError> for CliError {
    fn from(e: LinkError) -> Self {
        match e {
            LinkError::Cohom(c) => c.into(),
            LinkError::InvalidLinkage(_) | LinkError::NotOnQuadric(_) => {
                CliError::Usage(e.to_string())
            }
            LinkError::ResidualNegativeDegree { .. }
            | LinkError::ResidualNegativeGenus(_)
            | LinkError::NonIntegralGenus(_) => CliError::Infeasible(e.to_string()),
            _ => CliError::Inconsistent(e.to_string()),
        }
    }
}
