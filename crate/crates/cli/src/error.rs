use thiserror::Error;

use chow_core::components::ComponentError;
use chow_core::exact::ExactError;
use chow_core::grassmann::GrassmannError;
use chow_core::ideals::IdealError;
use chow_core::integrability::IntegrabilityError;
use chow_core::poly::PolyError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("primes disagree: {0}")]
    Consensus(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Component(#[from] ComponentError),
    #[error(transparent)]
    Grassmann(#[from] GrassmannError),
    #[error(transparent)]
    Integrability(#[from] IntegrabilityError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{0}")]
    Ideal(IdealError),
    #[error("{0}")]
    Exact(ExactError),
}

impl From<IdealError> for CliError {
    fn from(e: IdealError) -> Self {
        match e {
            IdealError::ConsensusFailure(t) => CliError::Consensus(format!("{t:?}")),
            IdealError::TooFewPoints { .. } => CliError::Input(e.to_string()),
            IdealError::Exact(x) => x.into(),
            other => CliError::Ideal(other),
        }
    }
}

impl From<ExactError> for CliError {
    fn from(e: ExactError) -> Self {
        match e {
            ExactError::ConsensusFailure(t) => CliError::Consensus(format!("{t:?}")),
            ExactError::TooFewPrimes(_) | ExactError::NotPrime(_) | ExactError::ModulusTooLarge(_) => {
                CliError::Input(e.to_string())
            }
            ExactError::ParseRational(_) => CliError::Input(e.to_string()),
            other => CliError::Exact(other),
        }
    }
}

impl CliError {
    /// Process exit status: 2 for bad input, 3 for prime disagreement, 1
    /// otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io(_) | CliError::Json(_) | CliError::Poly(_) => 2,
            CliError::Grassmann(GrassmannError::ZeroQuadric) => 2,
            CliError::Consensus(_) => 3,
            _ => 1,
        }
    }
}
