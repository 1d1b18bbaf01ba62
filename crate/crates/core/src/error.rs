use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid value for `{name}`: {reason}")]
    Validation { name: &'static str, reason: String },

    #[error("unbound orbit: energy {energy} is not negative")]
    UnboundOrbit { energy: f64 },

    #[error("no real orbit: energy {energy} lies below the circular-orbit energy {circular}")]
    NoRealOrbit { energy: f64, circular: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "quadrature did not reach the requested tolerance after {evaluations} evaluations \
         (best estimate {best}, error estimate {error_estimate})"
    )]
    Convergence {
        best: f64,
        error_estimate: f64,
        evaluations: usize,
    },

    #[error("Newton iteration for the eccentric anomaly did not converge (eccentricity {eccentricity})")]
    KeplerNonConvergence { eccentricity: f64 },

    #[error(
        "degenerate branch cut: the orbit is circular (eccentricity {eccentricity}); \
         use the closed-form radial action instead"
    )]
    DegenerateCut { eccentricity: f64 },

    #[error("numerical inconsistency: {0}")]
    NumericalInconsistency(String),

    #[error("root bracket failure: {0}")]
    Bracket(String),

    #[error("constants file: {0}")]
    ConstantsFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn validation(name: &'static str, reason: impl Into<String>) -> Self {
        Error::Validation {
            name,
            reason: reason.into(),
        }
    }
}
