use thiserror::Error;

/// Errors produced by the discrete stepper, the conic oracle and the baselines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum KeplerError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("seed angle {actual:.17e} rad differs from the step angle {expected:.17e} rad")]
    AngleMismatch { expected: f64, actual: f64 },

    #[error("initial time step must be positive, got {0}")]
    NonPositiveTimestep(f64),

    #[error("zero-length position vector")]
    ZeroRadius,

    /// The time-step denominator changed sign: the next point would leave
    /// the branch of the discrete orbit (unbound motion past its asymptote).
    #[error("escape at n={n}: time-step denominator {denominator:e} is not positive")]
    Escape { n: usize, denominator: f64 },

    #[error("degenerate step at n={n}: {reason}")]
    Degenerate { n: usize, reason: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("radial orbit (zero angular momentum) is not supported")]
    RadialOrbit,

    #[error("singular position during integration (|r| = {0:e})")]
    Singularity(f64),

    #[error("{solver} did not converge after {iterations} iterations")]
    NonConvergence { solver: &'static str, iterations: usize },
}

impl KeplerError {
    /// True for errors that end a run at runtime rather than rejecting its inputs.
    pub fn is_runtime(&self) -> bool {
        matches!(
            self,
            KeplerError::Escape { .. }
                | KeplerError::Degenerate { .. }
                | KeplerError::Domain(_)
                | KeplerError::Singularity(_)
                | KeplerError::NonConvergence { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, KeplerError>;
