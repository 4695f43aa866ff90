use thiserror::Error;

/// Errors produced by the construction and verification routines.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The pendulum interval is empty because the integration constant does
    /// not exceed the profile minimum.
    #[error("empty basic domain: Ctilde = {ctilde} <= threshold = {threshold}")]
    EmptyDomain { ctilde: f64, threshold: f64 },

    /// The pendulum amplitude is below numerical resolution.
    #[error("degenerate basic domain: (Ctilde - threshold)/threshold = {rel_gap:e} is below resolution")]
    Degenerate { rel_gap: f64 },

    /// A rational closure target lies outside the attainable range of the
    /// angle integral.
    #[error("closure target out of range: {0}")]
    TargetOutOfRange(String),

    /// The scan over the integration constant found no sign change for the
    /// requested target.
    #[error("no root found: {0}")]
    NoRootFound(String),

    /// Damped Newton iteration failed to reach the requested residual.
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    /// Newton iterates left the admissible parameter region.
    #[error("iterates left the admissible region (C > 0, Ctilde > threshold)")]
    LeftDomain,

    /// No steady magnitude pair exists for the requested spin ratio.
    #[error("infeasible steady ratio: {0}")]
    InfeasibleRatio(String),

    /// A verification suite measured a residual above its tolerance.
    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI contract.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Parse(_) | Error::InfeasibleRatio(_) => 2,
            Error::EmptyDomain { .. } | Error::Degenerate { .. } => 3,
            Error::TargetOutOfRange(_)
            | Error::NoRootFound(_)
            | Error::NonConvergence { .. }
            | Error::LeftDomain => 4,
            Error::VerificationFailed(_) => 5,
            Error::Io(_) => 1,
        }
    }
}
