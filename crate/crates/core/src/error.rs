//! Error types shared across the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Configuration violates an invariant (empty, nonpositive mass,
    /// coincident positions, non-finite coordinates).
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    /// Evaluation point is within the singularity cutoff of mass `index`.
    #[error("evaluation point within {cutoff:.3e} of mass {index}")]
    SingularEvaluation { index: usize, cutoff: f64 },

    /// Seed grid would exceed the configured capacity limit.
    #[error("seed grid needs {required} points, exceeding the limit of {limit}")]
    SeedCapacity { required: usize, limit: usize },

    /// Hessian determinant too close to zero to assign a Morse index.
    #[error("degenerate Hessian: |det| = {det:.3e} <= threshold {threshold:.3e}")]
    DegenerateHessian { det: f64, threshold: f64 },

    /// A root bracket that must exist (by monotonicity) showed no sign change.
    #[error("no sign change in bracket [{lo}, {hi}]")]
    BracketFailure { lo: f64, hi: f64 },

    /// Parameter outside an operation's stated domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Malformed textual input (JSON configuration, rational literal,
    /// support-set export).
    #[error("parse error: {0}")]
    Parse(String),
}
