/// Crate-wide error type. Numerical routines report how far they got
/// (achieved error estimates) so callers can distinguish "wrong input"
/// from "did not converge".
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("singularity: {0}")]
    Singularity(String),

    #[error(
        "quadrature did not converge: achieved {achieved:.3e}, requested {requested:.3e} ({context})"
    )]
    QuadratureFailure {
        achieved: f64,
        requested: f64,
        context: String,
    },

    #[error("internal consistency violated: {0}")]
    InvariantViolation(String),

    #[error("supercritical coupling zalpha = {0}; bound-state formulas assume zalpha < 1")]
    Supercritical(f64),

    #[error("eigenvalue {value:.6e} within {tol:.1e} of zero: sign projector undefined")]
    GapCrossing { value: f64, tol: f64 },

    #[error("did not converge: {context} (achieved residual {achieved:.3e}, requested {requested:.3e})")]
    Convergence {
        achieved: f64,
        requested: f64,
        context: String,
    },

    #[error("table does not cover the integrand support: {0}")]
    Coverage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
