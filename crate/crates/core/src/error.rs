use thiserror::Error;

/// Errors raised by the library.
///
/// A missing bound state is not an error for spectrum enumeration (see
/// [`crate::hulthen::BoundState`]); it only becomes one for operations that
/// need an actual eigenfunction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("no bound state for n={n}, l={l} in D={dim}")]
    NoBoundState { n: u32, l: u32, dim: u32 },

    #[error("under-root polynomial is not a perfect square (residual discriminant {residual:e})")]
    NotPerfectSquare { residual: f64 },

    #[error("no Nikiforov-Uvarov branch with a negative tau slope")]
    NoNegativeSlope,

    #[error("normalization sum is not positive ({0:e}); cancellation too severe")]
    Normalization(f64),

    #[error("adaptive quadrature did not converge: estimate {estimate:e}, error {error:e} after {intervals} intervals")]
    Quadrature {
        estimate: f64,
        error: f64,
        intervals: usize,
    },

    #[error("energy bracket [{lo:e}, {hi:e}] does not straddle the state with {target} nodes (node counts {nodes_lo}, {nodes_hi})")]
    BracketNotStraddling {
        lo: f64,
        hi: f64,
        target: u32,
        nodes_lo: u32,
        nodes_hi: u32,
    },

    #[error("shooting did not converge within {max_iter} iterations (bracket width {width:e})")]
    NotConverged { max_iter: usize, width: f64 },

    #[error("converged solution has {found} nodes, expected {expected}")]
    NodeMismatch { expected: u32, found: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
