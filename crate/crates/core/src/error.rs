//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A parameter is outside its admissible domain (nonpositive constant, etc).
    #[error("domain error: {0}")]
    Domain(String),

    /// The right state lies below the physicality threshold v* = Γ/(Γ+2).
    #[error("physicality violated: v_plus = {v_plus} < v_star = {v_star}")]
    Physicality { v_plus: f64, v_star: f64 },

    /// The characteristic point v_plus = 1, where endstate hyperbolicity degenerates.
    #[error("characteristic limit v_plus = 1: {0}")]
    Characteristic(String),

    /// Boundary-value iteration failed to converge; carries the residual trace.
    #[error("profile solver did not converge after {iterations} iterations (last residual {last_residual:.3e})")]
    SolverNonconvergence {
        iterations: usize,
        last_residual: f64,
        trace: Vec<f64>,
    },

    /// Stable/unstable splitting of a limiting matrix is ambiguous or defective.
    #[error("splitting error: {0}")]
    Splitting(String),

    /// An ODE integration failed its tolerance contract.
    #[error("numerical integration error: {0}")]
    Numerical(String),

    /// Truncation-length ladder ran past the solved profile domain.
    #[error("truncation ladder exhausted at L = {reached}; profile domain ends at {domain_end}; re-solve on a larger domain")]
    LadderExhausted { reached: f64, domain_end: f64 },

    /// Evaluation requested outside the solved profile domain.
    #[error("x = {x} outside solved profile domain [{lo}, {hi}]")]
    OutsideDomain { x: f64, lo: f64, hi: f64 },

    /// |D| fell below threshold at a contour sample.
    #[error("Evans function vanishes on the contour at lambda = {re}+{im}i (|D| = {magnitude:.3e})")]
    ZeroOnContour { re: f64, im: f64, magnitude: f64 },

    /// Contour refinement hit maximum depth with an argument step still above threshold.
    #[error("winding unresolved: arg step {arg_step:.4} rad after depth {depth}")]
    UnresolvedWinding { arg_step: f64, depth: usize },

    /// log D fit is undefined (sign change or vanishing on the real axis).
    #[error("high-frequency fit error: {0}")]
    Fit(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
