use thiserror::Error;

/// Everything that can go wrong inside the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter lies outside its physical domain.
    #[error("{name} = {value} is out of range: {expected}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    /// Fock indices that do not describe a valid matrix element or outcome.
    #[error("invalid Fock index: {0}")]
    Domain(String),

    /// The truncated two-mode squeezed state would drop more weight than allowed.
    #[error(
        "n_max = {n_max} is too small for lambda = {lambda}: tail weight {tail:e} \
         exceeds trace_tol {trace_tol:e}"
    )]
    Truncation {
        lambda: f64,
        n_max: usize,
        tail: f64,
        trace_tol: f64,
    },

    /// A post-selected branch has (numerically) vanishing probability.
    #[error("post-selected branch has vanishing probability (trace = {trace:e})")]
    ZeroTrace { trace: f64 },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    /// Two states with different truncations were combined.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
