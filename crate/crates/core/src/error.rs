use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by shape handling, state validation, and file parsing.
#[derive(Debug, Error)]
pub enum Error {
    #[error("factor list is empty")]
    EmptyFactors,

    #[error("factor on axis {axis} must be >= 1")]
    ZeroFactor { axis: usize },

    #[error("factor product overflows the index type")]
    FactorOverflow,

    #[error("coordinate tuple has {actual} entries, shape has {expected} axes")]
    CoordinateArity { expected: usize, actual: usize },

    #[error("coordinate {value} on axis {axis} is outside 1..={bound}")]
    CoordinateOutOfRange {
        axis: usize,
        value: usize,
        bound: usize,
    },

    #[error("index {index} is outside 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("shape has {actual} factors, this operation requires {expected}")]
    FactorCount { expected: usize, actual: usize },

    #[error("keep-axes list is invalid: {reason}")]
    InvalidKeepAxes { reason: String },

    #[error("probability entry {value:e} at index {index} is negative")]
    NegativeProbability {
        /// 1-based linear index of the offending entry.
        index: usize,
        value: f64,
    },

    #[error("probabilities sum to {sum}, expected 1 within {tolerance:e}")]
    NotNormalized { sum: f64, tolerance: f64 },

    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is empty")]
    EmptyMatrix,

    #[error("hermiticity defect {defect:e} exceeds tolerance {tolerance:e}")]
    NotHermitian { defect: f64, tolerance: f64 },

    #[error("trace defect {defect:e} exceeds tolerance {tolerance:e}")]
    TraceDefect { defect: f64, tolerance: f64 },

    #[error("minimum eigenvalue {min_eigenvalue:e} is below -{tolerance:e}")]
    NotPositiveSemidefinite {
        min_eigenvalue: f64,
        tolerance: f64,
    },

    #[error("state list is empty")]
    EmptyProduct,

    #[error("{weights} mixture weights but {pairs} state pairs")]
    WeightCount { weights: usize, pairs: usize },

    #[error("transpose axis must be 1 or 2, got {axis}")]
    InvalidAxis { axis: usize },

    #[error("temperature must be a nonzero number, got {value}")]
    InvalidTemperature { value: f64 },

    #[error("beta must be finite, got {beta}")]
    NonFiniteBeta { beta: f64 },

    #[error("field `{field}` is not finite")]
    NonFiniteValue { field: &'static str },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("array `{field}` has shape {rows}x{cols}, expected {dim}x{dim}")]
    ArrayShape {
        field: &'static str,
        dim: usize,
        rows: usize,
        cols: usize,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
