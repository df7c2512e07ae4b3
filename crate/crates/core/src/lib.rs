//! Correlation structure hidden inside single-system states.
//!
//! A probability vector over `N` outcomes, or a density matrix on an
//! `N`-dimensional Hilbert space, carries no subsystem structure of its own.
//! Choosing a factorization `N = X1 * X2 * ... * Xn` and the mixed-radix
//! bijection between linear and multi indices turns the same data into a
//! state of `n` virtual parties. This crate computes the entropies, mutual
//! and conditional information, reduced states, correlation defects, and
//! entanglement diagnostics of those virtual decompositions, along with the
//! Gibbs-state thermodynamics used to drive them.
//!
//! Index conventions are 1-based at every public boundary: axis 1 varies
//! fastest, and `y = x1 + (x2 - 1) X1 + (x3 - 1) X1 X2 + ...` with
//! `y in 1..=N`.
//!
//! ```
//! use qudit_correlations::{FactorShape, ProbVector, mutual_information};
//!
//! let shape = FactorShape::new(vec![2, 2])?;
//! let p = ProbVector::new(vec![0.5, 0.0, 0.0, 0.5])?;
//! let i = mutual_information(&p, &shape)?;
//! assert!((i - std::f64::consts::LN_2).abs() < 1e-12);
//! # Ok::<(), qudit_correlations::Error>(())
//! ```

pub mod classical;
pub mod error;
pub mod indexing;
pub mod io;
pub mod quantum;
pub mod sample;
pub mod thermo;

/// Numerical thresholds shared across the crate.
pub mod tolerance {
    /// Hermiticity, trace, and positivity checks on density matrices and
    /// observables.
    pub const STATE: f64 = 1e-9;
    /// Probability normalization check.
    pub const NORMALIZATION: f64 = 1e-9;
    /// Entrywise comparisons of matrices and distributions.
    pub const ENTRYWISE: f64 = 1e-12;
    /// Eigenvalues and probabilities below this are treated as exact zeros
    /// inside entropy sums.
    pub const ENTROPY_ZERO: f64 = 1e-15;
}

pub use classical::{
    conditional_information, correlation_defect, marginal, mutual_information,
    product_distribution, shannon_entropy, MarginalSpec, ProbVector,
};
pub use error::{Error, Result};
pub use indexing::{FactorShape, MultiIndex};
pub use io::{
    format_sig, load_density, load_hermitian, load_matrix, load_prob_vector, parse_prob_vector,
    prob_vector_to_text, write_matrix, write_prob_vector, write_report, LoadedMatrix,
    MatrixDocument, MatrixKind, MeasureReport, ReportFormat,
};
pub use quantum::{
    artificial_reduce, conditional_quantum_information, correlation_defect_matrix, embed_pad,
    is_ppt, mutual_quantum_information, partial_transpose, separable_mixture, tensor_product,
    von_neumann_entropy, ComplexMatrix, DensityMatrix, PptVerdict, SpectralDecomposition,
    StateDiagnostics,
};
pub use thermo::{
    artificial_qubit_pair, check_energy_entropy_inequality, expected_energy, gibbs_state,
    log_partition, thermo_report, HermitianObservable, ThermoReport,
};
