//! Density matrices and the quantum correlation measures defined over
//! virtual subsystem decompositions: von Neumann entropy, partial traces
//! under a [`FactorShape`], mutual and conditional quantum information,
//! correlation-defect matrices, separable mixtures, the PPT witness, and
//! zero-padding embeddings.
//!
//! All spectral work goes through Hermitian eigendecompositions; no general
//! matrix logarithm is ever taken.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::classical::{entropy_term, MarginalSpec, ProbVector};
use crate::error::{Error, Result};
use crate::indexing::FactorShape;
use crate::tolerance;

pub type ComplexMatrix = DMatrix<Complex<f64>>;

/// Defect magnitudes measured by [`DensityMatrix::diagnose`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateDiagnostics {
    /// Largest entrywise deviation from `M = M^dag`.
    pub hermiticity_defect: f64,
    /// `|tr M - 1|`.
    pub trace_defect: f64,
    /// Smallest eigenvalue of the hermitized matrix.
    pub min_eigenvalue: f64,
    /// Threshold the defects were compared against.
    pub tolerance: f64,
    /// True iff all three checks pass at that threshold.
    pub passes: bool,
}

/// A Hermitian, positive-semidefinite, unit-trace complex matrix.
///
/// Validation happens at construction; every further operation can assume
/// the invariants. The tolerance used at construction is remembered so
/// states derived from loosely validated inputs are not rejected later.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    tol: f64,
}

impl DensityMatrix {
    /// Validates against the default state tolerance.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, tolerance::STATE)
    }

    /// Validates hermiticity, unit trace, and positive semidefiniteness,
    /// each within `tol`.
    pub fn with_tolerance(matrix: ComplexMatrix, tol: f64) -> Result<Self> {
        let diag = Self::diagnose(&matrix, tol)?;
        if diag.hermiticity_defect > tol {
            return Err(Error::NotHermitian {
                defect: diag.hermiticity_defect,
                tolerance: tol,
            });
        }
        if diag.trace_defect > tol {
            return Err(Error::TraceDefect {
                defect: diag.trace_defect,
                tolerance: tol,
            });
        }
        if diag.min_eigenvalue < -tol {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: diag.min_eigenvalue,
                tolerance: tol,
            });
        }
        Ok(Self { matrix, tol })
    }

    /// Measures how far a candidate matrix is from being a state without
    /// rejecting it. Fails only on non-square or empty input.
    pub fn diagnose(matrix: &ComplexMatrix, tol: f64) -> Result<StateDiagnostics> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        if matrix.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        let mut hermiticity_defect = 0.0f64;
        for i in 0..matrix.nrows() {
            for j in 0..matrix.ncols() {
                let gap = (matrix[(i, j)] - matrix[(j, i)].conj()).norm();
                hermiticity_defect = hermiticity_defect.max(gap);
            }
        }
        let trace_defect = (matrix.trace() - Complex::new(1.0, 0.0)).norm();
        let spectral = SpectralDecomposition::of_hermitian(matrix)?;
        let min_eigenvalue = spectral
            .eigenvalues()
            .last()
            .copied()
            .expect("nonempty spectrum");
        let passes =
            hermiticity_defect <= tol && trace_defect <= tol && min_eigenvalue >= -tol;
        Ok(StateDiagnostics {
            hermiticity_defect,
            trace_defect,
            min_eigenvalue,
            tolerance: tol,
            passes,
        })
    }

    /// Diagonal state from a probability vector laid along the diagonal.
    pub fn from_diagonal(probs: &[f64]) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        let matrix = ComplexMatrix::from_fn(probs.len(), probs.len(), |i, j| {
            if i == j {
                Complex::new(probs[i], 0.0)
            } else {
                Complex::ZERO
            }
        });
        Self::new(matrix)
    }

    /// `I / N`.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        let matrix = ComplexMatrix::identity(dim, dim).unscale(dim as f64);
        Ok(Self {
            matrix,
            tol: tolerance::STATE,
        })
    }

    /// Rank-one projector `|psi><psi|` from an amplitude vector, which must
    /// be normalized within the state tolerance.
    pub fn from_pure_state(amplitudes: &[Complex<f64>]) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > tolerance::STATE {
            return Err(Error::NotNormalized {
                sum: norm_sqr,
                tolerance: tolerance::STATE,
            });
        }
        let norm = norm_sqr.sqrt();
        let dim = amplitudes.len();
        let matrix = ComplexMatrix::from_fn(dim, dim, |i, j| {
            (amplitudes[i] / norm) * (amplitudes[j] / norm).conj()
        });
        Ok(Self {
            matrix,
            tol: tolerance::STATE,
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// The tolerance this state was validated with.
    pub fn validation_tolerance(&self) -> f64 {
        self.tol
    }

    /// Eigendecomposition of the state.
    pub fn spectral(&self) -> SpectralDecomposition {
        SpectralDecomposition::of_hermitian(&self.matrix).expect("states are square and nonempty")
    }
}

/// Eigenvalues (descending) and orthonormal eigenvectors of a Hermitian
/// matrix. The input is symmetrized as `(M + M^dag) / 2` before
/// decomposition, so tiny hermiticity defects cannot leak into complex
/// eigenvalues.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: ComplexMatrix,
}

impl SpectralDecomposition {
    pub fn of_hermitian(matrix: &ComplexMatrix) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        if matrix.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        let eig = hermitize(matrix).symmetric_eigen();
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| {
            eig.eigenvalues[b]
                .partial_cmp(&eig.eigenvalues[a])
                .expect("real symmetric eigenvalues are finite")
        });
        let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let eigenvectors = eig.eigenvectors.select_columns(order.iter());
        Ok(Self {
            eigenvalues,
            eigenvectors,
        })
    }

    /// Descending eigenvalues.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Columns are the eigenvectors, ordered like the eigenvalues.
    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    /// Applies a real function to the spectrum: `U f(Lambda) U^dag`.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let diag = ComplexMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex::new(f(self.eigenvalues[i]), 0.0)
            } else {
                Complex::ZERO
            }
        });
        &self.eigenvectors * diag * self.eigenvectors.adjoint()
    }

    /// `U Lambda U^dag`, for checking reconstruction error.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply(|l| l)
    }
}

pub(crate) fn hermitize(matrix: &ComplexMatrix) -> ComplexMatrix {
    (matrix + matrix.adjoint()).scale(0.5)
}

/// `S = -tr(rho ln rho)` in nats, from the spectrum with `0 ln 0 = 0`;
/// eigenvalues within tolerance of zero contribute nothing.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    rho.spectral()
        .eigenvalues()
        .iter()
        .map(|&l| entropy_term(l))
        .sum::<f64>()
        .max(0.0)
}

/// Partial trace over the dropped axes of `spec`, producing the state of
/// the kept virtual subsystems.
pub fn artificial_reduce(rho: &DensityMatrix, spec: &MarginalSpec) -> Result<DensityMatrix> {
    let shape = spec.shape();
    if rho.dim() != shape.dim() {
        return Err(Error::DimensionMismatch {
            expected: shape.dim(),
            actual: rho.dim(),
        });
    }
    let kept = spec.kept_shape();
    let dropped_axes: Vec<usize> = (1..=shape.arity())
        .filter(|axis| !spec.keep_axes().contains(axis))
        .collect();
    let dropped_factors: Vec<usize> = dropped_axes
        .iter()
        .map(|&axis| shape.factors()[axis - 1])
        .collect();
    let dropped_dim: usize = dropped_factors.iter().product();

    let mut out = ComplexMatrix::zeros(kept.dim(), kept.dim());
    let mut full_row = vec![0usize; shape.arity()];
    let mut full_col = vec![0usize; shape.arity()];
    let mut dropped_coords = vec![0usize; dropped_axes.len()];
    for r in 0..kept.dim() {
        let rc = kept.coords_of(r);
        for c in 0..kept.dim() {
            let cc = kept.coords_of(c);
            let mut acc = Complex::ZERO;
            for d in 0..dropped_dim {
                let mut rest = d;
                for (slot, &bound) in dropped_factors.iter().enumerate() {
                    dropped_coords[slot] = rest % bound;
                    rest /= bound;
                }
                for (slot, &axis) in spec.keep_axes().iter().enumerate() {
                    full_row[axis - 1] = rc[slot];
                    full_col[axis - 1] = cc[slot];
                }
                for (slot, &axis) in dropped_axes.iter().enumerate() {
                    full_row[axis - 1] = dropped_coords[slot];
                    full_col[axis - 1] = dropped_coords[slot];
                }
                acc += rho.matrix()[(shape.offset_of(&full_row), shape.offset_of(&full_col))];
            }
            out[(r, c)] = acc;
        }
    }
    DensityMatrix::with_tolerance(out, rho.tol.max(tolerance::STATE))
}

/// Kronecker-structured product of states, ordered so the first part's
/// index varies fastest in the composite linear index.
pub fn tensor_product(parts: &[DensityMatrix]) -> Result<DensityMatrix> {
    let Some(first) = parts.first() else {
        return Err(Error::EmptyProduct);
    };
    let mut acc = first.matrix().clone();
    let mut tol = first.tol;
    for part in &parts[1..] {
        // kron(B, A) puts A's index fastest.
        acc = part.matrix().kronecker(&acc);
        tol = tol.max(part.tol);
    }
    DensityMatrix::with_tolerance(acc, tol.max(tolerance::STATE))
}

/// `I_q = S(1) + S(2) - S(1,2)` across a two-factor shape.
pub fn mutual_quantum_information(rho: &DensityMatrix, shape: &FactorShape) -> Result<f64> {
    require_arity(shape, 2)?;
    let s1 = von_neumann_entropy(&artificial_reduce(
        rho,
        &MarginalSpec::new(shape.clone(), vec![1])?,
    )?);
    let s2 = von_neumann_entropy(&artificial_reduce(
        rho,
        &MarginalSpec::new(shape.clone(), vec![2])?,
    )?);
    Ok(s1 + s2 - von_neumann_entropy(rho))
}

/// `I_Cq = S(1,2) + S(2,3) - S(2) - S(1,2,3)` across a three-factor shape;
/// nonnegative by strong subadditivity.
pub fn conditional_quantum_information(rho: &DensityMatrix, shape: &FactorShape) -> Result<f64> {
    require_arity(shape, 3)?;
    let s12 = von_neumann_entropy(&artificial_reduce(
        rho,
        &MarginalSpec::new(shape.clone(), vec![1, 2])?,
    )?);
    let s23 = von_neumann_entropy(&artificial_reduce(
        rho,
        &MarginalSpec::new(shape.clone(), vec![2, 3])?,
    )?);
    let s2 = von_neumann_entropy(&artificial_reduce(
        rho,
        &MarginalSpec::new(shape.clone(), vec![2])?,
    )?);
    Ok(s12 + s23 - s2 - von_neumann_entropy(rho))
}

/// `Delta rho = rho - rho(1) (x) rho(2)`: Hermitian, traceless, and zero
/// exactly when the state factorizes into its own reductions.
pub fn correlation_defect_matrix(
    rho: &DensityMatrix,
    shape: &FactorShape,
) -> Result<ComplexMatrix> {
    require_arity(shape, 2)?;
    let r1 = artificial_reduce(rho, &MarginalSpec::new(shape.clone(), vec![1])?)?;
    let r2 = artificial_reduce(rho, &MarginalSpec::new(shape.clone(), vec![2])?)?;
    // kron(B, A) puts axis 1 fastest, matching the composite index.
    Ok(rho.matrix() - r2.matrix().kronecker(r1.matrix()))
}

/// `sum_k p_k rho_k(1) (x) rho_k(2)`; separable by construction, hence PPT.
pub fn separable_mixture(
    weights: &ProbVector,
    pairs: &[(DensityMatrix, DensityMatrix)],
) -> Result<DensityMatrix> {
    if weights.dim() != pairs.len() {
        return Err(Error::WeightCount {
            weights: weights.dim(),
            pairs: pairs.len(),
        });
    }
    if pairs.is_empty() {
        return Err(Error::EmptyProduct);
    }
    let dim = pairs[0].0.dim() * pairs[0].1.dim();
    let mut acc = ComplexMatrix::zeros(dim, dim);
    let mut tol = tolerance::STATE;
    for (&w, (a, b)) in weights.probs().iter().zip(pairs) {
        if a.dim() * b.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: a.dim() * b.dim(),
            });
        }
        acc += b.matrix().kronecker(a.matrix()).scale(w);
        tol = tol.max(a.tol).max(b.tol);
    }
    DensityMatrix::with_tolerance(acc, tol)
}

/// Transposes the indices of one axis of a two-factor decomposition. The
/// result stays Hermitian with unit trace but may lose positivity; that
/// loss is the entanglement witness.
pub fn partial_transpose(
    rho: &DensityMatrix,
    shape: &FactorShape,
    axis: usize,
) -> Result<ComplexMatrix> {
    require_arity(shape, 2)?;
    if rho.dim() != shape.dim() {
        return Err(Error::DimensionMismatch {
            expected: shape.dim(),
            actual: rho.dim(),
        });
    }
    if axis != 1 && axis != 2 {
        return Err(Error::InvalidAxis { axis });
    }
    let (f1, f2) = (shape.factors()[0], shape.factors()[1]);
    let mut out = ComplexMatrix::zeros(rho.dim(), rho.dim());
    for a in 0..f1 {
        for b in 0..f2 {
            for ap in 0..f1 {
                for bp in 0..f2 {
                    let value = rho.matrix()[(shape.offset_of(&[a, b]), shape.offset_of(&[ap, bp]))];
                    let (row, col) = if axis == 1 {
                        (shape.offset_of(&[ap, b]), shape.offset_of(&[a, bp]))
                    } else {
                        (shape.offset_of(&[a, bp]), shape.offset_of(&[ap, b]))
                    };
                    out[(row, col)] = value;
                }
            }
        }
    }
    Ok(out)
}

/// Outcome of the PPT (positive partial transpose) test.
///
/// A negative partial-transpose eigenvalue certifies entanglement for any
/// dimensions. The converse direction, PPT implying separability, holds
/// only for 2x2 and 2x3 decompositions; `conclusive` records whether the
/// shape is in that range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PptVerdict {
    pub min_pt_eigenvalue: f64,
    pub ppt: bool,
    pub conclusive: bool,
}

/// Runs the PPT test across a two-factor shape.
pub fn is_ppt(rho: &DensityMatrix, shape: &FactorShape) -> Result<PptVerdict> {
    let pt = partial_transpose(rho, shape, 1)?;
    let spectral = SpectralDecomposition::of_hermitian(&pt)?;
    let min_pt_eigenvalue = *spectral.eigenvalues().last().expect("nonempty spectrum");
    let mut dims = [shape.factors()[0], shape.factors()[1]];
    dims.sort_unstable();
    Ok(PptVerdict {
        min_pt_eigenvalue,
        ppt: min_pt_eigenvalue >= -tolerance::STATE,
        conclusive: dims == [2, 2] || dims == [2, 3],
    })
}

/// Embeds the state in a space `k` levels larger by adding zero rows and
/// columns. The spectrum gains `k` zeros; entropy is untouched.
pub fn embed_pad(rho: &DensityMatrix, k: usize) -> DensityMatrix {
    let n = rho.dim();
    let mut out = ComplexMatrix::zeros(n + k, n + k);
    out.view_mut((0, 0), (n, n)).copy_from(rho.matrix());
    DensityMatrix {
        matrix: out,
        tol: rho.tol,
    }
}

fn require_arity(shape: &FactorShape, expected: usize) -> Result<()> {
    if shape.arity() != expected {
        return Err(Error::FactorCount {
            expected,
            actual: shape.arity(),
        });
    }
    Ok(())
}
