//! Gibbs-like states from Hermitian generators, the log-partition function,
//! energy, entropy, free energy, the energy-entropy inequality, and thermal
//! mutual information across artificial bipartitions.
//!
//! Everything is dimensionless: the temperature is `T = 1/beta` and no
//! Boltzmann constant appears anywhere. `beta = 0` is the uniform state;
//! `T = 0` is rejected.

use num_complex::Complex;

use crate::classical::MarginalSpec;
use crate::error::{Error, Result};
use crate::indexing::FactorShape;
use crate::quantum::{
    artificial_reduce, mutual_quantum_information, von_neumann_entropy, ComplexMatrix,
    DensityMatrix, SpectralDecomposition,
};
use crate::tolerance;

/// A Hermitian matrix acting as a Hamiltonian-like generator.
#[derive(Debug, Clone)]
pub struct HermitianObservable {
    matrix: ComplexMatrix,
}

impl HermitianObservable {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, tolerance::STATE)
    }

    /// Validates hermiticity within `tol` entrywise.
    pub fn with_tolerance(matrix: ComplexMatrix, tol: f64) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        if matrix.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        let mut defect = 0.0f64;
        for i in 0..matrix.nrows() {
            for j in 0..matrix.ncols() {
                defect = defect.max((matrix[(i, j)] - matrix[(j, i)].conj()).norm());
            }
        }
        if defect > tol {
            return Err(Error::NotHermitian {
                defect,
                tolerance: tol,
            });
        }
        Ok(Self { matrix })
    }

    /// Diagonal generator from real level energies.
    pub fn from_diagonal(levels: &[f64]) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        let matrix = ComplexMatrix::from_fn(levels.len(), levels.len(), |i, j| {
            if i == j {
                Complex::new(levels[i], 0.0)
            } else {
                Complex::ZERO
            }
        });
        Ok(Self { matrix })
    }

    /// The zero generator, whose Gibbs state is uniform at every beta.
    pub fn zero(dim: usize) -> Result<Self> {
        Self::from_diagonal(&vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// Thermodynamic summary of a Gibbs state at one inverse temperature.
///
/// `free_energy` is `E - S/beta`, undefined at `beta = 0` and therefore
/// absent there. `mutual_information` is present when a two-factor shape
/// was supplied to [`thermo_report`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoReport {
    pub beta: f64,
    pub energy: f64,
    pub entropy: f64,
    pub free_energy: Option<f64>,
    pub log_partition: f64,
    pub mutual_information: Option<f64>,
}

/// `rho(beta) = exp(-beta H) / tr exp(-beta H)`, computed spectrally with
/// the largest exponent factored out so large `beta * ||H||` cannot
/// overflow.
pub fn gibbs_state(h: &HermitianObservable, beta: f64) -> Result<DensityMatrix> {
    if !beta.is_finite() {
        return Err(Error::NonFiniteBeta { beta });
    }
    let spectral = SpectralDecomposition::of_hermitian(h.matrix())?;
    let shift = spectral
        .eigenvalues()
        .iter()
        .map(|&l| -beta * l)
        .fold(f64::NEG_INFINITY, f64::max);
    let unnormalized = spectral.apply(|l| (-beta * l - shift).exp());
    let trace = unnormalized.trace().re;
    DensityMatrix::new(unnormalized.unscale(trace))
}

/// `ln tr exp(-H/T)` for nonzero temperature, with the same spectral shift
/// as [`gibbs_state`].
pub fn log_partition(h: &HermitianObservable, t: f64) -> Result<f64> {
    if t == 0.0 || t.is_nan() {
        return Err(Error::InvalidTemperature { value: t });
    }
    lnz_beta(h, 1.0 / t)
}

/// `ln tr exp(-beta H)`; `beta = 0` gives `ln N`.
fn lnz_beta(h: &HermitianObservable, beta: f64) -> Result<f64> {
    if !beta.is_finite() {
        return Err(Error::NonFiniteBeta { beta });
    }
    let spectral = SpectralDecomposition::of_hermitian(h.matrix())?;
    let exponents: Vec<f64> = spectral.eigenvalues().iter().map(|&l| -beta * l).collect();
    let shift = exponents.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = exponents.iter().map(|&e| (e - shift).exp()).sum();
    Ok(shift + sum.ln())
}

/// `tr(H rho)`, real because both factors are Hermitian.
pub fn expected_energy(h: &HermitianObservable, rho: &DensityMatrix) -> Result<f64> {
    if h.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            actual: rho.dim(),
        });
    }
    Ok((h.matrix() * rho.matrix()).trace().re)
}

/// Bundles energy, entropy, free energy, and `ln Z` of the Gibbs state at
/// `beta`, plus its thermal mutual information when a two-factor `shape`
/// is given.
pub fn thermo_report(
    h: &HermitianObservable,
    beta: f64,
    shape: Option<&FactorShape>,
) -> Result<ThermoReport> {
    let rho = gibbs_state(h, beta)?;
    let energy = expected_energy(h, &rho)?;
    let entropy = von_neumann_entropy(&rho);
    let free_energy = (beta != 0.0).then(|| energy - entropy / beta);
    let log_partition = lnz_beta(h, beta)?;
    let mutual_information = match shape {
        Some(s) => Some(mutual_quantum_information(&rho, s)?),
        None => None,
    };
    Ok(ThermoReport {
        beta,
        energy,
        entropy,
        free_energy,
        log_partition,
        mutual_information,
    })
}

/// Slack of the energy-entropy inequality
/// `tr(H rho) + S(rho) <= ln tr exp(H)`.
///
/// The left side is maximized exactly by `rho = exp(H) / tr exp(H)`, so the
/// slack is nonnegative (it equals the relative entropy between `rho` and
/// that state) and vanishes only there.
pub fn check_energy_entropy_inequality(
    rho: &DensityMatrix,
    h: &HermitianObservable,
) -> Result<f64> {
    let energy = expected_energy(h, rho)?;
    Ok(lnz_beta(h, -1.0)? - energy - von_neumann_entropy(rho))
}

/// Both single-axis reductions of a four-level state under shape (2,2),
/// as (keep axis 1, keep axis 2).
pub fn artificial_qubit_pair(rho: &DensityMatrix) -> Result<(DensityMatrix, DensityMatrix)> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: rho.dim(),
        });
    }
    let shape = FactorShape::new(vec![2, 2]).expect("static shape");
    let first = artificial_reduce(rho, &MarginalSpec::new(shape.clone(), vec![1])?)?;
    let second = artificial_reduce(rho, &MarginalSpec::new(shape, vec![2])?)?;
    Ok((first, second))
}
