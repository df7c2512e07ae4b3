//! Random states and observables for tests, benchmarks, and exploration.
//!
//! All generators take the RNG by argument so callers control seeding.

use nalgebra::DMatrix;
use num_complex::Complex;
use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal, Uniform};

use crate::classical::ProbVector;
use crate::quantum::DensityMatrix;

/// Uniform (flat Dirichlet) sample from the probability simplex, via
/// normalized exponentials.
pub fn random_prob_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ProbVector {
    assert!(dim > 0, "dimension must be positive");
    let raw: Vec<f64> = (0..dim).map(|_| Exp1.sample(rng)).collect();
    ProbVector::normalized(raw).expect("exponential samples are positive")
}

/// Hilbert-Schmidt random density matrix `G G^dag / tr(G G^dag)` with `G`
/// a complex Ginibre matrix.
pub fn random_density_matrix<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityMatrix {
    assert!(dim > 0, "dimension must be positive");
    let g = DMatrix::from_fn(dim, dim, |_, _| {
        Complex::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
    });
    let m = &g * g.adjoint();
    let trace = m.trace().re;
    DensityMatrix::new(m / Complex::new(trace, 0.0)).expect("Ginibre construction is a state")
}

/// Haar-random pure state as a rank-one density matrix.
pub fn random_pure_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityMatrix {
    assert!(dim > 0, "dimension must be positive");
    let mut v: Vec<Complex<f64>> = (0..dim)
        .map(|_| Complex::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut v {
        *z /= norm;
    }
    DensityMatrix::from_pure_state(&v).expect("normalized amplitude vector")
}

/// Random Hermitian matrix with entries bounded by `bound`: diagonal entries
/// uniform in `[-bound, bound]`, off-diagonal real and imaginary parts
/// uniform in `[-bound/sqrt(2), bound/sqrt(2)]`.
pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, bound: f64, rng: &mut R) -> DMatrix<Complex<f64>> {
    assert!(dim > 0, "dimension must be positive");
    assert!(bound > 0.0, "bound must be positive");
    let diag = Uniform::new_inclusive(-bound, bound).expect("valid range");
    let off = Uniform::new_inclusive(-bound / 2f64.sqrt(), bound / 2f64.sqrt()).expect("valid range");
    let mut m = DMatrix::zeros(dim, dim);
    for i in 0..dim {
        m[(i, i)] = Complex::new(diag.sample(rng), 0.0);
        for j in (i + 1)..dim {
            let z = Complex::new(off.sample(rng), off.sample(rng));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

/// Random diagonal density matrix from a flat simplex sample.
pub fn random_diagonal_density<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityMatrix {
    let p = random_prob_vector(dim, rng);
    DensityMatrix::from_diagonal(p.probs()).expect("simplex sample is a state")
}
