//! Cyclic Jacobi eigensolver for complex Hermitian matrices, written against
//! plain vectors so spectra can be cross-checked without touching the linear
//! algebra stack the library itself uses.

// Plane rotations touch two rows and two columns in lockstep; index loops
// stay closer to the textbook update than iterator chains would.
#![allow(clippy::needless_range_loop)]

use num_complex::Complex64;

/// Eigenvalues of a Hermitian matrix, sorted descending.
pub fn eigenvalues(matrix: &[Vec<Complex64>]) -> Vec<f64> {
    let n = matrix.len();
    for row in matrix {
        assert_eq!(row.len(), n, "oracle input must be square");
    }
    let mut m: Vec<Vec<Complex64>> = matrix.to_vec();
    for _ in 0..100 {
        if off_diagonal_norm_sqr(&m) < 1e-28 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, p, q);
            }
        }
    }
    let mut values: Vec<f64> = (0..n).map(|i| m[i][i].re).collect();
    values.sort_by(|a, b| b.partial_cmp(a).unwrap());
    values
}

fn off_diagonal_norm_sqr(m: &[Vec<Complex64>]) -> f64 {
    let n = m.len();
    let mut total = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            total += m[p][q].norm_sqr();
        }
    }
    total
}

/// One two-sided rotation in the (p, q) plane chosen to null m[p][q].
fn rotate(m: &mut [Vec<Complex64>], p: usize, q: usize) {
    let beta = m[p][q];
    let magnitude = beta.norm();
    if magnitude == 0.0 {
        return;
    }
    let phase = beta / magnitude;
    let alpha = m[p][p].re;
    let gamma = m[q][q].re;
    let theta = 0.5 * (2.0 * magnitude).atan2(alpha - gamma);
    let (s, c) = theta.sin_cos();
    let n = m.len();
    for i in 0..n {
        let mip = m[i][p];
        let miq = m[i][q];
        m[i][p] = mip * c + miq * s * phase.conj();
        m[i][q] = miq * c - mip * s * phase;
    }
    for j in 0..n {
        let mpj = m[p][j];
        let mqj = m[q][j];
        m[p][j] = mpj * c + mqj * s * phase;
        m[q][j] = mqj * c - mpj * s * phase.conj();
    }
}

/// Sanity checks on matrices with known spectra; panics on failure.
pub fn self_check() {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);

    let sigma_x = vec![vec![zero, one], vec![one, zero]];
    let spectrum = eigenvalues(&sigma_x);
    assert!((spectrum[0] - 1.0).abs() < 1e-12 && (spectrum[1] + 1.0).abs() < 1e-12);

    let sigma_y = vec![vec![zero, -i], vec![i, zero]];
    let spectrum = eigenvalues(&sigma_y);
    assert!((spectrum[0] - 1.0).abs() < 1e-12 && (spectrum[1] + 1.0).abs() < 1e-12);

    // eigenvalue sums of a fixed 3x3 Hermitian matrix against its trace,
    // squared trace, and determinant
    let m = vec![
        vec![Complex64::new(2.0, 0.0), Complex64::new(1.0, -1.0), Complex64::new(0.5, 0.25)],
        vec![Complex64::new(1.0, 1.0), Complex64::new(-1.0, 0.0), Complex64::new(0.0, 2.0)],
        vec![Complex64::new(0.5, -0.25), Complex64::new(0.0, -2.0), Complex64::new(0.5, 0.0)],
    ];
    let spectrum = eigenvalues(&m);
    let sum: f64 = spectrum.iter().sum();
    let sum_sq: f64 = spectrum.iter().map(|v| v * v).sum();
    let product: f64 = spectrum.iter().product();
    let trace = 2.0 - 1.0 + 0.5;
    let trace_sq = frobenius_sqr(&m);
    let det = determinant_3x3(&m);
    assert!((sum - trace).abs() < 1e-10);
    assert!((sum_sq - trace_sq).abs() < 1e-10);
    assert!((product - det).abs() < 1e-10);
}

fn frobenius_sqr(m: &[Vec<Complex64>]) -> f64 {
    m.iter().flatten().map(|z| z.norm_sqr()).sum()
}

fn determinant_3x3(m: &[Vec<Complex64>]) -> f64 {
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    assert!(det.im.abs() < 1e-12);
    det.re
}
