//! Classical probability vectors over `N` outcomes, their marginals under a
//! [`FactorShape`], and the entropic correlation measures built from them.
//!
//! A distribution over a single index `y` becomes a joint distribution over
//! virtual subsystems once a factorization of `N` is imposed; the mutual and
//! conditional information of that joint distribution quantify the hidden
//! correlations carried by the original vector. All entropies are in nats
//! with the convention `0 ln 0 = 0`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::indexing::FactorShape;
use crate::tolerance;

/// A normalized nonnegative vector over `N` outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector {
    probs: Vec<f64>,
}

impl ProbVector {
    /// Validates nonnegativity and normalization (sum within
    /// [`tolerance::NORMALIZATION`] of 1).
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        for (i, &p) in probs.iter().enumerate() {
            if p < 0.0 || !p.is_finite() {
                return Err(Error::NegativeProbability { index: i + 1, value: p });
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > tolerance::NORMALIZATION {
            return Err(Error::NotNormalized {
                sum,
                tolerance: tolerance::NORMALIZATION,
            });
        }
        Ok(Self { probs })
    }

    /// Rescales a nonnegative vector to unit sum. Unlike [`new`](Self::new)
    /// this accepts any positive total; it still rejects negative entries and
    /// an all-zero vector.
    pub fn normalized(probs: Vec<f64>) -> Result<Self> {
        for (i, &p) in probs.iter().enumerate() {
            if p < 0.0 || !p.is_finite() {
                return Err(Error::NegativeProbability { index: i + 1, value: p });
            }
        }
        let sum: f64 = probs.iter().sum();
        if sum <= 0.0 {
            return Err(Error::NotNormalized {
                sum,
                tolerance: tolerance::NORMALIZATION,
            });
        }
        Ok(Self {
            probs: probs.into_iter().map(|p| p / sum).collect(),
        })
    }

    /// The uniform distribution over `dim` outcomes.
    pub fn uniform(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyProduct);
        }
        Ok(Self {
            probs: vec![1.0 / dim as f64; dim],
        })
    }

    /// All mass on outcome `y` (1-based).
    pub fn point_mass(dim: usize, y: usize) -> Result<Self> {
        if y < 1 || y > dim {
            return Err(Error::IndexOutOfRange { index: y, dim });
        }
        let mut probs = vec![0.0; dim];
        probs[y - 1] = 1.0;
        Ok(Self { probs })
    }

    pub fn dim(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

/// Selects which axes of a factored index survive a marginalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarginalSpec {
    shape: FactorShape,
    keep: Vec<usize>,
}

impl MarginalSpec {
    /// `keep` lists 1-based axes, nonempty and strictly increasing.
    pub fn new(shape: FactorShape, keep: impl Into<Vec<usize>>) -> Result<Self> {
        let keep = keep.into();
        if keep.is_empty() {
            return Err(Error::InvalidKeepAxes {
                reason: "keep-axes list is empty".into(),
            });
        }
        for window in keep.windows(2) {
            if window[0] >= window[1] {
                return Err(Error::InvalidKeepAxes {
                    reason: format!("axes must be strictly increasing, got {keep:?}"),
                });
            }
        }
        for &axis in &keep {
            if axis < 1 || axis > shape.arity() {
                return Err(Error::InvalidKeepAxes {
                    reason: format!("axis {axis} is outside 1..={}", shape.arity()),
                });
            }
        }
        Ok(Self { shape, keep })
    }

    pub fn shape(&self) -> &FactorShape {
        &self.shape
    }

    pub fn keep_axes(&self) -> &[usize] {
        &self.keep
    }

    /// Shape of the kept axes, in their original order.
    pub fn kept_shape(&self) -> FactorShape {
        let factors: Vec<usize> = self
            .keep
            .iter()
            .map(|&axis| self.shape.factors()[axis - 1])
            .collect();
        FactorShape::new(factors).expect("kept axes are nonempty and positive")
    }
}

pub(crate) fn entropy_term(p: f64) -> f64 {
    if p < tolerance::ENTROPY_ZERO {
        0.0
    } else {
        -p * p.ln()
    }
}

/// Sums over the dropped axes, returning the distribution of the kept axes
/// ordered by their own mixed-radix linearization.
pub fn marginal(p: &ProbVector, spec: &MarginalSpec) -> Result<ProbVector> {
    let shape = spec.shape();
    if p.dim() != shape.dim() {
        return Err(Error::DimensionMismatch {
            expected: shape.dim(),
            actual: p.dim(),
        });
    }
    let kept_shape = spec.kept_shape();
    let mut out = vec![0.0; kept_shape.dim()];
    let mut kept_coords = vec![0usize; spec.keep_axes().len()];
    for offset in 0..shape.dim() {
        let coords = shape.coords_of(offset);
        for (slot, &axis) in spec.keep_axes().iter().enumerate() {
            kept_coords[slot] = coords[axis - 1];
        }
        out[kept_shape.offset_of(&kept_coords)] += p.probs()[offset];
    }
    ProbVector::new(out)
}

/// Shannon entropy `-sum p ln p` in nats; lies in `[0, ln N]`.
pub fn shannon_entropy(p: &ProbVector) -> f64 {
    p.probs().iter().copied().map(entropy_term).sum()
}

/// Mutual information of a two-factor split:
/// `I = H(1) + H(2) - H(joint) >= 0`.
pub fn mutual_information(p: &ProbVector, shape: &FactorShape) -> Result<f64> {
    require_arity(shape, 2)?;
    let h1 = shannon_entropy(&marginal(p, &MarginalSpec::new(shape.clone(), vec![1])?)?);
    let h2 = shannon_entropy(&marginal(p, &MarginalSpec::new(shape.clone(), vec![2])?)?);
    Ok(h1 + h2 - shannon_entropy(p))
}

/// Conditional information of a three-factor split:
/// `I_C = H(12) + H(23) - H(2) - H(123) >= 0`.
pub fn conditional_information(p: &ProbVector, shape: &FactorShape) -> Result<f64> {
    require_arity(shape, 3)?;
    let h12 = shannon_entropy(&marginal(p, &MarginalSpec::new(shape.clone(), vec![1, 2])?)?);
    let h23 = shannon_entropy(&marginal(p, &MarginalSpec::new(shape.clone(), vec![2, 3])?)?);
    let h2 = shannon_entropy(&marginal(p, &MarginalSpec::new(shape.clone(), vec![2])?)?);
    Ok(h12 + h23 - h2 - shannon_entropy(p))
}

/// Entrywise gap between the product of marginals and the joint:
/// `D[x1-1][x2-1] = P1(x1) P2(x2) - P(y(x1, x2))`. All entries vanish iff
/// the distribution factorizes; the entries always sum to zero.
pub fn correlation_defect(p: &ProbVector, shape: &FactorShape) -> Result<DMatrix<f64>> {
    require_arity(shape, 2)?;
    let p1 = marginal(p, &MarginalSpec::new(shape.clone(), vec![1])?)?;
    let p2 = marginal(p, &MarginalSpec::new(shape.clone(), vec![2])?)?;
    let (x1, x2) = (shape.factors()[0], shape.factors()[1]);
    let mut out = DMatrix::zeros(x1, x2);
    for i in 0..x1 {
        for j in 0..x2 {
            let joint = p.probs()[shape.offset_of(&[i, j])];
            out[(i, j)] = p1.probs()[i] * p2.probs()[j] - joint;
        }
    }
    Ok(out)
}

/// Joint distribution of independent parts, ordered with the first part's
/// index fastest: `P(y(x1, ..., xn)) = prod_i P_i(x_i)`.
pub fn product_distribution(parts: &[ProbVector]) -> Result<ProbVector> {
    if parts.is_empty() {
        return Err(Error::EmptyProduct);
    }
    let mut acc = parts[0].probs().to_vec();
    for part in &parts[1..] {
        let mut next = vec![0.0; acc.len() * part.dim()];
        for (b, &q) in part.probs().iter().enumerate() {
            for (a, &p) in acc.iter().enumerate() {
                next[a + b * acc.len()] = p * q;
            }
        }
        acc = next;
    }
    ProbVector::new(acc)
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

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const LN_2: f64 = std::f64::consts::LN_2;

    fn shape(factors: &[usize]) -> FactorShape {
        FactorShape::new(factors.to_vec()).unwrap()
    }

    fn pv(probs: &[f64]) -> ProbVector {
        ProbVector::new(probs.to_vec()).unwrap()
    }

    /// Mass 1/3 on outcomes y in {2, 3, 5} of an eight-cell box.
    fn three_cell_eight() -> ProbVector {
        let third = 1.0 / 3.0;
        pv(&[0.0, third, third, 0.0, third, 0.0, 0.0, 0.0])
    }

    #[test]
    fn constructor_rejects_bad_vectors() {
        assert!(matches!(
            ProbVector::new(vec![0.5, -0.1, 0.6]),
            Err(Error::NegativeProbability { index: 2, .. })
        ));
        assert!(matches!(
            ProbVector::new(vec![0.5, 0.4]),
            Err(Error::NotNormalized { .. })
        ));
        // within tolerance passes
        assert!(ProbVector::new(vec![0.5, 0.5 + 5e-10]).is_ok());
    }

    #[test]
    fn normalized_rescales_on_request() {
        let p = ProbVector::normalized(vec![2.0, 6.0]).unwrap();
        assert_eq!(p.probs(), &[0.25, 0.75]);
        assert!(ProbVector::normalized(vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn marginal_keeps_requested_axis() {
        let p = pv(&[0.5, 0.0, 0.0, 0.5]);
        let spec = MarginalSpec::new(shape(&[2, 2]), vec![1]).unwrap();
        let m = marginal(&p, &spec).unwrap();
        assert_eq!(m.probs(), &[0.5, 0.5]);
    }

    #[test]
    fn marginal_of_uniform_is_uniform() {
        let p = ProbVector::uniform(12).unwrap();
        for keep in [vec![1], vec![2], vec![3], vec![1, 3]] {
            let spec = MarginalSpec::new(shape(&[2, 3, 2]), keep).unwrap();
            let m = marginal(&p, &spec).unwrap();
            let want = 1.0 / m.dim() as f64;
            for &q in m.probs() {
                assert_abs_diff_eq!(q, want, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn marginal_three_cell_case() {
        // Summing an explicit 2x2x2 table over axes 1 and 3 leaves (2/3, 1/3).
        let spec = MarginalSpec::new(shape(&[2, 2, 2]), vec![2]).unwrap();
        let m = marginal(&three_cell_eight(), &spec).unwrap();
        assert_abs_diff_eq!(m.probs()[0], 2.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m.probs()[1], 1.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn marginal_rejects_dimension_mismatch() {
        let spec = MarginalSpec::new(shape(&[2, 2]), vec![1]).unwrap();
        assert!(matches!(
            marginal(&pv(&[1.0]), &spec),
            Err(Error::DimensionMismatch { expected: 4, actual: 1 })
        ));
    }

    #[test]
    fn spec_validation() {
        assert!(MarginalSpec::new(shape(&[2, 2]), Vec::<usize>::new()).is_err());
        assert!(MarginalSpec::new(shape(&[2, 2]), vec![2, 1]).is_err());
        assert!(MarginalSpec::new(shape(&[2, 2]), vec![1, 1]).is_err());
        assert!(MarginalSpec::new(shape(&[2, 2]), vec![3]).is_err());
        assert!(MarginalSpec::new(shape(&[2, 2, 2]), vec![1, 3]).is_ok());
    }

    #[test]
    fn entropy_known_values() {
        assert_eq!(shannon_entropy(&ProbVector::point_mass(5, 3).unwrap()), 0.0);
        assert_abs_diff_eq!(
            shannon_entropy(&ProbVector::uniform(4).unwrap()),
            4.0f64.ln(),
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            shannon_entropy(&pv(&[0.5, 0.25, 0.25])),
            1.5 * LN_2,
            epsilon = 1e-12
        );
    }

    #[test]
    fn mutual_information_known_values() {
        let s = shape(&[2, 2]);
        let correlated = pv(&[0.5, 0.0, 0.0, 0.5]);
        assert_abs_diff_eq!(
            mutual_information(&correlated, &s).unwrap(),
            LN_2,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            mutual_information(&ProbVector::uniform(4).unwrap(), &s).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        let product =
            product_distribution(&[pv(&[0.3, 0.7]), pv(&[0.6, 0.4])]).unwrap();
        assert_abs_diff_eq!(
            mutual_information(&product, &s).unwrap(),
            0.0,
            epsilon = 1e-9
        );
        assert!(matches!(
            mutual_information(&correlated, &shape(&[4])),
            Err(Error::FactorCount { expected: 2, actual: 1 })
        ));
    }

    #[test]
    fn conditional_information_known_values() {
        let s = shape(&[2, 2, 2]);
        let product = product_distribution(&[
            pv(&[0.3, 0.7]),
            pv(&[0.5, 0.5]),
            pv(&[0.1, 0.9]),
        ])
        .unwrap();
        assert_abs_diff_eq!(
            conditional_information(&product, &s).unwrap(),
            0.0,
            epsilon = 1e-9
        );

        // Mass 1/2 on the two extreme corners: all four entropies are ln 2.
        let corners = pv(&[0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5]);
        assert_abs_diff_eq!(
            conditional_information(&corners, &s).unwrap(),
            0.0,
            epsilon = 1e-12
        );

        assert_abs_diff_eq!(
            conditional_information(&three_cell_eight(), &s).unwrap(),
            (2.0 / 3.0) * LN_2,
            epsilon = 1e-12
        );

        assert!(conditional_information(&pv(&[0.5, 0.0, 0.0, 0.5]), &shape(&[2, 2])).is_err());
    }

    /// Brute-force evaluation straight from a nested table, kept independent
    /// of the stride-based marginalization path.
    fn conditional_by_table(p: &[f64], x: [usize; 3]) -> f64 {
        let cell = |i: usize, j: usize, k: usize| p[i + j * x[0] + k * x[0] * x[1]];
        let h = |terms: Vec<f64>| -> f64 { terms.into_iter().map(entropy_term).sum() };
        let mut p12 = vec![];
        for j in 0..x[1] {
            for i in 0..x[0] {
                p12.push((0..x[2]).map(|k| cell(i, j, k)).sum::<f64>());
            }
        }
        let mut p23 = vec![];
        for k in 0..x[2] {
            for j in 0..x[1] {
                p23.push((0..x[0]).map(|i| cell(i, j, k)).sum::<f64>());
            }
        }
        let mut p2 = vec![];
        for j in 0..x[1] {
            let mut total = 0.0;
            for k in 0..x[2] {
                for i in 0..x[0] {
                    total += cell(i, j, k);
                }
            }
            p2.push(total);
        }
        h(p12) + h(p23) - h(p2) - h(p.to_vec())
    }

    #[test]
    fn conditional_matches_brute_force_on_random_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for factors in [[2, 2, 2], [2, 3, 2], [3, 2, 4]] {
            let s = shape(&factors);
            for _ in 0..25 {
                let p = crate::sample::random_prob_vector(s.dim(), &mut rng);
                let fast = conditional_information(&p, &s).unwrap();
                let slow = conditional_by_table(p.probs(), factors);
                assert_abs_diff_eq!(fast, slow, epsilon = 1e-12);
                assert!(fast >= -1e-9);
            }
        }
    }

    #[test]
    fn defect_matrix_known_values() {
        let s = shape(&[2, 2]);
        let product = product_distribution(&[pv(&[0.3, 0.7]), pv(&[0.6, 0.4])]).unwrap();
        let d = correlation_defect(&product, &s).unwrap();
        for &v in d.iter() {
            assert_abs_diff_eq!(v, 0.0, epsilon = 1e-12);
        }

        let correlated = pv(&[0.5, 0.0, 0.0, 0.5]);
        let d = correlation_defect(&correlated, &s).unwrap();
        assert_abs_diff_eq!(d[(0, 0)], -0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(d[(0, 1)], 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(d[(1, 0)], 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(d[(1, 1)], -0.25, epsilon = 1e-12);
    }

    #[test]
    fn defect_entries_sum_to_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for factors in [[2usize, 2], [3, 4]] {
            let s = shape(&factors);
            for _ in 0..20 {
                let p = crate::sample::random_prob_vector(s.dim(), &mut rng);
                let d = correlation_defect(&p, &s).unwrap();
                assert_abs_diff_eq!(d.iter().sum::<f64>(), 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn zero_mutual_information_iff_zero_defect() {
        let s = shape(&[2, 2]);
        let product = product_distribution(&[pv(&[0.2, 0.8]), pv(&[0.9, 0.1])]).unwrap();
        let i = mutual_information(&product, &s).unwrap();
        let d = correlation_defect(&product, &s).unwrap();
        assert!(i.abs() <= 1e-9);
        assert!(d.iter().all(|v| v.abs() <= 1e-9));

        let correlated = pv(&[0.4, 0.1, 0.1, 0.4]);
        assert!(mutual_information(&correlated, &s).unwrap() > 1e-3);
        assert!(correlation_defect(&correlated, &s)
            .unwrap()
            .iter()
            .any(|v| v.abs() > 1e-3));
    }

    #[test]
    fn product_distribution_ordering_and_identities() {
        let scalar = pv(&[1.0]);
        let p = pv(&[0.3, 0.7]);
        assert_eq!(product_distribution(&[scalar, p.clone()]).unwrap(), p);

        let half = pv(&[0.5, 0.5]);
        assert_eq!(
            product_distribution(&[half.clone(), half]).unwrap().probs(),
            &[0.25, 0.25, 0.25, 0.25]
        );

        // First factor's index runs fastest.
        let p1 = pv(&[1.0 / 3.0, 2.0 / 3.0]);
        let p2 = pv(&[0.5, 0.5]);
        let prod = product_distribution(&[p1, p2]).unwrap();
        let want = [1.0 / 6.0, 1.0 / 3.0, 1.0 / 6.0, 1.0 / 3.0];
        for (got, want) in prod.probs().iter().zip(want) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }

        assert!(matches!(
            product_distribution(&[]),
            Err(Error::EmptyProduct)
        ));
    }

    #[test]
    fn entropy_adds_over_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let p1 = crate::sample::random_prob_vector(3, &mut rng);
            let p2 = crate::sample::random_prob_vector(4, &mut rng);
            let joint = product_distribution(&[p1.clone(), p2.clone()]).unwrap();
            assert_abs_diff_eq!(
                shannon_entropy(&joint),
                shannon_entropy(&p1) + shannon_entropy(&p2),
                epsilon = 1e-9
            );
        }
    }

    #[test]
    fn marginals_commute() {
        // Dropping axes in two steps agrees with dropping them at once.
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let s = shape(&[2, 3, 2]);
        for _ in 0..30 {
            let p = crate::sample::random_prob_vector(12, &mut rng);
            let two_step = {
                let first = marginal(&p, &MarginalSpec::new(s.clone(), vec![1, 2]).unwrap()).unwrap();
                let kept = FactorShape::new(vec![2, 3]).unwrap();
                marginal(&first, &MarginalSpec::new(kept, vec![2]).unwrap()).unwrap()
            };
            let direct = marginal(&p, &MarginalSpec::new(s.clone(), vec![2]).unwrap()).unwrap();
            for (a, b) in two_step.probs().iter().zip(direct.probs()) {
                assert_abs_diff_eq!(*a, *b, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn mutual_information_nonnegative_on_random_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for factors in [[2usize, 2], [2, 3], [3, 3]] {
            let s = shape(&factors);
            for _ in 0..100 {
                let p = crate::sample::random_prob_vector(s.dim(), &mut rng);
                assert!(mutual_information(&p, &s).unwrap() >= -1e-9);
            }
        }
    }
}
