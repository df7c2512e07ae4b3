//! Bijective maps between a linear index `y` in `1..=N` and tuples
//! `(x1, ..., xn)` of virtual-subsystem coordinates, for any factorization
//! `N = X1 * X2 * ... * Xn`.
//!
//! The linearization puts axis 1 fastest:
//!
//! ```text
//! y = x1 + (x2 - 1) X1 + (x3 - 1) X1 X2 + ...
//! ```
//!
//! so the inverse extracts `x1 = ((y - 1) mod X1) + 1` and walks up through
//! the remaining axes by integer division. All coordinates and linear indices
//! are 1-based at the public boundary; internal storage offsets are 0-based
//! and never leak.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An ordered list of factors `(X1, ..., Xn)` whose product is the system
/// dimension `N`. Factors equal to 1 are allowed, so padded or embedded
/// shapes compose uniformly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorShape {
    factors: Vec<usize>,
    dim: usize,
}

impl FactorShape {
    /// Builds a shape from its factor list. Fails on an empty list or a zero
    /// factor.
    pub fn new(factors: impl Into<Vec<usize>>) -> Result<Self> {
        let factors = factors.into();
        if factors.is_empty() {
            return Err(Error::EmptyFactors);
        }
        let mut dim: usize = 1;
        for (i, &f) in factors.iter().enumerate() {
            if f == 0 {
                return Err(Error::ZeroFactor { axis: i + 1 });
            }
            dim = dim.checked_mul(f).ok_or(Error::FactorOverflow)?;
        }
        Ok(Self { factors, dim })
    }

    /// The trivial one-axis shape `(N)`.
    pub fn single(dim: usize) -> Result<Self> {
        Self::new(vec![dim])
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    /// Total dimension `N`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of axes `n`.
    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    /// Linearizes a coordinate tuple: `y = 1 + sum_i (x_i - 1) * prod_{j<i} X_j`.
    pub fn compose(&self, coords: &MultiIndex) -> Result<usize> {
        if coords.len() != self.arity() {
            return Err(Error::CoordinateArity {
                expected: self.arity(),
                actual: coords.len(),
            });
        }
        let mut offset = 0usize;
        let mut stride = 1usize;
        for (axis0, (&x, &bound)) in coords.coords().iter().zip(&self.factors).enumerate() {
            if x < 1 || x > bound {
                return Err(Error::CoordinateOutOfRange {
                    axis: axis0 + 1,
                    value: x,
                    bound,
                });
            }
            offset += (x - 1) * stride;
            stride *= bound;
        }
        Ok(offset + 1)
    }

    /// Inverse of [`compose`](Self::compose): recovers the coordinate tuple
    /// of a linear index `y` in `1..=N`.
    pub fn decompose(&self, y: usize) -> Result<MultiIndex> {
        if y < 1 || y > self.dim {
            return Err(Error::IndexOutOfRange {
                index: y,
                dim: self.dim,
            });
        }
        Ok(MultiIndex::from_zero_based(&self.coords_of(y - 1)))
    }

    /// Iterates all `(y, coords)` pairs in ascending `y` order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, MultiIndex)> + '_ {
        (0..self.dim).map(|off| (off + 1, MultiIndex::from_zero_based(&self.coords_of(off))))
    }

    /// 0-based linear offset of a 0-based coordinate slice. Callers must pass
    /// in-range coordinates.
    pub(crate) fn offset_of(&self, coords: &[usize]) -> usize {
        debug_assert_eq!(coords.len(), self.arity());
        let mut offset = 0usize;
        let mut stride = 1usize;
        for (&c, &bound) in coords.iter().zip(&self.factors) {
            debug_assert!(c < bound);
            offset += c * stride;
            stride *= bound;
        }
        offset
    }

    /// 0-based coordinates of a 0-based linear offset.
    pub(crate) fn coords_of(&self, offset: usize) -> Vec<usize> {
        debug_assert!(offset < self.dim);
        let mut rest = offset;
        self.factors
            .iter()
            .map(|&bound| {
                let c = rest % bound;
                rest /= bound;
                c
            })
            .collect()
    }
}

impl fmt::Display for FactorShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for FactorShape {
    type Err = Error;

    /// Parses a comma-separated factor list such as `2,2` or `2,3,2`.
    fn from_str(s: &str) -> Result<Self> {
        let factors: Vec<usize> = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("invalid factor `{}`", part.trim())))
            })
            .collect::<Result<_>>()?;
        Self::new(factors)
    }
}

/// A 1-based coordinate tuple `(x1, ..., xn)` addressing one cell of a
/// [`FactorShape`] box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiIndex {
    coords: Vec<usize>,
}

impl MultiIndex {
    pub fn new(coords: impl Into<Vec<usize>>) -> Self {
        Self {
            coords: coords.into(),
        }
    }

    pub(crate) fn from_zero_based(coords: &[usize]) -> Self {
        Self {
            coords: coords.iter().map(|&c| c + 1).collect(),
        }
    }

    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn shape(factors: &[usize]) -> FactorShape {
        FactorShape::new(factors.to_vec()).unwrap()
    }

    #[test]
    fn two_qubit_table() {
        // Published four-level map: y(1,1)=1, y(2,1)=2, y(1,2)=3, y(2,2)=4.
        let s = shape(&[2, 2]);
        assert_eq!(s.compose(&MultiIndex::new(vec![1, 1])).unwrap(), 1);
        assert_eq!(s.compose(&MultiIndex::new(vec![2, 1])).unwrap(), 2);
        assert_eq!(s.compose(&MultiIndex::new(vec![1, 2])).unwrap(), 3);
        assert_eq!(s.compose(&MultiIndex::new(vec![2, 2])).unwrap(), 4);

        assert_eq!(s.decompose(1).unwrap().coords(), &[1, 1]);
        assert_eq!(s.decompose(2).unwrap().coords(), &[2, 1]);
        assert_eq!(s.decompose(3).unwrap().coords(), &[1, 2]);
        assert_eq!(s.decompose(4).unwrap().coords(), &[2, 2]);
    }

    #[test]
    fn single_factor_is_identity() {
        let s = FactorShape::single(7).unwrap();
        for y in 1..=7 {
            assert_eq!(s.compose(&MultiIndex::new(vec![y])).unwrap(), y);
            assert_eq!(s.decompose(y).unwrap().coords(), &[y]);
        }
    }

    #[test]
    fn last_cell_of_2x3() {
        let s = shape(&[2, 3]);
        assert_eq!(s.compose(&MultiIndex::new(vec![2, 3])).unwrap(), 6);
        assert_eq!(s.decompose(6).unwrap().coords(), &[2, 3]);
    }

    #[test]
    fn first_cell_is_all_ones() {
        for factors in [vec![2, 2], vec![3, 4, 5], vec![1, 6], vec![60]] {
            let s = shape(&factors);
            let ones: Vec<usize> = vec![1; factors.len()];
            assert_eq!(s.decompose(1).unwrap().coords(), &ones[..]);
        }
    }

    #[test]
    fn enumerate_matches_table() {
        let s = shape(&[2, 2]);
        let cells: Vec<(usize, Vec<usize>)> = s
            .cells()
            .map(|(y, c)| (y, c.coords().to_vec()))
            .collect();
        assert_eq!(
            cells,
            vec![
                (1, vec![1, 1]),
                (2, vec![2, 1]),
                (3, vec![1, 2]),
                (4, vec![2, 2]),
            ]
        );

        let trivial: Vec<_> = FactorShape::single(1).unwrap().cells().collect();
        assert_eq!(trivial.len(), 1);
        assert_eq!(trivial[0].0, 1);
        assert_eq!(trivial[0].1.coords(), &[1]);
    }

    #[test]
    fn enumerate_covers_all_cells_once() {
        let s = shape(&[2, 3]);
        let cells: Vec<_> = s.cells().collect();
        assert_eq!(cells.len(), 6);
        let mut seen_y: Vec<usize> = cells.iter().map(|(y, _)| *y).collect();
        seen_y.dedup();
        assert_eq!(seen_y, (1..=6).collect::<Vec<_>>());
        let mut coords: Vec<Vec<usize>> = cells.iter().map(|(_, c)| c.coords().to_vec()).collect();
        coords.sort();
        coords.dedup();
        assert_eq!(coords.len(), 6);
    }

    #[test]
    fn compose_is_mixed_radix_value() {
        // Cross-check against the closed form 1 + sum (x_i - 1) prod_{j<i} X_j
        // evaluated independently of the running-stride loop.
        let s = shape(&[3, 4, 5]);
        for (y, c) in s.cells() {
            let coords = c.coords();
            let mut expected = 1usize;
            for (i, &x) in coords.iter().enumerate() {
                let stride: usize = s.factors()[..i].iter().product();
                expected += (x - 1) * stride;
            }
            assert_eq!(y, expected);
        }
    }

    #[test]
    fn compose_strictly_increasing_in_first_axis() {
        let s = shape(&[4, 3]);
        for x2 in 1..=3 {
            let mut prev = 0;
            for x1 in 1..=4 {
                let y = s.compose(&MultiIndex::new(vec![x1, x2])).unwrap();
                assert!(y > prev);
                prev = y;
            }
        }
    }

    #[test]
    fn out_of_range_errors_name_the_axis() {
        let s = shape(&[2, 3]);
        match s.compose(&MultiIndex::new(vec![1, 4])) {
            Err(Error::CoordinateOutOfRange { axis, value, bound }) => {
                assert_eq!((axis, value, bound), (2, 4, 3));
            }
            other => panic!("expected coordinate error, got {other:?}"),
        }
        match s.compose(&MultiIndex::new(vec![0, 1])) {
            Err(Error::CoordinateOutOfRange { axis, .. }) => assert_eq!(axis, 1),
            other => panic!("expected coordinate error, got {other:?}"),
        }
        assert!(matches!(
            s.decompose(0),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            s.decompose(7),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            s.compose(&MultiIndex::new(vec![1])),
            Err(Error::CoordinateArity { .. })
        ));
    }

    #[test]
    fn rejects_bad_factor_lists() {
        assert!(matches!(
            FactorShape::new(Vec::<usize>::new()),
            Err(Error::EmptyFactors)
        ));
        assert!(matches!(
            FactorShape::new(vec![2, 0, 3]),
            Err(Error::ZeroFactor { axis: 2 })
        ));
    }

    #[test]
    fn parses_from_string() {
        let s: FactorShape = "2,3,2".parse().unwrap();
        assert_eq!(s.factors(), &[2, 3, 2]);
        assert_eq!(s.dim(), 12);
        assert_eq!(s.to_string(), "2,3,2");
        assert!("2,x".parse::<FactorShape>().is_err());
        assert!("".parse::<FactorShape>().is_err());
    }

    #[test]
    fn degenerate_axes_compose_uniformly() {
        let s = shape(&[1, 5, 1]);
        assert_eq!(s.dim(), 5);
        for y in 1..=5 {
            let c = s.decompose(y).unwrap();
            assert_eq!(c.coords(), &[1, y, 1]);
            assert_eq!(s.compose(&c).unwrap(), y);
        }
    }

    proptest! {
        #[test]
        fn round_trip_small_shapes(factors in proptest::collection::vec(1usize..=6, 1..=4)) {
            let s = shape(&factors);
            prop_assume!(s.dim() <= 60);
            for y in 1..=s.dim() {
                let c = s.decompose(y).unwrap();
                prop_assert_eq!(s.compose(&c).unwrap(), y);
            }
        }
    }
}
