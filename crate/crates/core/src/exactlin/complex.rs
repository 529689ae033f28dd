//! Cochain complexes of finite-dimensional spaces and their cohomology.

use std::collections::BTreeMap;

use super::matrix::{rref, Echelon, PivotOrder, SparseMatrix};
use super::scalar::FieldScalar;
use super::vector::SparseVec;
use crate::error::{Error, Result};

/// Graded dimensions and differentials `d_k: C^k → C^{k+1}`.
///
/// `d_k` is stored as a `dim C^{k+1} × dim C^k` matrix; missing entries are
/// zero maps.
#[derive(Clone, Debug)]
pub struct ChainComplexData<S> {
    dims: BTreeMap<i64, usize>,
    diffs: BTreeMap<i64, SparseMatrix<S>>,
}

impl<S: FieldScalar> ChainComplexData<S> {
    pub fn new(dims: BTreeMap<i64, usize>) -> Self {
        ChainComplexData {
            dims: dims.into_iter().filter(|(_, n)| *n > 0).collect(),
            diffs: BTreeMap::new(),
        }
    }

    pub fn dim(&self, k: i64) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    pub fn set_differential(&mut self, k: i64, d: SparseMatrix<S>) -> Result<()> {
        if d.cols() != self.dim(k) || d.rows() != self.dim(k + 1) {
            return Err(Error::ShapeMismatch(format!(
                "d_{k} is {}×{}, expected {}×{}",
                d.rows(),
                d.cols(),
                self.dim(k + 1),
                self.dim(k)
            )));
        }
        if !d.is_zero() {
            self.diffs.insert(k, d);
        }
        Ok(())
    }

    pub fn differential(&self, k: i64) -> SparseMatrix<S> {
        self.diffs
            .get(&k)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(self.dim(k + 1), self.dim(k)))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .map(|(k, n)| {
                if k.rem_euclid(2) == 0 {
                    *n as i64
                } else {
                    -(*n as i64)
                }
            })
            .sum()
    }

    /// Fails with `NotAComplex` if some `d_{k+1} ∘ d_k` is nonzero.
    pub fn check_square_zero(&self) -> Result<()> {
        for (k, d) in &self.diffs {
            if let Some(next) = self.diffs.get(&(k + 1)) {
                if !next.mul(d)?.is_zero() {
                    return Err(Error::NotAComplex(*k));
                }
            }
        }
        Ok(())
    }
}

/// Cohomology in one degree, with a transfer map from cocycles to class
/// coordinates.
pub struct CohomologyDegree<S> {
    pub degree: i64,
    pub dim: usize,
    /// Cocycles whose classes form the chosen basis.
    pub representatives: Vec<SparseVec<S>>,
    /// Dimension of the cocycle space.
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
    pub precision_margin: Option<i64>,
    transfer: Echelon<S>,
}

impl<S: FieldScalar> CohomologyDegree<S> {
    /// Coordinates of the class of a cocycle in the representative basis.
    pub fn class_of(&self, z: &SparseVec<S>) -> Result<Vec<S>> {
        let (rem, coords) = self.transfer.reduce(z)?;
        if !rem.is_zero() {
            return Err(Error::NotACocycle(format!(
                "vector is not a cocycle in degree {}",
                self.degree
            )));
        }
        Ok((0..self.dim).map(|i| coords.coeff(i)).collect())
    }

    pub fn is_coboundary(&self, z: &SparseVec<S>) -> Result<bool> {
        Ok(self.class_of(z)?.iter().all(|c| c.is_zero()))
    }
}

pub struct Cohomology<S> {
    degrees: BTreeMap<i64, CohomologyDegree<S>>,
}

impl<S: FieldScalar> Cohomology<S> {
    pub fn degree(&self, k: i64) -> Option<&CohomologyDegree<S>> {
        self.degrees.get(&k)
    }

    pub fn dim(&self, k: i64) -> usize {
        self.degrees.get(&k).map_or(0, |h| h.dim)
    }

    /// Nonzero dimensions by degree.
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.degrees
            .iter()
            .filter(|(_, h)| h.dim > 0)
            .map(|(k, h)| (*k, h.dim))
            .collect()
    }

    pub fn total_dim(&self) -> usize {
        self.degrees.values().map(|h| h.dim).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .map(|(k, h)| {
                if k.rem_euclid(2) == 0 {
                    h.dim as i64
                } else {
                    -(h.dim as i64)
                }
            })
            .sum()
    }

    pub fn precision_margin(&self) -> Option<i64> {
        self.degrees
            .values()
            .filter_map(|h| h.precision_margin)
            .min()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &CohomologyDegree<S>)> {
        self.degrees.iter()
    }
}

/// `dim H^k = dim ker d_k − rank d_{k−1}`; representatives are kernel vectors
/// completing a basis of the image, chosen by the deterministic pivot rule.
pub fn complex_cohomology<S: FieldScalar>(
    c: &ChainComplexData<S>,
    order: PivotOrder,
) -> Result<Cohomology<S>> {
    c.check_square_zero()?;
    let mut reductions = BTreeMap::new();
    for k in c.dims.keys() {
        reductions.insert(*k, rref(&c.differential(*k), order)?);
    }
    let mut degrees = BTreeMap::new();
    for (k, n) in &c.dims {
        let here = &reductions[k];
        let mut transfer = Echelon::new(*n, order);
        let mut margin = here.precision_margin;
        let mut coboundary_dim = 0;
        if let Some(prev) = reductions.get(&(k - 1)) {
            margin = min_opt(margin, prev.precision_margin);
            for b in &prev.image {
                transfer.insert(b, None)?;
            }
            coboundary_dim = prev.rank;
        }
        let mut representatives = Vec::new();
        for z in &here.kernel {
            if transfer.insert(z, Some(representatives.len()))? {
                representatives.push(z.clone());
            }
        }
        debug_assert_eq!(representatives.len() + coboundary_dim, here.kernel.len());
        degrees.insert(
            *k,
            CohomologyDegree {
                degree: *k,
                dim: representatives.len(),
                representatives,
                cocycle_dim: here.kernel.len(),
                coboundary_dim,
                precision_margin: margin,
                transfer,
            },
        );
    }
    Ok(Cohomology { degrees })
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}
