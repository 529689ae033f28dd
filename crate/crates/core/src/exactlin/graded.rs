//! Cochain complexes given by a graded basis and the image of each basis
//! element, with cohomology expressed back in that basis.

use std::collections::BTreeMap;

use super::complex::{complex_cohomology, ChainComplexData, Cohomology, CohomologyDegree};
use super::matrix::{PivotOrder, SparseMatrix};
use super::scalar::FieldScalar;
use super::vector::SparseVec;
use crate::error::{Error, Result};

/// Basis elements `0..n` with degrees, split into per-degree blocks.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    degrees: Vec<i64>,
    local: Vec<usize>,
    blocks: BTreeMap<i64, Vec<usize>>,
}

impl GradedBasis {
    pub fn new(degrees: Vec<i64>) -> Self {
        let mut blocks: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        let mut local = Vec::with_capacity(degrees.len());
        for (i, d) in degrees.iter().enumerate() {
            let b = blocks.entry(*d).or_default();
            local.push(b.len());
            b.push(i);
        }
        GradedBasis {
            degrees,
            local,
            blocks,
        }
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn block(&self, k: i64) -> &[usize] {
        self.blocks.get(&k).map_or(&[], Vec::as_slice)
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.blocks.iter().map(|(k, b)| (*k, b.len())).collect()
    }

    /// Restricts a global vector to its degree-`k` block in local coordinates.
    pub fn to_local<S: FieldScalar>(&self, v: &SparseVec<S>, k: i64) -> Result<SparseVec<S>> {
        let mut out = SparseVec::new();
        for (i, c) in v.iter() {
            if i >= self.len() || self.degrees[i] != k {
                return Err(Error::WrongDegree {
                    expected: k,
                    found: self.degrees.get(i).copied().unwrap_or(i64::MIN),
                });
            }
            out.add_at(self.local[i], c);
        }
        Ok(out)
    }

    pub fn to_global<S: FieldScalar>(&self, v: &SparseVec<S>, k: i64) -> SparseVec<S> {
        let block = self.block(k);
        v.iter().map(|(i, c)| (block[i], c.clone())).collect()
    }
}

/// A complex on a graded basis together with its cohomology.
pub struct GradedComplex<S> {
    pub basis: GradedBasis,
    pub complex: ChainComplexData<S>,
    pub cohomology: Cohomology<S>,
}

impl<S: FieldScalar> GradedComplex<S> {
    /// `d(i)` is the differential of basis element `i`, over basis indices,
    /// and must land in degree `degree(i) + 1`.
    pub fn build(
        degrees: Vec<i64>,
        mut d: impl FnMut(usize) -> Result<SparseVec<S>>,
        order: PivotOrder,
    ) -> Result<Self> {
        let basis = GradedBasis::new(degrees);
        let mut complex = ChainComplexData::new(basis.dims());
        for (k, block) in &basis.blocks {
            let rows = basis.block(k + 1).len();
            let mut cols = Vec::with_capacity(block.len());
            for &i in block {
                let image = d(i)?;
                if rows == 0 && !image.is_zero() {
                    return Err(Error::WrongDegree {
                        expected: k + 1,
                        found: basis.degree(image.iter().next().unwrap().0),
                    });
                }
                cols.push(basis.to_local(&image, k + 1)?);
            }
            if rows > 0 {
                complex.set_differential(*k, SparseMatrix::from_columns(rows, &cols)?)?;
            }
        }
        let cohomology = complex_cohomology(&complex, order)?;
        Ok(GradedComplex {
            basis,
            complex,
            cohomology,
        })
    }

    pub fn dim(&self, k: i64) -> usize {
        self.cohomology.dim(k)
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.cohomology.dims()
    }

    fn degree_data(&self, k: i64) -> Option<&CohomologyDegree<S>> {
        self.cohomology.degree(k)
    }

    /// Cocycle representatives of the chosen basis of `H^k`, over basis indices.
    pub fn representatives(&self, k: i64) -> Vec<SparseVec<S>> {
        self.degree_data(k)
            .map(|h| {
                h.representatives
                    .iter()
                    .map(|r| self.basis.to_global(r, k))
                    .collect()
            })
            .unwrap_or_default()
    }

    /// Class coordinates of a degree-`k` cocycle given over basis indices.
    pub fn class_of(&self, v: &SparseVec<S>, k: i64) -> Result<Vec<S>> {
        match self.degree_data(k) {
            Some(h) => h.class_of(&self.basis.to_local(v, k)?),
            None if v.is_zero() => Ok(Vec::new()),
            None => Err(Error::WrongDegree {
                expected: k,
                found: self.basis.degree(v.iter().next().unwrap().0),
            }),
        }
    }

    pub fn is_coboundary(&self, v: &SparseVec<S>, k: i64) -> Result<bool> {
        Ok(self.class_of(v, k)?.iter().all(|c| c.is_zero()))
    }

    /// Vector `v` such that `d v = target`, for a coboundary of degree `k`.
    pub fn solve_primitive(&self, target: &SparseVec<S>, k: i64) -> Result<Option<SparseVec<S>>> {
        let d = self.complex.differential(k - 1);
        if d.cols() == 0 {
            return Ok(if target.is_zero() {
                Some(SparseVec::new())
            } else {
                None
            });
        }
        let local = self.basis.to_local(target, k)?;
        let mut ech = super::matrix::Echelon::new(d.rows(), PivotOrder::Natural);
        for (j, col) in d.columns().iter().enumerate() {
            ech.insert(col, Some(j))?;
        }
        let (rem, coords) = ech.reduce(&local)?;
        if !rem.is_zero() {
            return Ok(None);
        }
        Ok(Some(self.basis.to_global(&coords, k - 1)))
    }

    pub fn precision_margin(&self) -> Option<i64> {
        self.cohomology.precision_margin()
    }
}
