//! Exact scalars and sparse linear algebra.

mod complex;
mod graded;
mod laurent;
mod matrix;
pub mod rational;
mod scalar;
mod series;
mod vector;

pub use complex::{complex_cohomology, ChainComplexData, Cohomology, CohomologyDegree};
pub use graded::{GradedBasis, GradedComplex};
pub use laurent::{TruncLaurent, EXACT_INVERSE_TERMS, EXACT_PREC};
pub use matrix::{rank, rref, Echelon, PivotOrder, Rref, SparseMatrix};
pub use rational::{format_rational, parse_rational, Rational};
pub use scalar::{FieldScalar, Scalar};
pub use series::{TruncSeries, EXACT};
pub use vector::SparseVec;

/// Inverse of a series in the Laurent ring; the valuation is read off from
/// the lowest nonzero exponent.
pub fn series_invert(s: &TruncSeries) -> crate::error::Result<TruncLaurent> {
    s.invert()
}
