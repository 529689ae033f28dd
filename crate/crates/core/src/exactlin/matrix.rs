//! Sparse matrices, valuation-aware Gauss–Jordan elimination and an
//! incremental echelon basis used for span membership and coordinates.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::scalar::{FieldScalar, Scalar};
use super::vector::SparseVec;
use crate::error::{Error, Result};

/// Coordinate-list matrix, sorted by `(row, col)`, with no stored zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct SparseMatrix<S> {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, S)>,
}

impl<S: Scalar> SparseMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            entries: (0..n).map(|i| (i, i, S::one())).collect(),
        }
    }

    /// Sums duplicate positions and drops zeros.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, S)>,
    {
        let mut acc: std::collections::BTreeMap<(usize, usize), S> = Default::default();
        for (r, c, x) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::ShapeMismatch(format!(
                    "entry ({r},{c}) outside {rows}×{cols}"
                )));
            }
            let e = acc.entry((r, c)).or_insert_with(S::zero);
            *e = e.plus(&x);
        }
        Ok(SparseMatrix {
            rows,
            cols,
            entries: acc
                .into_iter()
                .filter(|(_, x)| !x.is_zero())
                .map(|((r, c), x)| (r, c, x))
                .collect(),
        })
    }

    pub fn from_columns(rows: usize, columns: &[SparseVec<S>]) -> Result<Self> {
        let triplets = columns
            .iter()
            .enumerate()
            .flat_map(|(c, v)| v.iter().map(move |(r, x)| (r, c, x.clone())));
        Self::from_triplets(rows, columns.len(), triplets)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(usize, usize, S)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> S {
        self.entries
            .binary_search_by(|(i, j, _)| (*i, *j).cmp(&(r, c)))
            .map(|k| self.entries[k].2.clone())
            .unwrap_or_else(|_| S::zero())
    }

    pub fn transpose(&self) -> Self {
        let mut entries: Vec<_> = self
            .entries
            .iter()
            .map(|(r, c, x)| (*c, *r, x.clone()))
            .collect();
        entries.sort_by_key(|(r, c, _)| (*r, *c));
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn row_vectors(&self) -> Vec<SparseVec<S>> {
        let mut out = vec![SparseVec::new(); self.rows];
        for (r, c, x) in &self.entries {
            out[*r].set(*c, x.clone());
        }
        out
    }

    pub fn columns(&self) -> Vec<SparseVec<S>> {
        let mut out = vec![SparseVec::new(); self.cols];
        for (r, c, x) in &self.entries {
            out[*c].set(*r, x.clone());
        }
        out
    }

    pub fn mul_vec(&self, v: &SparseVec<S>) -> SparseVec<S> {
        let mut out = SparseVec::new();
        for (r, c, x) in &self.entries {
            if let Some(y) = v.get(*c) {
                out.add_at(*r, &x.times(y));
            }
        }
        out
    }

    pub fn mul(&self, rhs: &SparseMatrix<S>) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}×{} times {}×{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let rhs_rows = rhs.row_vectors();
        let mut triplets = Vec::new();
        for (r, k, x) in &self.entries {
            for (c, y) in rhs_rows[*k].iter() {
                triplets.push((*r, c, x.times(y)));
            }
        }
        Self::from_triplets(self.rows, rhs.cols, triplets)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SparseMatrix<T> {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|(r, c, x)| (*r, *c, f(x)))
                .filter(|(_, _, x)| !x.is_zero())
                .collect(),
        }
    }
}

/// Tie-breaking order among pivot candidates of equal valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PivotOrder {
    /// Lowest row index, then lowest column index.
    #[default]
    Natural,
    /// Highest indices first.
    Reversed,
    /// A seeded permutation of rows and columns.
    Seeded(u64),
}

impl PivotOrder {
    fn ranks(&self, n: usize, stream: u64) -> Vec<usize> {
        match self {
            PivotOrder::Natural => (0..n).collect(),
            PivotOrder::Reversed => (0..n).rev().collect(),
            PivotOrder::Seeded(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                rng.set_stream(stream);
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(&mut rng);
                perm
            }
        }
    }
}

/// Records precision consumed by cancellations and fails once a cancelled
/// entry is no longer known to vanish at `t⁰`.
fn check_cancellation<S: FieldScalar>(x: &S) -> Result<()> {
    match x.zero_precision() {
        Some(p) if p < 1 => Err(Error::PrecisionExhausted(format!(
            "cancellation left an entry known only to O(t^{p})"
        ))),
        _ => Ok(()),
    }
}

/// `target -= factor · src`, dropping cancelled entries.
fn sub_scaled<S: FieldScalar>(
    target: &mut SparseVec<S>,
    src: &SparseVec<S>,
    factor: &S,
) -> Result<()> {
    for (i, y) in src.iter() {
        let cur = target.coeff(i);
        let next = cur.minus(&factor.times(y));
        if next.is_zero() {
            check_cancellation(&next)?;
        }
        target.set(i, next);
    }
    Ok(())
}

/// Output of [`rref`].
#[derive(Clone, Debug)]
pub struct Rref<S> {
    pub rank: usize,
    /// `(row, col)` of each pivot, in elimination order.
    pub pivots: Vec<(usize, usize)>,
    pub kernel: Vec<SparseVec<S>>,
    /// Original columns at the pivot positions, ordered by column.
    pub image: Vec<SparseVec<S>>,
    /// Gauss–Jordan form; rows keep their original positions.
    pub reduced: SparseMatrix<S>,
    /// Smallest relative precision among pivots (`None` when all exact).
    pub precision_margin: Option<i64>,
}

/// Gauss–Jordan elimination with full pivoting: the pivot is the entry of
/// minimal valuation, ties broken by row rank and then column rank under
/// `order`.
pub fn rref<S: FieldScalar>(m: &SparseMatrix<S>, order: PivotOrder) -> Result<Rref<S>> {
    let row_rank = order.ranks(m.rows, 1);
    let col_rank = order.ranks(m.cols, 2);
    let mut scan: Vec<usize> = (0..m.rows).collect();
    scan.sort_by_key(|&r| row_rank[r]);

    let mut rows = m.row_vectors();
    let mut used = vec![false; m.rows];
    let mut pivots = Vec::new();
    let mut margin: Option<i64> = None;

    loop {
        let mut best: Option<(i64, usize, usize, usize, usize)> = None;
        for &r in &scan {
            if used[r] {
                continue;
            }
            for (c, x) in rows[r].iter() {
                let key = (x.valuation(), row_rank[r], col_rank[c], r, c);
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                }
            }
            if let (Some(floor), Some(b)) = (S::VALUATION_FLOOR, &best) {
                if b.0 == floor {
                    break;
                }
            }
        }
        let Some((_, _, _, pr, pc)) = best else { break };

        let pivot = rows[pr].coeff(pc);
        if let Some(p) = pivot.relative_precision() {
            margin = Some(margin.map_or(p, |m| m.min(p)));
        }
        let inv = pivot.inverse()?;
        let mut prow = rows[pr].scaled(&inv);
        prow.set(pc, S::one());
        rows[pr] = prow.clone();
        for r in 0..m.rows {
            if r == pr {
                continue;
            }
            if let Some(f) = rows[r].get(pc).cloned() {
                sub_scaled(&mut rows[r], &prow, &f)?;
                rows[r].remove(pc);
            }
        }
        used[pr] = true;
        pivots.push((pr, pc));
    }

    let mut pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let is_pivot_col: std::collections::HashSet<usize> = pivot_cols.iter().copied().collect();
    let mut kernel = Vec::new();
    for f in 0..m.cols {
        if is_pivot_col.contains(&f) {
            continue;
        }
        let mut v = SparseVec::unit(f);
        for &(r, c) in &pivots {
            if let Some(x) = rows[r].get(f) {
                v.set(c, x.negated());
            }
        }
        kernel.push(v);
    }
    pivot_cols.sort_unstable();
    let columns = m.columns();
    let image = pivot_cols.iter().map(|&c| columns[c].clone()).collect();
    let reduced = SparseMatrix::from_columns(m.rows, &{
        let mut cols = vec![SparseVec::new(); m.cols];
        for (r, row) in rows.iter().enumerate() {
            for (c, x) in row.iter() {
                cols[c].set(r, x.clone());
            }
        }
        cols
    })?;
    Ok(Rref {
        rank: pivots.len(),
        pivots,
        kernel,
        image,
        reduced,
        precision_margin: margin,
    })
}

pub fn rank<S: FieldScalar>(m: &SparseMatrix<S>) -> Result<usize> {
    Ok(rref(m, PivotOrder::Natural)?.rank)
}

struct Member<S> {
    pivot: usize,
    vector: SparseVec<S>,
    /// Expression of `vector` modulo untracked members, over tags of tracked insertions.
    history: SparseVec<S>,
}

/// Incrementally built basis of a subspace of `S^dim`, in triangular form.
///
/// Insertions may be tracked under a tag; [`Echelon::reduce`] then returns
/// the coordinates of a vector on the tracked insertions modulo the span of
/// the untracked ones.
pub struct Echelon<S> {
    dim: usize,
    row_rank: Vec<usize>,
    members: Vec<Member<S>>,
    pivots: HashMap<usize, usize>,
}

impl<S: FieldScalar> Echelon<S> {
    pub fn new(dim: usize, order: PivotOrder) -> Self {
        Echelon {
            dim,
            row_rank: order.ranks(dim, 3),
            members: Vec::new(),
            pivots: HashMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.members.len()
    }

    /// Returns the remainder of `v` and its coordinates over tracked tags.
    pub fn reduce(&self, v: &SparseVec<S>) -> Result<(SparseVec<S>, SparseVec<S>)> {
        let mut w = v.clone();
        let mut coords = SparseVec::new();
        for m in &self.members {
            if let Some(c) = w.get(m.pivot).cloned() {
                sub_scaled(&mut w, &m.vector, &c)?;
                w.remove(m.pivot);
                coords.add_scaled(&m.history, &c);
            }
        }
        Ok((w, coords))
    }

    pub fn contains(&self, v: &SparseVec<S>) -> Result<bool> {
        Ok(self.reduce(v)?.0.is_zero())
    }

    /// Adds `v` if it is independent of the current span; returns whether it was.
    pub fn insert(&mut self, v: &SparseVec<S>, tag: Option<usize>) -> Result<bool> {
        let (w, coords) = self.reduce(v)?;
        if w.is_zero() {
            return Ok(false);
        }
        let mut best: Option<(i64, usize, usize)> = None;
        for (i, x) in w.iter() {
            let key = (x.valuation(), self.row_rank[i], i);
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
        let (_, _, pivot) = best.expect("nonzero remainder");
        let inv = w.coeff(pivot).inverse()?;
        let mut vector = w.scaled(&inv);
        vector.set(pivot, S::one());
        let mut history = coords.negated();
        if let Some(t) = tag {
            history.add_at(t, &S::one());
        }
        let history = history.scaled(&inv);
        self.pivots.insert(pivot, self.members.len());
        self.members.push(Member {
            pivot,
            vector,
            history,
        });
        Ok(true)
    }
}
