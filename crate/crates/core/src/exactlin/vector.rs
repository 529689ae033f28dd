use std::collections::BTreeMap;

use super::scalar::Scalar;

/// Sparse vector with canonical (sorted, zero-free) storage.
#[derive(Clone, PartialEq, Debug)]
pub struct SparseVec<S> {
    entries: BTreeMap<usize, S>,
}

impl<S: Scalar> Default for SparseVec<S> {
    fn default() -> Self {
        SparseVec {
            entries: BTreeMap::new(),
        }
    }
}

impl<S: Scalar> SparseVec<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        let mut v = Self::new();
        v.entries.insert(i, S::one());
        v
    }

    pub fn from_entries<I: IntoIterator<Item = (usize, S)>>(it: I) -> Self {
        let mut v = Self::new();
        for (i, c) in it {
            v.add_at(i, &c);
        }
        v
    }

    pub fn get(&self, i: usize) -> Option<&S> {
        self.entries.get(&i)
    }

    pub fn coeff(&self, i: usize) -> S {
        self.entries.get(&i).cloned().unwrap_or_else(S::zero)
    }

    /// Adds `c` at index `i`, dropping the entry if it cancels.
    pub fn add_at(&mut self, i: usize, c: &S) {
        if c.is_zero() {
            return;
        }
        match self.entries.get_mut(&i) {
            Some(e) => {
                let sum = e.plus(c);
                if sum.is_zero() {
                    self.entries.remove(&i);
                } else {
                    *e = sum;
                }
            }
            None => {
                self.entries.insert(i, c.clone());
            }
        }
    }

    pub fn set(&mut self, i: usize, c: S) {
        if c.is_zero() {
            self.entries.remove(&i);
        } else {
            self.entries.insert(i, c);
        }
    }

    /// `self += factor · other`.
    pub fn add_scaled(&mut self, other: &SparseVec<S>, factor: &S) {
        if factor.is_zero() {
            return;
        }
        for (i, c) in &other.entries {
            self.add_at(*i, &c.times(factor));
        }
    }

    pub fn scaled(&self, factor: &S) -> Self {
        let mut v = Self::new();
        v.add_scaled(self, factor);
        v
    }

    pub fn negated(&self) -> Self {
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, c)| (*i, c.negated()))
                .collect(),
        }
    }

    pub fn plus(&self, other: &SparseVec<S>) -> Self {
        let mut v = self.clone();
        v.add_scaled(other, &S::one());
        v
    }

    pub fn minus(&self, other: &SparseVec<S>) -> Self {
        let mut v = self.clone();
        v.add_scaled(other, &S::one().negated());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &S)> {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn into_entries(self) -> impl Iterator<Item = (usize, S)> {
        self.entries.into_iter()
    }

    pub fn remove(&mut self, i: usize) -> Option<S> {
        self.entries.remove(&i)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SparseVec<T> {
        SparseVec::from_entries(self.entries.iter().map(|(i, c)| (*i, f(c))))
    }

    pub fn dot(&self, other: &SparseVec<S>) -> S {
        let mut acc = S::zero();
        for (i, c) in &self.entries {
            if let Some(d) = other.entries.get(i) {
                acc = acc.plus(&c.times(d));
            }
        }
        acc
    }
}

impl<S: Scalar> FromIterator<(usize, S)> for SparseVec<S> {
    fn from_iter<I: IntoIterator<Item = (usize, S)>>(iter: I) -> Self {
        SparseVec::from_entries(iter)
    }
}
