//! Sparse multilinear maps on composable basis tuples, and the brace
//! insertions that build A∞ relations, the Hochschild differential, the
//! Gerstenhaber bracket and the cup product.
//!
//! Inputs are stored first-applied first: the key `[a_1, …, a_s]` stands for
//! the argument list written `(a_s, …, a_1)`. Signs follow the Koszul rule
//! on reduced degrees `‖a‖ = |a| − 1`: a map inserted after the raw inputs
//! `a_1, …, a_n` contributes `(−1)^{‖map‖·(‖a_1‖ + … + ‖a_n‖)}`.

use std::collections::{BTreeMap, HashMap};

use crate::exactlin::{Scalar, SparseVec};

pub type BasisId = usize;

/// Degree lookup for basis elements.
pub trait Grading {
    fn degree(&self, b: BasisId) -> i64;

    fn reduced_degree(&self, b: BasisId) -> i64 {
        self.degree(b) - 1
    }
}

impl Grading for [i64] {
    fn degree(&self, b: BasisId) -> i64 {
        self[b]
    }
}

impl Grading for Vec<i64> {
    fn degree(&self, b: BasisId) -> i64 {
        self[b]
    }
}

/// Sparse multilinear map: input tuple ↦ output vector.
///
/// Length-0 entries (key `[]`) assign one element of `hom(X, X)` per object;
/// the single vector under `[]` holds all of them.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain<S> {
    map: BTreeMap<Vec<BasisId>, SparseVec<S>>,
}

impl<S: Scalar> Default for Cochain<S> {
    fn default() -> Self {
        Cochain {
            map: BTreeMap::new(),
        }
    }
}

impl<S: Scalar> Cochain<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(inputs: Vec<BasisId>, output: BasisId, c: S) -> Self {
        let mut m = Self::new();
        m.add(inputs, output, &c);
        m
    }

    pub fn add(&mut self, inputs: Vec<BasisId>, output: BasisId, c: &S) {
        if c.is_zero() {
            return;
        }
        let v = self.map.entry(inputs.clone()).or_default();
        v.add_at(output, c);
        if v.is_zero() {
            self.map.remove(&inputs);
        }
    }

    pub fn add_vector(&mut self, inputs: &[BasisId], v: &SparseVec<S>, factor: &S) {
        if v.is_zero() || factor.is_zero() {
            return;
        }
        let slot = self.map.entry(inputs.to_vec()).or_default();
        slot.add_scaled(v, factor);
        if slot.is_zero() {
            self.map.remove(inputs);
        }
    }

    pub fn get(&self, inputs: &[BasisId]) -> Option<&SparseVec<S>> {
        self.map.get(inputs)
    }

    pub fn coeff(&self, inputs: &[BasisId], output: BasisId) -> S {
        self.map
            .get(inputs)
            .map_or_else(S::zero, |v| v.coeff(output))
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_empty()
    }

    /// Number of nonzero `(inputs, output)` entries.
    pub fn nnz(&self) -> usize {
        self.map.values().map(SparseVec::nnz).sum()
    }

    pub fn rows(&self) -> impl Iterator<Item = (&Vec<BasisId>, &SparseVec<S>)> {
        self.map.iter()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[BasisId], BasisId, &S)> {
        self.map
            .iter()
            .flat_map(|(k, v)| v.iter().map(move |(o, c)| (k.as_slice(), o, c)))
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &S::one());
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &S::one().negated());
        out
    }

    pub fn add_scaled(&mut self, other: &Self, factor: &S) {
        for (k, v) in &other.map {
            self.add_vector(k, v, factor);
        }
    }

    pub fn scaled(&self, factor: &S) -> Self {
        let mut out = Self::new();
        out.add_scaled(self, factor);
        out
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Cochain<T> {
        let mut out = Cochain::new();
        for (k, v) in &self.map {
            let w = v.map(&f);
            if !w.is_zero() {
                out.map.insert(k.clone(), w);
            }
        }
        out
    }

    /// Keeps entries whose input length satisfies `keep`.
    pub fn filter_lengths(&self, keep: impl Fn(usize) -> bool) -> Self {
        Cochain {
            map: self
                .map
                .iter()
                .filter(|(k, _)| keep(k.len()))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn max_length(&self) -> Option<usize> {
        self.map.keys().map(Vec::len).max()
    }

    /// Hochschild degree `|out| − Σ|in| + s` of one entry.
    pub fn entry_degree<G: Grading + ?Sized>(
        grading: &G,
        inputs: &[BasisId],
        output: BasisId,
    ) -> i64 {
        grading.degree(output) - inputs.iter().map(|b| grading.degree(*b)).sum::<i64>()
            + inputs.len() as i64
    }

    /// Splits into homogeneous parts by Hochschild degree.
    pub fn homogeneous_parts<G: Grading + ?Sized>(&self, grading: &G) -> BTreeMap<i64, Cochain<S>> {
        let mut parts: BTreeMap<i64, Cochain<S>> = BTreeMap::new();
        for (k, o, c) in self.entries() {
            parts
                .entry(Self::entry_degree(grading, k, o))
                .or_default()
                .add(k.to_vec(), o, c);
        }
        parts
    }

    fn by_output(&self) -> HashMap<BasisId, Vec<(&[BasisId], &S)>> {
        let mut idx: HashMap<BasisId, Vec<(&[BasisId], &S)>> = HashMap::new();
        for (k, o, c) in self.entries() {
            idx.entry(o).or_default().push((k, c));
        }
        idx
    }
}

fn reduced_sum<G: Grading + ?Sized>(g: &G, xs: &[BasisId]) -> i64 {
    xs.iter().map(|b| g.reduced_degree(*b)).sum()
}

/// `outer ∘ inner`: every insertion of `inner` into one input slot of
/// `outer`, with the Koszul sign of `inner` passing the raw inputs before it.
///
/// The parity of `inner` is its reduced degree `r − 1` per entry, unless
/// `inner_parity` fixes it (the A∞ relations use parity 1 regardless of the
/// entries' degrees). Results longer than `max_len` are dropped.
pub fn insert<S: Scalar, G: Grading + ?Sized>(
    outer: &Cochain<S>,
    inner: &Cochain<S>,
    grading: &G,
    inner_parity: Option<i64>,
    max_len: usize,
) -> Cochain<S> {
    let index = inner.by_output();
    let mut out = Cochain::new();
    let mut key = Vec::new();
    for (pin, pout) in &outer.map {
        let mut prefix = 0i64;
        for n in 0..pin.len() {
            if let Some(hits) = index.get(&pin[n]) {
                for (qin, qc) in hits {
                    let len = pin.len() - 1 + qin.len();
                    if len > max_len {
                        continue;
                    }
                    let parity = inner_parity
                        .unwrap_or_else(|| Cochain::<S>::entry_degree(grading, qin, pin[n]) - 1);
                    key.clear();
                    key.extend_from_slice(&pin[..n]);
                    key.extend_from_slice(qin);
                    key.extend_from_slice(&pin[n + 1..]);
                    out.add_vector(&key, pout, &qc.signed(parity * prefix));
                }
            }
            prefix += grading.reduced_degree(pin[n]);
        }
    }
    out
}

/// Gerstenhaber bracket `[φ, ψ] = φ∘ψ − (−1)^{‖φ‖‖ψ‖} ψ∘φ`, computed on
/// homogeneous parts.
pub fn bracket<S: Scalar, G: Grading + ?Sized>(
    phi: &Cochain<S>,
    psi: &Cochain<S>,
    grading: &G,
    max_len: usize,
) -> Cochain<S> {
    let mut out = Cochain::new();
    let psi_parts = psi.homogeneous_parts(grading);
    for (rp, p) in phi.homogeneous_parts(grading) {
        for (rq, q) in &psi_parts {
            out.add_scaled(&insert(&p, q, grading, None, max_len), &S::one());
            let sign = (rp - 1) * (rq - 1);
            out.add_scaled(
                &insert(q, &p, grading, None, max_len),
                &S::one().signed(sign + 1),
            );
        }
    }
    out
}

/// `μ{φ, ψ}`: `φ` and `ψ` inserted into two distinct input slots of `mu`,
/// `ψ` in the earlier slot, remaining slots filled by raw inputs.
pub fn brace2<S: Scalar, G: Grading + ?Sized>(
    mu: &Cochain<S>,
    phi: &Cochain<S>,
    psi: &Cochain<S>,
    grading: &G,
    max_len: usize,
) -> Cochain<S> {
    let phi_idx = phi.by_output();
    let psi_idx = psi.by_output();
    let mut out = Cochain::new();
    let mut key = Vec::new();
    for (min, mout) in &mu.map {
        let s = min.len();
        for j in 0..s {
            let Some(psi_hits) = psi_idx.get(&min[j]) else {
                continue;
            };
            for i in j + 1..s {
                let Some(phi_hits) = phi_idx.get(&min[i]) else {
                    continue;
                };
                let before_j = reduced_sum(grading, &min[..j]);
                let between = reduced_sum(grading, &min[j + 1..i]);
                for (qin, qc) in psi_hits {
                    let psi_par = Cochain::<S>::entry_degree(grading, qin, min[j]) - 1;
                    let qsum = reduced_sum(grading, qin);
                    for (pin, pc) in phi_hits {
                        let len = s - 2 + qin.len() + pin.len();
                        if len > max_len {
                            continue;
                        }
                        let phi_par = Cochain::<S>::entry_degree(grading, pin, min[i]) - 1;
                        let sign = psi_par * before_j + phi_par * (before_j + qsum + between);
                        key.clear();
                        key.extend_from_slice(&min[..j]);
                        key.extend_from_slice(qin);
                        key.extend_from_slice(&min[j + 1..i]);
                        key.extend_from_slice(pin);
                        key.extend_from_slice(&min[i + 1..]);
                        out.add_vector(&key, mout, &qc.times(pc).signed(sign));
                    }
                }
            }
        }
    }
    out
}

/// Evaluates a multilinear map on vectors, `inputs[0]` being applied first.
/// Plain multilinear extension: no signs are introduced.
pub fn apply<S: Scalar>(map: &Cochain<S>, inputs: &[&SparseVec<S>]) -> SparseVec<S> {
    let mut out = SparseVec::new();
    let mut key = Vec::with_capacity(inputs.len());
    apply_rec(map, inputs, &mut key, &S::one(), &mut out);
    out
}

fn apply_rec<S: Scalar>(
    map: &Cochain<S>,
    inputs: &[&SparseVec<S>],
    key: &mut Vec<BasisId>,
    coeff: &S,
    out: &mut SparseVec<S>,
) {
    if key.len() == inputs.len() {
        if let Some(v) = map.get(key) {
            out.add_scaled(v, coeff);
        }
        return;
    }
    for (b, c) in inputs[key.len()].iter() {
        key.push(b);
        apply_rec(map, inputs, key, &coeff.times(c), out);
        key.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::{int, Rational};

    #[test]
    fn insertion_sign_counts_earlier_inputs() {
        // Basis: 0 has degree 0 (reduced −1), 1 has degree 1 (reduced 0).
        let g = vec![0i64, 1];
        let outer = Cochain::single(vec![0, 0], 0, int(1));
        // inner: length 1, 0 ↦ 0, Hochschild degree 1, parity 0.
        let inner = Cochain::single(vec![0], 0, int(1));
        let c = insert(&outer, &inner, &g, None, 8);
        assert_eq!(c.coeff(&[0, 0], 0), int(2));
        // Forced odd parity: second slot passes a_1 of reduced degree −1.
        let c = insert(&outer, &inner, &g, Some(1), 8);
        assert!(c.is_zero());
    }

    #[test]
    fn apply_is_multilinear() {
        let m = Cochain::single(vec![0, 1], 1, int(3));
        let a = SparseVec::from_entries([(0, int(2)), (1, int(5))]);
        let b = SparseVec::from_entries([(1, int(7))]);
        let v = apply(&m, &[&a, &b]);
        assert_eq!(v, SparseVec::<Rational>::from_entries([(1, int(42))]));
    }
}
