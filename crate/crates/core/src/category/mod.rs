//! Finite A∞-categories: objects, graded hom bases and sparse structure
//! constants `μ^d`.

mod hcat;
mod validate;

use std::collections::BTreeMap;

pub use hcat::{h_category, hom_cohomology, HCategory, HomCohomology, ObjectUnit, ProductEntry};
pub use validate::{validate, ArityCheck, ValidationReport, Violation, ViolationKind};

use crate::error::{Error, Result};
use crate::exactlin::{Scalar, SparseVec};
use crate::multilinear::{self, BasisId, Cochain, Grading};

pub type ObjId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub label: String,
    pub degree: i64,
    pub source: ObjId,
    pub target: ObjId,
}

/// An A∞-category with finitely many objects, finite-dimensional graded hom
/// spaces and `μ^d = 0` for `d` above the arity bound.
///
/// Basis elements of all hom spaces share one global index. `μ` entries are
/// keyed by input tuples stored first-applied first, so `[a_1, a_2]` holds
/// `μ²(a_2, a_1)`. Length-0 entries are curvature terms `μ⁰`.
#[derive(Clone, Debug, PartialEq)]
pub struct Category<S> {
    objects: Vec<String>,
    basis: Vec<BasisElement>,
    degrees: Vec<i64>,
    homs: BTreeMap<(ObjId, ObjId), Vec<BasisId>>,
    arity_bound: usize,
    mu: Cochain<S>,
}

impl<S> Grading for Category<S> {
    fn degree(&self, b: BasisId) -> i64 {
        self.degrees[b]
    }
}

impl<S: Scalar> Category<S> {
    pub fn new<I: IntoIterator<Item = String>>(objects: I, arity_bound: usize) -> Result<Self> {
        let objects: Vec<String> = objects.into_iter().collect();
        for (i, o) in objects.iter().enumerate() {
            if objects[..i].contains(o) {
                return Err(Error::Parse(format!("duplicate object {o}")));
            }
        }
        if arity_bound == 0 {
            return Err(Error::BadParameter("arity bound must be positive".into()));
        }
        Ok(Category {
            objects,
            basis: Vec::new(),
            degrees: Vec::new(),
            homs: BTreeMap::new(),
            arity_bound,
            mu: Cochain::new(),
        })
    }

    pub fn add_basis(
        &mut self,
        source: ObjId,
        target: ObjId,
        label: &str,
        degree: i64,
    ) -> Result<BasisId> {
        if source >= self.objects.len() || target >= self.objects.len() {
            return Err(Error::Parse(format!(
                "object index out of range for {label}"
            )));
        }
        if self.find_basis(source, target, label).is_some() {
            return Err(Error::Parse(format!(
                "duplicate label {label} in {}",
                self.hom_key(source, target)
            )));
        }
        let id = self.basis.len();
        self.basis.push(BasisElement {
            label: label.to_string(),
            degree,
            source,
            target,
        });
        self.degrees.push(degree);
        self.homs.entry((source, target)).or_default().push(id);
        Ok(id)
    }

    /// Adds `c` to the coefficient of `output` in `μ(inputs)`; inputs
    /// first-applied first. Checks composability and the arity bound; degrees
    /// are left to [`validate`].
    pub fn add_mu(&mut self, inputs: &[BasisId], output: BasisId, c: S) -> Result<()> {
        self.check_entry(inputs, output)?;
        self.mu.add(inputs.to_vec(), output, &c);
        Ok(())
    }

    fn check_entry(&self, inputs: &[BasisId], output: BasisId) -> Result<()> {
        let n = self.basis.len();
        if output >= n || inputs.iter().any(|b| *b >= n) {
            return Err(Error::Parse("basis index out of range".into()));
        }
        if inputs.len() > self.arity_bound {
            return Err(Error::Parse(format!(
                "arity {} exceeds bound {}",
                inputs.len(),
                self.arity_bound
            )));
        }
        let out = &self.basis[output];
        match (inputs.first(), inputs.last()) {
            (Some(first), Some(last)) => {
                for w in inputs.windows(2) {
                    if self.basis[w[0]].target != self.basis[w[1]].source {
                        return Err(Error::Parse(format!(
                            "inputs {} and {} are not composable",
                            self.basis_name(w[1]),
                            self.basis_name(w[0])
                        )));
                    }
                }
                if out.source != self.basis[*first].source || out.target != self.basis[*last].target
                {
                    return Err(Error::Parse(format!(
                        "output {} has the wrong hom space",
                        self.basis_name(output)
                    )));
                }
            }
            _ => {
                if out.source != out.target {
                    return Err(Error::Parse(format!(
                        "curvature term {} is not an endomorphism",
                        self.basis_name(output)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_id(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn basis_element(&self, b: BasisId) -> &BasisElement {
        &self.basis[b]
    }

    pub fn degree_of(&self, b: BasisId) -> i64 {
        self.degrees[b]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn hom(&self, x: ObjId, y: ObjId) -> &[BasisId] {
        self.homs.get(&(x, y)).map_or(&[], Vec::as_slice)
    }

    /// Pairs `(x, y)` with a nonzero hom space.
    pub fn hom_pairs(&self) -> impl Iterator<Item = (ObjId, ObjId)> + '_ {
        self.homs.keys().copied()
    }

    pub fn find_basis(&self, source: ObjId, target: ObjId, label: &str) -> Option<BasisId> {
        self.hom(source, target)
            .iter()
            .copied()
            .find(|b| self.basis[*b].label == label)
    }

    pub fn hom_key(&self, source: ObjId, target: ObjId) -> String {
        format!("{}|{}", self.objects[source], self.objects[target])
    }

    /// `Src|Tgt:label`.
    pub fn basis_name(&self, b: BasisId) -> String {
        let e = &self.basis[b];
        format!("{}:{}", self.hom_key(e.source, e.target), e.label)
    }

    pub fn arity_bound(&self) -> usize {
        self.arity_bound
    }

    pub fn mu(&self) -> &Cochain<S> {
        &self.mu
    }

    /// Replaces the structure maps, keeping objects and bases. The arity
    /// bound grows if needed.
    pub fn with_mu(&self, mu: Cochain<S>) -> Result<Self> {
        let mut out = Category {
            mu: Cochain::new(),
            ..self.clone()
        };
        out.arity_bound = out.arity_bound.max(mu.max_length().unwrap_or(0));
        for (inputs, o, _) in mu.entries() {
            out.check_entry(inputs, o)?;
        }
        out.mu = mu;
        Ok(out)
    }

    pub fn with_arity_bound(&self, arity_bound: usize) -> Result<Self> {
        if arity_bound < self.mu.max_length().unwrap_or(0) || arity_bound == 0 {
            return Err(Error::BadParameter(format!(
                "arity bound {arity_bound} below the longest μ entry"
            )));
        }
        Ok(Category {
            arity_bound,
            ..self.clone()
        })
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Category<T> {
        Category {
            objects: self.objects.clone(),
            basis: self.basis.clone(),
            degrees: self.degrees.clone(),
            homs: self.homs.clone(),
            arity_bound: self.arity_bound,
            mu: self.mu.map_scalars(f),
        }
    }

    /// Curvature of object `x`: the length-0 component landing in `hom(x, x)`.
    pub fn curvature(&self, x: ObjId) -> SparseVec<S> {
        self.mu
            .get(&[])
            .map(|v| {
                v.iter()
                    .filter(|(b, _)| self.basis[*b].source == x)
                    .map(|(b, c)| (b, c.clone()))
                    .collect()
            })
            .unwrap_or_default()
    }

    pub fn is_curved(&self) -> bool {
        self.mu.get(&[]).is_some()
    }

    /// `μ^d(inputs[d−1], …, inputs[0])` on vectors over the global basis.
    pub fn mu_apply(&self, inputs: &[&SparseVec<S>]) -> SparseVec<S> {
        multilinear::apply(&self.mu, inputs)
    }

    /// `μ²(a2, a1)`.
    pub fn compose(&self, a2: &SparseVec<S>, a1: &SparseVec<S>) -> SparseVec<S> {
        self.mu_apply(&[a1, a2])
    }

    /// Composable basis tuples of length `len ≥ 1`, first-applied first, in
    /// lexicographic order.
    pub fn composable_tuples(&self, len: usize) -> Vec<Vec<BasisId>> {
        let mut out = Vec::new();
        if len == 0 {
            return out;
        }
        let mut cur = Vec::with_capacity(len);
        for b in 0..self.basis.len() {
            cur.push(b);
            self.extend_tuples(len, &mut cur, &mut out);
            cur.pop();
        }
        out
    }

    fn extend_tuples(&self, len: usize, cur: &mut Vec<BasisId>, out: &mut Vec<Vec<BasisId>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let y = self.basis[*cur.last().unwrap()].target;
        for z in 0..self.objects.len() {
            for &b in self.hom(y, z) {
                cur.push(b);
                self.extend_tuples(len, cur, out);
                cur.pop();
            }
        }
    }

    /// Number of composable basis tuples of length `len`; `len = 0` counts objects.
    pub fn count_tuples(&self, len: usize) -> u128 {
        let n = self.objects.len();
        // paths[x]: tuples of the current length ending at x
        let mut paths = vec![1u128; n];
        for _ in 0..len {
            let mut next = vec![0u128; n];
            for (&(x, y), b) in &self.homs {
                next[y] = next[y].saturating_add(paths[x].saturating_mul(b.len() as u128));
            }
            paths = next;
        }
        paths.iter().fold(0u128, |a, p| a.saturating_add(*p))
    }

    /// A degree-0 element `e ∈ hom(x, x)` with `μ²(a, e) = a`,
    /// `μ²(e, a) = (−1)^{|a|} a` and no other `μ` involving it.
    pub fn strict_unit(&self, x: ObjId) -> Option<BasisId> {
        self.hom(x, x)
            .iter()
            .copied()
            .find(|&e| self.is_strict_unit(e))
    }

    fn is_strict_unit(&self, e: BasisId) -> bool {
        let x = self.basis[e].source;
        if self.degrees[e] != 0 {
            return false;
        }
        let ev = SparseVec::unit(e);
        for a in 0..self.basis.len() {
            let av = SparseVec::unit(a);
            if self.basis[a].target == x {
                let expect = SparseVec::from_entries([(a, S::one().signed(self.degrees[a]))]);
                if !self.compose(&ev, &av).minus(&expect).is_zero() {
                    return false;
                }
            }
            if self.basis[a].source == x && !self.compose(&av, &ev).minus(&av).is_zero() {
                return false;
            }
        }
        self.mu.rows().all(|(k, _)| k.len() == 2 || !k.contains(&e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::{int, Rational};

    fn sphere(n: i64) -> Category<Rational> {
        let mut c = Category::new(["S".to_string()], 2).unwrap();
        let e = c.add_basis(0, 0, "e", 0).unwrap();
        let s = c.add_basis(0, 0, "s", n).unwrap();
        c.add_mu(&[e, e], e, int(1)).unwrap();
        // inputs first-applied first: μ²(s, e) = s, μ²(e, s) = (−1)^n s
        c.add_mu(&[e, s], s, int(1)).unwrap();
        c.add_mu(&[s, e], s, int(1).signed(n)).unwrap();
        c
    }

    #[test]
    fn strict_unit_of_sphere() {
        let c = sphere(3);
        assert_eq!(c.strict_unit(0), Some(0));
        assert_eq!(c.count_tuples(3), 8);
        assert_eq!(c.composable_tuples(2).len(), 4);
    }

    #[test]
    fn rejects_non_composable_entry() {
        let mut c = Category::<Rational>::new(["X".to_string(), "Y".to_string()], 2).unwrap();
        let a = c.add_basis(0, 1, "a", 0).unwrap();
        assert!(c.add_mu(&[a, a], a, int(1)).is_err());
        assert!(c.add_mu(&[], a, int(1)).is_err());
    }
}
