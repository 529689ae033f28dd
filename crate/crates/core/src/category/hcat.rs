use std::collections::BTreeMap;

use super::{Category, ObjId};
use crate::error::Result;
use crate::exactlin::{Echelon, FieldScalar, GradedComplex, PivotOrder, SparseVec};
use crate::multilinear::BasisId;

/// Cohomology of `(hom(x, y), μ¹)` with representatives over the global basis.
pub struct HomCohomology<S> {
    pub source: ObjId,
    pub target: ObjId,
    basis: Vec<BasisId>,
    complex: GradedComplex<S>,
}

impl<S: FieldScalar> HomCohomology<S> {
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.complex.dims()
    }

    pub fn dim(&self, k: i64) -> usize {
        self.complex.dim(k)
    }

    pub fn total_dim(&self) -> usize {
        self.complex.cohomology.total_dim()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.complex.cohomology.euler_characteristic()
    }

    pub fn precision_margin(&self) -> Option<i64> {
        self.complex.precision_margin()
    }

    fn to_hom(&self, v: &SparseVec<S>) -> SparseVec<S> {
        v.iter()
            .map(|(b, c)| {
                (
                    self.basis
                        .binary_search(&b)
                        .expect("vector outside the hom space"),
                    c.clone(),
                )
            })
            .collect()
    }

    fn to_global(&self, v: &SparseVec<S>) -> SparseVec<S> {
        v.iter().map(|(i, c)| (self.basis[i], c.clone())).collect()
    }

    /// Representatives of the chosen basis of `H^k`.
    pub fn representatives(&self, k: i64) -> Vec<SparseVec<S>> {
        self.complex
            .representatives(k)
            .iter()
            .map(|r| self.to_global(r))
            .collect()
    }

    pub fn class_of(&self, v: &SparseVec<S>, k: i64) -> Result<Vec<S>> {
        self.complex.class_of(&self.to_hom(v), k)
    }

    pub fn is_coboundary(&self, v: &SparseVec<S>, k: i64) -> Result<bool> {
        self.complex.is_coboundary(&self.to_hom(v), k)
    }

    /// Some `b` of degree `k − 1` with `μ¹(b) = v`, if `v` is a coboundary.
    pub fn primitive(&self, v: &SparseVec<S>, k: i64) -> Result<Option<SparseVec<S>>> {
        Ok(self
            .complex
            .solve_primitive(&self.to_hom(v), k)?
            .map(|b| self.to_global(&b)))
    }

    /// A representative of the class with coordinates `coords` in degree `k`.
    pub fn lift(&self, coords: &[S], k: i64) -> SparseVec<S> {
        let mut out = SparseVec::new();
        for (c, r) in coords.iter().zip(self.representatives(k)) {
            out.add_scaled(&r, c);
        }
        out
    }
}

pub fn hom_cohomology<S: FieldScalar>(
    a: &Category<S>,
    x: ObjId,
    y: ObjId,
    order: PivotOrder,
) -> Result<HomCohomology<S>> {
    let basis = a.hom(x, y).to_vec();
    let degrees = basis.iter().map(|b| a.degrees()[*b]).collect();
    let position = |b: usize| basis.binary_search(&b).expect("μ¹ stays in its hom space");
    let complex = GradedComplex::build(
        degrees,
        |i| {
            Ok(a.mu_apply(&[&SparseVec::unit(basis[i])])
                .iter()
                .map(|(b, c)| (position(b), c.clone()))
                .collect())
        },
        order,
    )?;
    Ok(HomCohomology {
        source: x,
        target: y,
        basis,
        complex,
    })
}

/// One structure constant block: `[b]·[a]` for basis classes
/// `[a] ∈ H^{deg}(x, y)` and `[b] ∈ H(y, z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductEntry<S> {
    pub objects: (ObjId, ObjId, ObjId),
    /// `(degree, index)` of `[b]`.
    pub left: (i64, usize),
    /// `(degree, index)` of `[a]`.
    pub right: (i64, usize),
    /// Coordinates in `H^{|a|+|b|}(x, z)`.
    pub value: Vec<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ObjectUnit<S> {
    pub object: ObjId,
    /// Coordinates of a two-sided identity in `H⁰(end x)`, if one exists.
    pub unit: Option<Vec<S>>,
}

/// The cohomological category: hom cohomology of every pair, the product
/// table `[b]·[a] = (−1)^{|a|}[μ²(b, a)]`, and unit detection.
pub struct HCategory<S> {
    pub homs: BTreeMap<(ObjId, ObjId), HomCohomology<S>>,
    pub products: Vec<ProductEntry<S>>,
    pub units: Vec<ObjectUnit<S>>,
}

impl<S: FieldScalar> HCategory<S> {
    pub fn is_unital(&self) -> bool {
        self.units.iter().all(|u| u.unit.is_some())
    }

    fn classes(&self, x: ObjId, y: ObjId) -> Vec<(i64, usize)> {
        self.homs
            .get(&(x, y))
            .map(|h| {
                h.dims()
                    .into_iter()
                    .flat_map(|(k, n)| (0..n).map(move |i| (k, i)))
                    .collect()
            })
            .unwrap_or_default()
    }

    fn product_value(
        &self,
        x: ObjId,
        y: ObjId,
        z: ObjId,
        left: (i64, usize),
        right: (i64, usize),
    ) -> Option<&[S]> {
        self.products
            .iter()
            .find(|p| p.objects == (x, y, z) && p.left == left && p.right == right)
            .map(|p| p.value.as_slice())
    }

    /// `[b]·[a]` on class coordinates.
    pub fn product(&self, x: ObjId, y: ObjId, z: ObjId, b: (i64, &[S]), a: (i64, &[S])) -> Vec<S> {
        let dim = self.homs.get(&(x, z)).map_or(0, |h| h.dim(a.0 + b.0));
        let mut out = vec![S::zero(); dim];
        for (i, cb) in b.1.iter().enumerate() {
            for (j, ca) in a.1.iter().enumerate() {
                if cb.is_zero() || ca.is_zero() {
                    continue;
                }
                if let Some(v) = self.product_value(x, y, z, (b.0, i), (a.0, j)) {
                    for (o, c) in out.iter_mut().zip(v) {
                        *o = o.plus(&cb.times(ca).times(c));
                    }
                }
            }
        }
        out
    }
}

pub fn h_category<S: FieldScalar>(a: &Category<S>, order: PivotOrder) -> Result<HCategory<S>> {
    let mut homs = BTreeMap::new();
    for (x, y) in a.hom_pairs() {
        homs.insert((x, y), hom_cohomology(a, x, y, order)?);
    }
    let mut products = Vec::new();
    for ((x, y), hxy) in &homs {
        for ((y2, z), hyz) in &homs {
            if y2 != y {
                continue;
            }
            let Some(hxz) = homs.get(&(*x, *z)) else {
                continue;
            };
            for (q, nq) in hxy.dims() {
                let reps_a = hxy.representatives(q);
                for (p, np) in hyz.dims() {
                    let reps_b = hyz.representatives(p);
                    for (i, rb) in reps_b.iter().enumerate().take(np) {
                        for (j, ra) in reps_a.iter().enumerate().take(nq) {
                            let value = a.compose(rb, ra).scaled(&S::one().signed(q));
                            products.push(ProductEntry {
                                objects: (*x, *y, *z),
                                left: (p, i),
                                right: (q, j),
                                value: hxz.class_of(&value, p + q)?,
                            });
                        }
                    }
                }
            }
        }
    }
    let mut h = HCategory {
        homs,
        products,
        units: Vec::new(),
    };
    for x in 0..a.objects().len() {
        let unit = find_unit(&h, a.objects().len(), x)?;
        h.units.push(ObjectUnit { object: x, unit });
    }
    Ok(h)
}

/// Solves the linear conditions `[a]·[u] = [a]`, `[u]·[b] = [b]` on all
/// basis classes out of and into `x`.
fn find_unit<S: FieldScalar>(
    h: &HCategory<S>,
    n_objects: usize,
    x: ObjId,
) -> Result<Option<Vec<S>>> {
    let k = h.homs.get(&(x, x)).map_or(0, |hx| hx.dim(0));
    let mut columns = vec![SparseVec::<S>::new(); k];
    let mut rhs = SparseVec::<S>::new();
    let mut offset = 0;
    let basis_coords = |i: usize| {
        let mut v = vec![S::zero(); k];
        v[i] = S::one();
        v
    };
    let mut push = |values: Vec<Vec<S>>, target: Vec<S>, offset: &mut usize| {
        for (col, v) in columns.iter_mut().zip(values) {
            for (r, c) in v.iter().enumerate() {
                col.add_at(*offset + r, c);
            }
        }
        for (r, c) in target.iter().enumerate() {
            rhs.add_at(*offset + r, c);
        }
        *offset += target.len();
    };
    for y in 0..n_objects {
        for (q, j) in h.classes(x, y) {
            let mut a = vec![S::zero(); h.homs[&(x, y)].dim(q)];
            a[j] = S::one();
            let values = (0..k)
                .map(|i| h.product(x, x, y, (q, &a), (0, &basis_coords(i))))
                .collect();
            push(values, a, &mut offset);
        }
        for (q, j) in h.classes(y, x) {
            let mut b = vec![S::zero(); h.homs[&(y, x)].dim(q)];
            b[j] = S::one();
            let values = (0..k)
                .map(|i| h.product(y, x, x, (0, &basis_coords(i)), (q, &b)))
                .collect();
            push(values, b, &mut offset);
        }
    }
    let mut ech = Echelon::new(offset, PivotOrder::Natural);
    for (i, col) in columns.iter().enumerate() {
        ech.insert(col, Some(i))?;
    }
    let (rem, coords) = ech.reduce(&rhs)?;
    Ok(rem
        .is_zero()
        .then(|| (0..k).map(|i| coords.coeff(i)).collect()))
}
