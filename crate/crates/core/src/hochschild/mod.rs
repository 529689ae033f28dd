//! The length-truncated Hochschild complex `CC*(A, A)`.
//!
//! A cochain is a [`Cochain`] on composable basis tuples; an entry with
//! inputs `a_1, …, a_s` and output `b` has degree `|b| − Σ|a_i| + s`.
//! The differential is `δτ = [μ, τ]`. Cochains of length above `L` span a
//! subcomplex, and everything here works in the quotient by it.

use std::collections::HashMap;

use serde::Serialize;

use crate::category::Category;
use crate::error::{Error, Result};
use crate::exactlin::{FieldScalar, GradedComplex, PivotOrder, Scalar, SparseVec};
use crate::multilinear::{self, BasisId, Cochain, Grading};

/// Basis cochains of one degree and length at most `max_len`, ordered by
/// length, then input tuple, then output.
#[derive(Clone, Debug)]
pub struct CochainBasis {
    pub degree: i64,
    pub max_len: usize,
    entries: Vec<(Vec<BasisId>, BasisId)>,
    index: HashMap<(Vec<BasisId>, BasisId), usize>,
}

impl CochainBasis {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(Vec<BasisId>, BasisId)] {
        &self.entries
    }

    pub fn cochain<S: Scalar>(&self, i: usize) -> Cochain<S> {
        let (k, o) = &self.entries[i];
        Cochain::single(k.clone(), *o, S::one())
    }

    /// Coordinates of a cochain; entries longer than `max_len` are dropped.
    pub fn to_vector<S: Scalar>(&self, c: &Cochain<S>) -> Result<SparseVec<S>> {
        let mut v = SparseVec::new();
        for (k, o, x) in c.entries() {
            if k.len() > self.max_len {
                continue;
            }
            let i = self
                .index
                .get(&(k.to_vec(), o))
                .ok_or_else(|| Error::WrongDegree {
                    expected: self.degree,
                    found: i64::MIN,
                })?;
            v.add_at(*i, x);
        }
        Ok(v)
    }

    pub fn to_cochain<S: Scalar>(&self, v: &SparseVec<S>) -> Cochain<S> {
        let mut c = Cochain::new();
        for (i, x) in v.iter() {
            let (k, o) = &self.entries[i];
            c.add(k.clone(), *o, x);
        }
        c
    }
}

/// All basis cochains of degree `r` and length at most `max_len`.
pub fn cc_basis<S: Scalar>(a: &Category<S>, r: i64, max_len: usize) -> CochainBasis {
    let mut entries = Vec::new();
    for x in 0..a.objects().len() {
        for &o in a.hom(x, x) {
            if a.degree_of(o) == r {
                entries.push((Vec::new(), o));
            }
        }
    }
    for s in 1..=max_len {
        for tuple in a.composable_tuples(s) {
            let source = a.basis_element(tuple[0]).source;
            let target = a.basis_element(*tuple.last().unwrap()).target;
            for &o in a.hom(source, target) {
                if Cochain::<S>::entry_degree(a, &tuple, o) == r {
                    entries.push((tuple.clone(), o));
                }
            }
        }
    }
    let index = entries
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    CochainBasis {
        degree: r,
        max_len,
        entries,
        index,
    }
}

/// `δτ = [μ, τ]`, truncated at length `max_len`.
pub fn hochschild_diff<S: Scalar>(a: &Category<S>, tau: &Cochain<S>, max_len: usize) -> Cochain<S> {
    multilinear::bracket(a.mu(), tau, a, max_len)
}

/// Gerstenhaber bracket `[φ, ψ]`, of degree `r_φ + r_ψ − 1`.
pub fn bracket<S: Scalar>(
    a: &Category<S>,
    phi: &Cochain<S>,
    psi: &Cochain<S>,
    max_len: usize,
) -> Cochain<S> {
    multilinear::bracket(phi, psi, a, max_len)
}

/// Cup product `φ ∪ ψ = (−1)^{(r_φ + 1) r_ψ} μ{φ, ψ}`: `φ` and `ψ` fed
/// into two slots of every `μ^d`, `ψ` on the earlier inputs.
pub fn cup<S: Scalar>(
    a: &Category<S>,
    phi: &Cochain<S>,
    psi: &Cochain<S>,
    max_len: usize,
) -> Cochain<S> {
    let mut out = Cochain::new();
    let psi_parts = psi.homogeneous_parts(a);
    for (rp, p) in phi.homogeneous_parts(a) {
        for (rq, q) in &psi_parts {
            let sign = S::one().signed((rp + 1) * rq);
            out.add_scaled(&multilinear::brace2(a.mu(), &p, q, a, max_len), &sign);
        }
    }
    out
}

/// The unit class candidate: `X ↦ e_X` for strict units `e_X`.
pub fn unit_cochain<S: Scalar>(a: &Category<S>) -> Result<Cochain<S>> {
    let mut c = Cochain::new();
    for x in 0..a.objects().len() {
        let e = a
            .strict_unit(x)
            .ok_or_else(|| Error::NoIdentity(a.objects()[x].clone()))?;
        c.add(Vec::new(), e, &S::one());
    }
    Ok(c)
}

/// Whether the quotient by lengths above `max_len` has the same degree-`r`
/// cohomology as the full complex: no cochain of degree `r` or `r + 1`
/// has length above `max_len`, judged from the range of basis degrees.
pub fn truncation_is_exact<S: Scalar>(a: &Category<S>, r: i64, max_len: usize) -> bool {
    if a.count_tuples(max_len + 1) == 0 {
        return true;
    }
    let degrees = a.degrees();
    let (Some(&lo), Some(&hi)) = (degrees.iter().min(), degrees.iter().max()) else {
        return true;
    };
    let s = max_len as i64 + 1;
    if hi < 1 {
        // lower bound lo + s(1 − hi) grows with s
        lo + s * (1 - hi) > r + 1
    } else if lo > 1 {
        hi + s * (1 - lo) < r
    } else {
        false
    }
}

/// The truncated complex around degree `r`, with cohomology in degree `r`.
pub struct HochschildGroup<S> {
    pub degree: i64,
    pub max_len: usize,
    bases: [CochainBasis; 3],
    complex: GradedComplex<S>,
}

/// `HH^r` of the quotient complex of lengths at most `max_len`. Curved
/// categories are refused: `μ⁰` shortens cochains and breaks the truncation.
pub fn hh_group<S: FieldScalar>(
    a: &Category<S>,
    r: i64,
    max_len: usize,
    order: PivotOrder,
) -> Result<HochschildGroup<S>> {
    if a.is_curved() {
        return Err(Error::BadParameter(
            "Hochschild cohomology of a curved category is not truncated".into(),
        ));
    }
    let bases = [
        cc_basis(a, r - 1, max_len),
        cc_basis(a, r, max_len),
        cc_basis(a, r + 1, max_len),
    ];
    let offsets = [0, bases[0].len(), bases[0].len() + bases[1].len()];
    let mut degrees = Vec::with_capacity(offsets[2] + bases[2].len());
    for (k, b) in bases.iter().enumerate() {
        degrees.extend(std::iter::repeat(r - 1 + k as i64).take(b.len()));
    }
    let complex = GradedComplex::build(
        degrees,
        |i| {
            let k = offsets.iter().rposition(|o| *o <= i).unwrap();
            if k == 2 {
                return Ok(SparseVec::new());
            }
            let image = hochschild_diff(a, &bases[k].cochain(i - offsets[k]), max_len);
            let v = bases[k + 1].to_vector(&image)?;
            Ok(v.iter()
                .map(|(j, c)| (j + offsets[k + 1], c.clone()))
                .collect())
        },
        order,
    )?;
    Ok(HochschildGroup {
        degree: r,
        max_len,
        bases,
        complex,
    })
}

impl<S: FieldScalar> HochschildGroup<S> {
    pub fn dim(&self) -> usize {
        self.complex.dim(self.degree)
    }

    pub fn basis(&self) -> &CochainBasis {
        &self.bases[1]
    }

    fn global(&self, c: &Cochain<S>) -> Result<SparseVec<S>> {
        let off = self.bases[0].len();
        Ok(self.bases[1]
            .to_vector(c)?
            .iter()
            .map(|(j, x)| (j + off, x.clone()))
            .collect())
    }

    /// Cocycles representing the chosen basis of `HH^r`.
    pub fn classes(&self) -> Vec<Cochain<S>> {
        let off = self.bases[0].len();
        self.complex
            .representatives(self.degree)
            .iter()
            .map(|v| {
                self.bases[1].to_cochain(&v.iter().map(|(j, x)| (j - off, x.clone())).collect())
            })
            .collect()
    }

    /// Whether `c` is a cocycle of the truncated complex.
    pub fn is_cocycle(&self, a: &Category<S>, c: &Cochain<S>) -> Result<bool> {
        self.bases[1].to_vector(c)?;
        Ok(hochschild_diff(a, c, self.max_len).is_zero())
    }

    pub fn class_of(&self, c: &Cochain<S>) -> Result<Vec<S>> {
        self.complex.class_of(&self.global(c)?, self.degree)
    }

    pub fn is_coboundary(&self, c: &Cochain<S>) -> Result<bool> {
        self.complex.is_coboundary(&self.global(c)?, self.degree)
    }

    /// A cochain `b` of degree `r − 1` with `δb = c`, if `c` is a coboundary.
    pub fn primitive(&self, c: &Cochain<S>) -> Result<Option<Cochain<S>>> {
        Ok(self
            .complex
            .solve_primitive(&self.global(c)?, self.degree)?
            .map(|v| self.bases[0].to_cochain(&v)))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CochainEntry {
    pub length: usize,
    /// `X_0, …, X_s`.
    pub objects: Vec<String>,
    /// Input labels `a_s, …, a_1`, leftmost first.
    pub inputs: Vec<String>,
    pub output: String,
    pub coeff: String,
}

/// Readable entries of a cochain.
pub fn describe_cochain<S: Scalar>(a: &Category<S>, c: &Cochain<S>) -> Vec<CochainEntry> {
    c.entries()
        .map(|(k, o, x)| {
            let out = a.basis_element(o);
            let mut objects = vec![a.objects()[out.source].clone()];
            objects.extend(
                k.iter()
                    .map(|b| a.objects()[a.basis_element(*b).target].clone()),
            );
            CochainEntry {
                length: k.len(),
                objects,
                inputs: k
                    .iter()
                    .rev()
                    .map(|b| a.basis_element(*b).label.clone())
                    .collect(),
                output: out.label.clone(),
                coeff: x.to_string(),
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HhReport {
    pub degree: i64,
    pub max_len: usize,
    pub dim: usize,
    /// `dim` agrees with the value at `max_len − 1`.
    pub stable: bool,
    pub exact: bool,
    pub classes: Vec<Vec<CochainEntry>>,
}

pub fn hh<S: FieldScalar>(a: &Category<S>, r: i64, max_len: usize) -> Result<HhReport> {
    let g = hh_group(a, r, max_len, PivotOrder::Natural)?;
    let stable = max_len > 0 && hh_group(a, r, max_len - 1, PivotOrder::Natural)?.dim() == g.dim();
    Ok(HhReport {
        degree: r,
        max_len,
        dim: g.dim(),
        stable,
        exact: truncation_is_exact(a, r, max_len),
        classes: g.classes().iter().map(|c| describe_cochain(a, c)).collect(),
    })
}

/// Degrees of the entries of a cochain, for homogeneity checks.
pub fn degrees_of<S: Scalar, G: Grading + ?Sized>(g: &G, c: &Cochain<S>) -> Vec<i64> {
    let mut out: Vec<i64> = c.homogeneous_parts(g).into_keys().collect();
    out.dedup();
    out
}
