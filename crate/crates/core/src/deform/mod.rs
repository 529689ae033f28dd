//! One-parameter deformations over `Q[t]/t^N`.
//!
//! A deformation is a [`Category`] over [`TruncSeries`] whose length-0
//! structure constants are the obstruction cocycles `μ⁰`. Objects coupled
//! with formal connections `α ∈ hom¹(X, X)` of order `t` form the category
//! `E_c`; the flat ones form `E_gl`, and tensoring with Laurent scalars gives
//! the generic fibre.

mod class;
mod fibre;
mod mc;

pub use class::{
    deformation_class, first_order_equiv, uniqueness_harness, DeformationClass, FirstOrderReport,
    UniquenessReport,
};
pub use fibre::{
    egl, generic_hom, iso_over_laurent, to_laurent, GenericHom, LaurentIsoSearch, LaurentWitness,
};
pub use mc::{mc_solve, McResult, McStatus, McStep};

use crate::category::{validate, Category, ObjId, ValidationReport};
use crate::error::{Error, Result};
use crate::exactlin::{Rational, Scalar, SparseVec, TruncSeries};
use crate::instance::{Base, Document};

#[derive(Clone, Debug, PartialEq)]
pub struct Deformation {
    pub category: Category<TruncSeries>,
    pub trunc: u32,
}

/// An object coupled with a connection `α ∈ hom¹(X, X)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection {
    pub name: String,
    pub object: ObjId,
    pub alpha: SparseVec<TruncSeries>,
}

impl Deformation {
    /// Reduces every coefficient modulo `t^trunc`.
    pub fn new(category: Category<TruncSeries>, trunc: u32) -> Result<Self> {
        if trunc == 0 {
            return Err(Error::BadParameter("truncation must be positive".into()));
        }
        let mu = category.mu().map_scalars(|s| s.retruncate(trunc));
        Ok(Deformation {
            category: category.with_mu(mu)?,
            trunc,
        })
    }

    pub fn from_document(doc: &Document) -> Result<Self> {
        match doc.base()? {
            Base::Series { trunc } => Deformation::new(doc.category()?, trunc),
            Base::Rational => Err(Error::Parse("a deformation needs a series base".into())),
        }
    }

    /// `A ⊗ Q[t]/t^N` with no deformation terms.
    pub fn trivial(a: &Category<Rational>, trunc: u32) -> Result<Self> {
        Deformation::new(a.map_scalars(|c| TruncSeries::constant(c.clone())), trunc)
    }

    /// All connections named in the document.
    pub fn connections(&self, doc: &Document) -> Result<Vec<Connection>> {
        doc.connections
            .iter()
            .map(|c| {
                let (object, alpha) = doc.connection(&self.category, &c.name)?;
                let alpha = alpha.map(|s| s.retruncate(self.trunc));
                Ok(Connection {
                    name: c.name.clone(),
                    object,
                    alpha,
                })
            })
            .collect()
    }

    /// The connection `α = 0` on `x`.
    pub fn bare(&self, x: ObjId) -> Connection {
        Connection {
            name: self.category.objects()[x].clone(),
            object: x,
            alpha: SparseVec::new(),
        }
    }

    fn t_power(&self, k: u32, c: &Rational) -> TruncSeries {
        TruncSeries::monomial(k, c.clone(), self.trunc)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeformationReport {
    /// Objects whose `μ⁰` has a nonzero constant term.
    pub order_t_failures: Vec<String>,
    pub relations: ValidationReport,
    pub valid: bool,
}

/// The order-`t` condition on `μ⁰` and the A∞ relations with `μ⁰`
/// insertions, modulo `t^N`.
pub fn validate_deformation(e: &Deformation) -> DeformationReport {
    let cat = &e.category;
    let order_t_failures: Vec<String> = (0..cat.objects().len())
        .filter(|&x| {
            cat.curvature(x)
                .iter()
                .any(|(_, c)| !c.constant_term().is_zero())
        })
        .map(|x| cat.objects()[x].clone())
        .collect();
    let relations = validate(cat);
    let valid = order_t_failures.is_empty() && relations.valid;
    DeformationReport {
        order_t_failures,
        relations,
        valid,
    }
}

/// Constant terms of all structure maps; `μ⁰` is dropped.
pub fn special_fibre(e: &Deformation) -> Category<Rational> {
    let a = e.category.map_scalars(TruncSeries::constant_term);
    let mu = a.mu().filter_lengths(|l| l > 0);
    a.with_mu(mu)
        .expect("entries of the deformation are well formed")
}

fn check_connection(e: &Deformation, x: ObjId, alpha: &SparseVec<TruncSeries>) -> Result<()> {
    let cat = &e.category;
    for (b, c) in alpha.iter() {
        let el = cat.basis_element(b);
        if el.source != x || el.target != x || el.degree != 1 {
            return Err(Error::BadParameter(format!(
                "{} is not in hom¹ of {}",
                cat.basis_name(b),
                cat.objects()[x]
            )));
        }
        if !c.constant_term().is_zero() {
            return Err(Error::BadParameter(format!(
                "connection coefficient of {} is not of order t",
                cat.basis_name(b)
            )));
        }
    }
    Ok(())
}

/// `μ⁰(X) + μ¹(α) + μ²(α, α) + …` modulo `t^N`.
pub fn deformed_obstruction(
    e: &Deformation,
    x: ObjId,
    alpha: &SparseVec<TruncSeries>,
) -> Result<SparseVec<TruncSeries>> {
    check_connection(e, x, alpha)?;
    let cat = &e.category;
    let mut out = cat.curvature(x);
    if !alpha.is_zero() {
        // the term with d copies of α has order ≥ d
        let top = cat.arity_bound().min(e.trunc.saturating_sub(1) as usize);
        for d in 1..=top {
            let inputs = vec![alpha; d];
            out = out.plus(&cat.mu_apply(&inputs));
        }
    }
    Ok(out.map(|s| s.retruncate(e.trunc)))
}

/// Substitutes `t ↦ f(t)` in every coefficient.
pub fn reparametrize(e: &Deformation, f: &TruncSeries) -> Result<Deformation> {
    if !f.constant_term().is_zero() {
        return Err(Error::BadParameter("f(0) must vanish".into()));
    }
    if f.is_zero() {
        return Err(Error::BadParameter("f must be nonzero".into()));
    }
    let mut mu = crate::multilinear::Cochain::new();
    for (k, o, c) in e.category.mu().entries() {
        mu.add(k.to_vec(), o, &c.compose(f)?.retruncate(e.trunc));
    }
    Deformation::new(e.category.with_mu(mu)?, e.trunc)
}

/// Coefficient of `t^k` in each entry.
pub fn coefficient(v: &SparseVec<TruncSeries>, k: u32) -> SparseVec<Rational> {
    v.map(|s| s.coeff(k))
}
