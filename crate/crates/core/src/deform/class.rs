use super::{special_fibre, Deformation};
use crate::error::{Error, Result};
use crate::exactlin::{PivotOrder, Rational, Scalar, TruncSeries};
use crate::hochschild::{hh_group, truncation_is_exact};
use crate::multilinear::Cochain;

#[derive(Clone, Debug, PartialEq)]
pub struct DeformationClass {
    /// Order-`t` parts of all structure maps, `μ⁰` as the length-0 component.
    pub cochain: Cochain<Rational>,
    /// Coordinates in the chosen basis of the truncated `HH²` of the
    /// special fibre.
    pub coords: Vec<Rational>,
    pub max_len: usize,
    /// The truncation does not change `HH²`.
    pub exact: bool,
}

impl DeformationClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }
}

/// The first-order class `∂_t μ |_{t=0}` in `HH²` of the special fibre,
/// lengths at most `max_len`.
pub fn deformation_class(e: &Deformation, max_len: usize) -> Result<DeformationClass> {
    let fibre = special_fibre(e);
    let cochain = e.category.mu().map_scalars(|s| s.coeff(1));
    let g = hh_group(&fibre, 2, max_len, PivotOrder::Natural)?;
    if !g.is_cocycle(&fibre, &cochain)? {
        return Err(Error::NotACocycle("order-t part of the deformation".into()));
    }
    Ok(DeformationClass {
        coords: g.class_of(&cochain)?,
        cochain,
        max_len,
        exact: truncation_is_exact(&fibre, 2, max_len),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FirstOrderReport {
    pub equivalent: bool,
    /// Class of the second minus class of the first.
    pub difference: Vec<Rational>,
    /// Whether the verdict holds without the length truncation.
    pub exact: bool,
}

/// Compares first-order classes of two deformations of the same fibre.
pub fn first_order_equiv(
    e1: &Deformation,
    e2: &Deformation,
    max_len: usize,
) -> Result<FirstOrderReport> {
    if special_fibre(e1) != special_fibre(e2) {
        return Err(Error::DifferentFibres);
    }
    let (c1, c2) = (
        deformation_class(e1, max_len)?,
        deformation_class(e2, max_len)?,
    );
    let difference: Vec<Rational> = c2
        .coords
        .iter()
        .zip(&c1.coords)
        .map(|(b, a)| b - a)
        .collect();
    Ok(FirstOrderReport {
        equivalent: difference.iter().all(Scalar::is_zero),
        difference,
        exact: c1.exact,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct UniquenessReport {
    /// `class(E2) = c₁ · class(E1)`.
    pub c1: Rational,
    /// `t ↦ c₁ t`, which matches the first-order classes; `None` when
    /// `c₁ = 0`.
    pub reparametrization: Option<TruncSeries>,
}

/// For a fibre with one-dimensional truncated `HH²` and `E1` nontrivial
/// at first order, finds the scalar relating the two classes.
pub fn uniqueness_harness(
    e1: &Deformation,
    e2: &Deformation,
    max_len: usize,
) -> Result<UniquenessReport> {
    if special_fibre(e1) != special_fibre(e2) {
        return Err(Error::DifferentFibres);
    }
    let (c1, c2) = (
        deformation_class(e1, max_len)?,
        deformation_class(e2, max_len)?,
    );
    if c1.coords.len() != 1 {
        return Err(Error::BadParameter(format!(
            "HH² has dimension {}, not 1",
            c1.coords.len()
        )));
    }
    if c1.coords[0].is_zero() {
        return Err(Error::BadParameter(
            "the first deformation is trivial at first order".into(),
        ));
    }
    let c = &c2.coords[0] / &c1.coords[0];
    let reparametrization = (!c.is_zero()).then(|| TruncSeries::monomial(1, c.clone(), e1.trunc));
    Ok(UniquenessReport {
        c1: c,
        reparametrization,
    })
}
