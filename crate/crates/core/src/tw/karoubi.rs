//! Idempotent splitting at the level of `H⁰`: objects are pairs `(X, π)`
//! with `[π]² = [π]`, and morphisms `(X, π) → (Y, ρ)` are the classes
//! `[ρ]·[f]·[π]`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{differential, identity, tw_hom, tw_mu, TwComplex, TwMorphism};
use crate::category::Category;
use crate::error::{Error, Result};
use crate::exactlin::{Echelon, FieldScalar, PivotOrder, SparseVec};

/// `[b]·[a] = (−1)^{|a|}[μ²(b, a)]` at chain level.
pub fn h_compose<S: FieldScalar>(
    cat: &Category<S>,
    b: &TwMorphism<S>,
    a: &TwMorphism<S>,
) -> Result<TwMorphism<S>> {
    Ok(tw_mu(cat, &[a, b])?.scaled(&S::one().signed(a.degree)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct KaroubiObject<S> {
    pub complex: TwComplex<S>,
    pub idempotent: TwMorphism<S>,
}

impl<S: FieldScalar> KaroubiObject<S> {
    /// Checks that `π` is a closed degree-0 endomorphism with `[π]² = [π]`.
    pub fn new(
        cat: &Category<S>,
        complex: TwComplex<S>,
        idempotent: TwMorphism<S>,
    ) -> Result<Self> {
        if idempotent.source != complex || idempotent.target != complex {
            return Err(Error::ShapeMismatch(
                "idempotent must be an endomorphism of the carrier".into(),
            ));
        }
        if idempotent.degree != 0 {
            return Err(Error::WrongDegree {
                expected: 0,
                found: idempotent.degree,
            });
        }
        if !differential(cat, &idempotent).is_zero() {
            return Err(Error::NotClosed);
        }
        let square = h_compose(cat, &idempotent, &idempotent)?;
        let end = tw_hom(cat, &complex, &complex, PivotOrder::Natural)?;
        if !end.is_coboundary(&square.minus(&idempotent)?)? {
            return Err(Error::NotIdempotent("[π]² differs from [π]".into()));
        }
        Ok(KaroubiObject {
            complex,
            idempotent,
        })
    }

    /// `(X, id)`.
    pub fn whole(cat: &Category<S>, complex: TwComplex<S>) -> Result<Self> {
        let id = identity(cat, &complex)?;
        Ok(KaroubiObject {
            complex,
            idempotent: id,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DpiHom<S> {
    pub dims: BTreeMap<i64, usize>,
    /// Morphisms `X → Y` whose classes form a basis of the image.
    pub representatives: BTreeMap<i64, Vec<TwMorphism<S>>>,
}

impl<S> DpiHom<S> {
    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }
}

/// The image of `[f] ↦ [ρ]·[f]·[π]` on `H(hom(X, Y))`.
pub fn dpi_hom<S: FieldScalar>(
    cat: &Category<S>,
    k1: &KaroubiObject<S>,
    k2: &KaroubiObject<S>,
) -> Result<DpiHom<S>> {
    let hom = tw_hom(cat, &k1.complex, &k2.complex, PivotOrder::Natural)?;
    let mut dims = BTreeMap::new();
    let mut representatives = BTreeMap::new();
    for (k, n) in hom.dims() {
        let mut image = Echelon::new(n, PivotOrder::Natural);
        let mut reps = Vec::new();
        for f in hom.representatives(k) {
            let g = h_compose(cat, &k2.idempotent, &h_compose(cat, &f, &k1.idempotent)?)?;
            let coords: SparseVec<S> = hom.class_of(&g)?.into_iter().enumerate().collect();
            if image.insert(&coords, None)? {
                reps.push(g);
            }
        }
        if !reps.is_empty() {
            dims.insert(k, reps.len());
            representatives.insert(k, reps);
        }
    }
    Ok(DpiHom {
        dims,
        representatives,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitCheck {
    pub test_object: String,
    pub total: BTreeMap<i64, usize>,
    pub image: BTreeMap<i64, usize>,
    pub complement: BTreeMap<i64, usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SplitReport<S> {
    pub image: KaroubiObject<S>,
    pub complement: KaroubiObject<S>,
    pub checks: Vec<SplitCheck>,
    pub verified: bool,
}

/// Splits `X = im(π) ⊕ im(1 − π)` and checks, for each test object `Y`,
/// that `H(hom(X, Y))` decomposes degreewise.
pub fn split_idempotent<S: FieldScalar>(
    cat: &Category<S>,
    k: &KaroubiObject<S>,
    tests: &[TwComplex<S>],
) -> Result<SplitReport<S>> {
    let id = identity(cat, &k.complex)?;
    let complement = KaroubiObject::new(cat, k.complex.clone(), id.minus(&k.idempotent)?)?;
    let mut checks = Vec::new();
    let mut verified = true;
    for y in tests {
        let whole = KaroubiObject::whole(cat, y.clone())?;
        let total = tw_hom(cat, &k.complex, y, PivotOrder::Natural)?.dims();
        let image = dpi_hom(cat, k, &whole)?.dims;
        let comp = dpi_hom(cat, &complement, &whole)?.dims;
        let degrees: std::collections::BTreeSet<i64> = total
            .keys()
            .chain(image.keys())
            .chain(comp.keys())
            .copied()
            .collect();
        for d in degrees {
            let get = |m: &BTreeMap<i64, usize>| m.get(&d).copied().unwrap_or(0);
            if get(&total) != get(&image) + get(&comp) {
                verified = false;
            }
        }
        checks.push(SplitCheck {
            test_object: y.describe(cat),
            total,
            image,
            complement: comp,
        });
    }
    Ok(SplitReport {
        image: k.clone(),
        complement,
        checks,
        verified,
    })
}

/// Whether `(X, π)` and `(Y, ρ)` are isomorphic in the split-closed
/// `H⁰`: some `f` from the chosen candidates admits `g` with
/// `[g][f] = [π]` and `[f][g] = [ρ]`. Returns `(f, g)`.
pub fn karoubi_iso<S: FieldScalar>(
    cat: &Category<S>,
    k1: &KaroubiObject<S>,
    k2: &KaroubiObject<S>,
    budget: usize,
) -> Result<(Option<(TwMorphism<S>, TwMorphism<S>)>, usize)> {
    let forward = dpi_hom(cat, k1, k2)?
        .representatives
        .remove(&0)
        .unwrap_or_default();
    let backward = dpi_hom(cat, k2, k1)?
        .representatives
        .remove(&0)
        .unwrap_or_default();
    let end1 = tw_hom(cat, &k1.complex, &k1.complex, PivotOrder::Natural)?;
    let end2 = tw_hom(cat, &k2.complex, &k2.complex, PivotOrder::Natural)?;
    let (n1, n2) = (end1.dim(0), end2.dim(0));
    let target: SparseVec<S> = end1
        .class_of(&k1.idempotent)?
        .into_iter()
        .chain(end2.class_of(&k2.idempotent)?)
        .enumerate()
        .collect();
    if forward.is_empty() || backward.is_empty() {
        // both split summands vanish, or the objects differ
        let zero = target.is_zero();
        let f = super::TwMorphism::zero(k1.complex.clone(), k2.complex.clone(), 0);
        let g = super::TwMorphism::zero(k2.complex.clone(), k1.complex.clone(), 0);
        return Ok((zero.then_some((f, g)), 1));
    }
    let mut tried = 0;
    for coeffs in candidate_coefficients(forward.len()) {
        if tried >= budget {
            break;
        }
        tried += 1;
        let mut f = super::TwMorphism::zero(k1.complex.clone(), k2.complex.clone(), 0);
        for (c, r) in coeffs.iter().zip(&forward) {
            f = f.plus(&r.scaled(&S::from_int(*c)))?;
        }
        let mut columns = Echelon::new(n1 + n2, PivotOrder::Natural);
        for (j, g) in backward.iter().enumerate() {
            let gf = end1.class_of(&h_compose(cat, g, &f)?)?;
            let fg = end2.class_of(&h_compose(cat, &f, g)?)?;
            let col: SparseVec<S> = gf.into_iter().chain(fg).enumerate().collect();
            columns.insert(&col, Some(j))?;
        }
        let (rem, coords) = columns.reduce(&target)?;
        if rem.is_zero() {
            let mut g = super::TwMorphism::zero(k2.complex.clone(), k1.complex.clone(), 0);
            for (j, c) in coords.iter() {
                g = g.plus(&backward[j].scaled(c))?;
            }
            return Ok((Some((f, g)), tried));
        }
    }
    Ok((None, tried))
}

/// Nonzero vectors in `{−1, 0, 1}^n`, single basis vectors first.
fn candidate_coefficients(n: usize) -> impl Iterator<Item = Vec<i64>> {
    let singles = (0..n).map(move |i| {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    });
    let total = 3usize.saturating_pow(n as u32);
    let all = (1..total).filter_map(move |mut code| {
        let mut v = vec![0i64; n];
        for x in v.iter_mut() {
            *x = [0, 1, -1][code % 3];
            code /= 3;
        }
        (v.iter().filter(|c| **c != 0).count() >= 2).then_some(v)
    });
    singles.chain(all)
}

/// Degree-0 classes `u = Σ c_i [r_i]` of `H⁰(end X)` with `c_i ∈ {0, 1, −1, 1/2}`
/// and `u² = u`, excluding `0` and the identity.
pub fn idempotent_candidates<S: FieldScalar>(
    cat: &Category<S>,
    x: &TwComplex<S>,
    limit: usize,
) -> Result<Vec<TwMorphism<S>>> {
    let end = tw_hom(cat, x, x, PivotOrder::Natural)?;
    let reps = end.representatives(0);
    let n = reps.len();
    let id = identity(cat, x)?;
    let half = S::one().plus(&S::one()).inverse()?;
    let values = [S::zero(), S::one(), S::one().negated(), half];
    let total = 4usize.saturating_pow(n as u32).min(limit.saturating_add(1));
    let mut out = Vec::new();
    for mut code in 1..total {
        let mut u = super::TwMorphism::zero(x.clone(), x.clone(), 0);
        for r in &reps {
            u = u.plus(&r.scaled(&values[code % 4]))?;
            code /= 4;
        }
        let square = h_compose(cat, &u, &u)?;
        if end.is_coboundary(&square.minus(&u)?)?
            && !end.is_coboundary(&u)?
            && !end.is_coboundary(&u.minus(&id)?)?
        {
            out.push(u);
        }
    }
    Ok(out)
}
