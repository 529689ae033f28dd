use super::{
    differential, quasi_iso_witness, tw_hom, Blocks, QuasiIsoSearch, Summand, TwComplex, TwMorphism,
};
use crate::category::Category;
use crate::error::{Error, Result};
use crate::exactlin::{FieldScalar, PivotOrder, Scalar, SparseVec};

fn offset_blocks<S: Scalar>(
    blocks: &Blocks<S>,
    from: usize,
    to: usize,
) -> impl Iterator<Item = ((usize, usize), SparseVec<S>)> + '_ {
    blocks
        .iter()
        .map(move |(&(i, j), v)| ((i + from, j + to), v.clone()))
}

/// `T[n]`: every summand shift raised by `n`, connection unchanged.
pub fn shift<S: Scalar>(t: &TwComplex<S>, n: i64) -> TwComplex<S> {
    TwComplex {
        carrier: t
            .carrier
            .iter()
            .map(|s| Summand {
                object: s.object,
                shift: s.shift + n,
            })
            .collect(),
        delta: t.delta.clone(),
    }
}

/// The same blocks read as a morphism `X[m] → Y[n]`; the degree changes by
/// `m − n`.
pub fn shift_morphism<S: Scalar>(f: &TwMorphism<S>, m: i64, n: i64) -> TwMorphism<S> {
    TwMorphism {
        source: shift(&f.source, m),
        target: shift(&f.target, n),
        degree: f.degree + m - n,
        blocks: f.blocks.clone(),
    }
}

/// `A ⊕ B` with block-diagonal connection; summands of `A` come first.
pub fn direct_sum<S: Scalar>(a: &TwComplex<S>, b: &TwComplex<S>) -> TwComplex<S> {
    let mut carrier = a.carrier.clone();
    carrier.extend_from_slice(&b.carrier);
    let mut delta = a.delta.clone();
    delta.extend(offset_blocks(&b.delta, a.len(), a.len()));
    TwComplex { carrier, delta }
}

/// `Cone(c) = Y ⊕ X[1]` for a closed degree-0 `c: X → Y`, with `c` placed
/// in the block from `X[1]` to `Y`.
pub fn cone<S: Scalar>(cat: &Category<S>, c: &TwMorphism<S>) -> Result<TwComplex<S>> {
    if c.degree != 0 {
        return Err(Error::WrongDegree {
            expected: 0,
            found: c.degree,
        });
    }
    if !differential(cat, c).is_zero() {
        return Err(Error::NotClosed);
    }
    let y = &c.target;
    let mut out = direct_sum(y, &shift(&c.source, 1));
    out.delta.extend(offset_blocks(&c.blocks, y.len(), 0));
    Ok(out)
}

/// The twist of `L` along `S` with its triangle maps.
#[derive(Clone, Debug, PartialEq)]
pub struct Twist<S> {
    pub complex: TwComplex<S>,
    /// `E = ⊕_i S[−deg b_i]`.
    pub evaluation_source: TwComplex<S>,
    /// `ev: E → L` with components the chosen cocycles `b_i`.
    pub evaluation: TwMorphism<S>,
    /// `L → Cone(ev)`.
    pub inclusion: TwMorphism<S>,
    /// `Cone(ev) → E[1]`.
    pub projection: TwMorphism<S>,
    /// Degrees of the chosen basis of `H(hom(S, L))`.
    pub class_degrees: Vec<i64>,
}

/// `Cone(ev: H(hom(S, L)) ⊗ S → L)`, with `H(hom(S, L))` represented by
/// the cocycles chosen under `order`.
pub fn twist<S: FieldScalar>(
    cat: &Category<S>,
    s: &TwComplex<S>,
    l: &TwComplex<S>,
    order: PivotOrder,
) -> Result<Twist<S>> {
    let hom = tw_hom(cat, s, l, order)?;
    let mut e = TwComplex::zero();
    let mut ev_blocks = Blocks::new();
    let mut class_degrees = Vec::new();
    for (k, _) in hom.dims() {
        for b in hom.representatives(k) {
            let offset = e.len();
            e = direct_sum(&e, &shift(s, -k));
            ev_blocks.extend(offset_blocks(b.blocks(), offset, 0));
            class_degrees.push(k);
        }
    }
    let evaluation = TwMorphism::new(cat, e.clone(), l.clone(), 0, ev_blocks)?;
    let complex = cone(cat, &evaluation)?;
    let unit_blocks = |c: &TwComplex<S>, from: usize, to: usize| -> Result<Blocks<S>> {
        c.carrier
            .iter()
            .enumerate()
            .map(|(i, sm)| {
                let u = cat
                    .strict_unit(sm.object)
                    .ok_or_else(|| Error::NoIdentity(cat.objects()[sm.object].clone()))?;
                Ok((
                    (i + from, i + to),
                    SparseVec::from_entries([(u, S::one().signed(sm.shift))]),
                ))
            })
            .collect()
    };
    let e1 = shift(&e, 1);
    let inclusion = TwMorphism::new(cat, l.clone(), complex.clone(), 0, unit_blocks(l, 0, 0)?)?;
    let projection = TwMorphism::new(
        cat,
        complex.clone(),
        e1.clone(),
        0,
        unit_blocks(&e1, l.len(), 0)?,
    )?;
    Ok(Twist {
        complex,
        evaluation_source: e,
        evaluation,
        inclusion,
        projection,
        class_degrees,
    })
}

/// `τ_{S_1} ⋯ τ_{S_m}(L)`: the last sphere acts first.
pub fn iterated_twist<S: FieldScalar>(
    cat: &Category<S>,
    spheres: &[TwComplex<S>],
    l: &TwComplex<S>,
    order: PivotOrder,
) -> Result<TwComplex<S>> {
    let mut cur = l.clone();
    for s in spheres.iter().rev() {
        cur = twist(cat, s, &cur, order)?.complex;
    }
    Ok(cur)
}

/// Looks for a quasi-isomorphism `τ_{S_1} ⋯ τ_{S_m}(L) → L[n]`. A missing
/// witness is inconclusive.
pub fn twist_sequence_witness<S: FieldScalar>(
    cat: &Category<S>,
    spheres: &[TwComplex<S>],
    l: &TwComplex<S>,
    n: i64,
    budget: usize,
    seed: u64,
) -> Result<QuasiIsoSearch<S>> {
    let twisted = iterated_twist(cat, spheres, l, PivotOrder::Natural)?;
    quasi_iso_witness(cat, &twisted, &shift(l, n), budget, seed)
}
