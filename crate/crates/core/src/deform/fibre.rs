use std::collections::{BTreeMap, HashMap};

use super::{check_connection, deformed_obstruction, Connection, Deformation};
use crate::category::{hom_cohomology, Category, ObjId};
use crate::error::{Error, Result};
use crate::exactlin::rational::int;
use crate::exactlin::{Echelon, PivotOrder, Scalar, SparseVec, TruncLaurent, TruncSeries};
use crate::multilinear::BasisId;
use crate::tw::{is_quasi_iso, TwComplex, TwMorphism};

/// The category of flat connections `(X, α)`: same hom spaces as the
/// underlying objects, with `μ^d` summed over all ways of inserting
/// connection elements between the inputs.
pub fn egl(e: &Deformation, candidates: &[Connection]) -> Result<Deformation> {
    for c in candidates {
        check_connection(e, c.object, &c.alpha)?;
        if !deformed_obstruction(e, c.object, &c.alpha)?.is_zero() {
            return Err(Error::NotFlat(c.name.clone()));
        }
    }
    let base = &e.category;
    let mut out = Category::new(
        candidates.iter().map(|c| c.name.clone()),
        base.arity_bound(),
    )?;
    // new basis id → old basis id, and back per candidate pair
    let mut old_of = Vec::new();
    let mut new_of: HashMap<(usize, usize, BasisId), BasisId> = HashMap::new();
    for (i, ci) in candidates.iter().enumerate() {
        for (j, cj) in candidates.iter().enumerate() {
            for &b in base.hom(ci.object, cj.object) {
                let el = base.basis_element(b);
                let id = out.add_basis(i, j, &el.label, el.degree)?;
                old_of.push(b);
                new_of.insert((i, j, b), id);
            }
        }
    }
    let top = base.arity_bound();
    for d in 1..=top {
        for tuple in out.composable_tuples(d) {
            let mut objects = vec![out.basis_element(tuple[0]).source];
            objects.extend(tuple.iter().map(|b| out.basis_element(*b).target));
            let inputs: Vec<SparseVec<TruncSeries>> =
                tuple.iter().map(|b| SparseVec::unit(old_of[*b])).collect();
            let mut value = SparseVec::new();
            let mut counts = vec![0usize; d + 1];
            insertion_sum(
                base,
                candidates,
                &objects,
                &inputs,
                top - d,
                0,
                &mut counts,
                &mut value,
            );
            let (first, last) = (objects[0], objects[d]);
            for (o, c) in value.iter() {
                let c = c.retruncate(e.trunc);
                if !c.is_zero() {
                    out.add_mu(&tuple, new_of[&(first, last, o)], c)?;
                }
            }
        }
    }
    Deformation::new(out, e.trunc)
}

/// Adds `μ(α^{k_d}, a_d, …, a_1, α^{k_0})` over all `k` with `Σ k ≤ spare`.
#[allow(clippy::too_many_arguments)]
fn insertion_sum(
    base: &Category<TruncSeries>,
    candidates: &[Connection],
    objects: &[usize],
    inputs: &[SparseVec<TruncSeries>],
    spare: usize,
    gap: usize,
    counts: &mut Vec<usize>,
    acc: &mut SparseVec<TruncSeries>,
) {
    if gap == counts.len() {
        let mut word: Vec<&SparseVec<TruncSeries>> = Vec::new();
        for (i, &k) in counts.iter().enumerate() {
            word.extend(std::iter::repeat(&candidates[objects[i]].alpha).take(k));
            if i < inputs.len() {
                word.push(&inputs[i]);
            }
        }
        let v = base.mu_apply(&word);
        *acc = acc.plus(&v);
        return;
    }
    let alpha_zero = candidates[objects[gap]].alpha.is_zero();
    for k in 0..=spare {
        if k > 0 && alpha_zero {
            break;
        }
        counts[gap] = k;
        insertion_sum(
            base,
            candidates,
            objects,
            inputs,
            spare - k,
            gap + 1,
            counts,
            acc,
        );
    }
    counts[gap] = 0;
}

/// Coefficients as Laurent series known to `t^N`.
pub fn to_laurent(e: &Deformation) -> Category<TruncLaurent> {
    e.category.map_scalars(TruncLaurent::from_series)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenericHom {
    pub dims: BTreeMap<i64, usize>,
    /// Smallest number of spare known coefficients over the pivots used.
    pub precision_margin: Option<i64>,
}

/// Cohomology of `hom(x, y)` after inverting `t`.
pub fn generic_hom(e: &Deformation, x: ObjId, y: ObjId) -> Result<GenericHom> {
    let h = hom_cohomology(&to_laurent(e), x, y, PivotOrder::Natural)?;
    Ok(GenericHom {
        dims: h.dims(),
        precision_margin: h.precision_margin(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct LaurentWitness {
    pub forward: SparseVec<TruncLaurent>,
    /// A chain-level inverse up to homotopy.
    pub inverse: SparseVec<TruncLaurent>,
    /// Least valuation among the coefficients of both.
    pub valuation: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LaurentIsoSearch {
    pub witness: Option<LaurentWitness>,
    pub candidates_tried: usize,
}

fn vector_valuation(v: &SparseVec<TruncLaurent>) -> i64 {
    v.iter()
        .filter_map(|(_, c)| c.valuation())
        .min()
        .unwrap_or(i64::MAX)
}

/// Searches degree-0 isomorphisms `x → y` over the Laurent scalars among
/// `Σ ±t^{k_i} r_i` for the chosen `H⁰` basis `r_i` and `k_i` in `window`.
/// A candidate counts when it and its inverse have all coefficient
/// valuations at least `window.0`.
pub fn iso_over_laurent(
    e: &Deformation,
    x: ObjId,
    y: ObjId,
    budget: usize,
    window: (i64, i64),
) -> Result<LaurentIsoSearch> {
    let (lo, hi) = window;
    if lo > hi {
        return Err(Error::BadParameter(format!(
            "empty valuation window [{lo}, {hi}]"
        )));
    }
    let cat = to_laurent(e);
    let forward = hom_cohomology(&cat, x, y, PivotOrder::Natural)?.representatives(0);
    let backward = hom_cohomology(&cat, y, x, PivotOrder::Natural)?.representatives(0);
    let end_x = hom_cohomology(&cat, x, x, PivotOrder::Natural)?;
    let end_y = hom_cohomology(&cat, y, y, PivotOrder::Natural)?;
    let (ex, ey) = match (cat.strict_unit(x), cat.strict_unit(y)) {
        (Some(ex), Some(ey)) => (ex, ey),
        _ => {
            return Err(Error::NoIdentity(format!(
                "{} or {}",
                cat.objects()[x],
                cat.objects()[y]
            )))
        }
    };
    let target: SparseVec<TruncLaurent> = end_x
        .class_of(&SparseVec::unit(ex), 0)?
        .into_iter()
        .chain(end_y.class_of(&SparseVec::unit(ey), 0)?)
        .enumerate()
        .collect();

    let mut candidates: Vec<SparseVec<TruncLaurent>> = Vec::new();
    if x == y {
        candidates.push(SparseVec::unit(ex));
    }
    // each representative gets 0 or ±t^k with k in the window
    let choices: Vec<Option<(i64, i64)>> = std::iter::once(None)
        .chain((lo..=hi).flat_map(|k| [Some((k, 1)), Some((k, -1))]))
        .collect();
    let base = choices.len() as u128;
    let total = base.checked_pow(forward.len() as u32).unwrap_or(u128::MAX);
    let combos = (1..total).map(|mut code| {
        let mut v = SparseVec::new();
        for r in &forward {
            if let Some((k, sign)) = choices[(code % base) as usize] {
                v.add_scaled(r, &TruncLaurent::monomial(k, int(sign)));
            }
            code /= base;
        }
        v
    });
    let mut tried = 0;
    for c in candidates.into_iter().chain(combos) {
        if tried >= budget {
            break;
        }
        tried += 1;
        if c.is_zero() || vector_valuation(&c) < lo {
            continue;
        }
        let tc = TwMorphism::new(
            &cat,
            TwComplex::object(x),
            TwComplex::object(y),
            0,
            [((0, 0), c.clone())].into(),
        )?;
        if !is_quasi_iso(&cat, &tc)? {
            continue;
        }
        let mut columns = Echelon::new(end_x.dim(0) + end_y.dim(0), PivotOrder::Natural);
        for (j, g) in backward.iter().enumerate() {
            // degree-0 H-composition carries no sign
            let gc = end_x.class_of(&cat.compose(g, &c), 0)?;
            let cg = end_y.class_of(&cat.compose(&c, g), 0)?;
            let col: SparseVec<TruncLaurent> = gc.into_iter().chain(cg).enumerate().collect();
            columns.insert(&col, Some(j))?;
        }
        let (rem, coords) = columns.reduce(&target)?;
        if !rem.is_zero() {
            continue;
        }
        let mut g = SparseVec::new();
        for (j, a) in coords.iter() {
            g.add_scaled(&backward[j], a);
        }
        let valuation = vector_valuation(&c).min(vector_valuation(&g));
        if valuation >= lo {
            return Ok(LaurentIsoSearch {
                witness: Some(LaurentWitness {
                    forward: c,
                    inverse: g,
                    valuation,
                }),
                candidates_tried: tried,
            });
        }
    }
    Ok(LaurentIsoSearch {
        witness: None,
        candidates_tried: tried,
    })
}
