//! Twisted complexes over an A∞-category.
//!
//! A summand `X[σ]` is an object with a shift. A morphism block from
//! `X[σ]` to `Y[τ]` is an element `a ∈ hom(X, Y)`, of degree
//! `|a| − τ + σ` in the twisted category. Structure maps of the additive
//! enlargement are `μ^d(a_d, …, a_1)` times `(−1)^σ`, `σ` the shift of the
//! source of `a_1`. With this rule shifting a complex leaves its
//! connection unchanged.
//!
//! Blocks are keyed `(from, to)` by carrier position. A connection `δ` is
//! strictly lower triangular: a block `(i, j)` needs `i > j`.

pub mod hom;
pub(crate) mod io;
pub mod karoubi;
mod ops;
pub mod search;
pub mod subcat;

use std::collections::BTreeMap;

use serde::Serialize;

pub use hom::{identity, is_quasi_iso, quasi_iso_witness, tw_hom, QuasiIsoSearch, TwHom};
pub use karoubi::{
    dpi_hom, idempotent_candidates, split_idempotent, DpiHom, KaroubiObject, SplitReport,
};
pub use ops::{
    cone, direct_sum, iterated_twist, shift, shift_morphism, twist, twist_sequence_witness, Twist,
};
pub use search::{generate_search, Derivation, SearchOptions, SearchOutcome};
pub use subcat::tw_subcategory;

use crate::category::{Category, ObjId};
use crate::error::{Error, Result};
use crate::exactlin::{Scalar, SparseVec};
use crate::multilinear::{apply, Grading};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Summand {
    pub object: ObjId,
    pub shift: i64,
}

/// Matrix of morphism vectors keyed by `(from, to)` carrier positions.
pub type Blocks<S> = BTreeMap<(usize, usize), SparseVec<S>>;

fn add_block<S: Scalar>(blocks: &mut Blocks<S>, key: (usize, usize), v: &SparseVec<S>, factor: &S) {
    let slot = blocks.entry(key).or_default();
    slot.add_scaled(v, factor);
    if slot.is_zero() {
        blocks.remove(&key);
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwComplex<S> {
    carrier: Vec<Summand>,
    delta: Blocks<S>,
}

impl<S: Scalar> TwComplex<S> {
    /// Checks shapes, hom spaces, degrees and triangularity; the
    /// Maurer–Cartan equation is left to [`mc_check`].
    pub fn new(cat: &Category<S>, carrier: Vec<Summand>, delta: Blocks<S>) -> Result<Self> {
        for s in &carrier {
            if s.object >= cat.objects().len() {
                return Err(Error::ShapeMismatch(format!(
                    "unknown object index {}",
                    s.object
                )));
            }
        }
        let delta: Blocks<S> = delta.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        for (&(i, j), v) in &delta {
            if i >= carrier.len() || j >= carrier.len() {
                return Err(Error::ShapeMismatch(format!(
                    "block ({i}, {j}) outside the carrier"
                )));
            }
            if i <= j {
                return Err(Error::ShapeMismatch(format!(
                    "block ({i}, {j}) is not strictly lower triangular"
                )));
            }
            check_block(cat, carrier[i], carrier[j], v, 1)?;
        }
        Ok(TwComplex { carrier, delta })
    }

    /// `X` as a one-term complex.
    pub fn object(x: ObjId) -> Self {
        TwComplex {
            carrier: vec![Summand {
                object: x,
                shift: 0,
            }],
            delta: Blocks::new(),
        }
    }

    pub fn zero() -> Self {
        TwComplex {
            carrier: Vec::new(),
            delta: Blocks::new(),
        }
    }

    pub fn carrier(&self) -> &[Summand] {
        &self.carrier
    }

    pub fn delta(&self) -> &Blocks<S> {
        &self.delta
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    fn by_source(&self) -> Vec<Vec<(usize, &SparseVec<S>)>> {
        let mut out = vec![Vec::new(); self.carrier.len()];
        for (&(i, j), v) in &self.delta {
            out[i].push((j, v));
        }
        out
    }

    pub fn describe(&self, cat: &Category<S>) -> String {
        if self.carrier.is_empty() {
            return "0".into();
        }
        self.carrier
            .iter()
            .map(|s| {
                if s.shift == 0 {
                    cat.objects()[s.object].clone()
                } else {
                    format!("{}[{}]", cat.objects()[s.object], s.shift)
                }
            })
            .collect::<Vec<_>>()
            .join(" ⊕ ")
    }
}

/// Degree of a basis element of `hom(X, Y)` seen from `X[σ]` to `Y[τ]`.
pub fn block_degree<S>(cat: &Category<S>, from: Summand, to: Summand, b: usize) -> i64 {
    cat.degree(b) - to.shift + from.shift
}

fn check_block<S: Scalar>(
    cat: &Category<S>,
    from: Summand,
    to: Summand,
    v: &SparseVec<S>,
    degree: i64,
) -> Result<()> {
    for (b, _) in v.iter() {
        let e = cat.basis_element(b);
        if e.source != from.object || e.target != to.object {
            return Err(Error::ShapeMismatch(format!(
                "{} does not map between the summands",
                cat.basis_name(b)
            )));
        }
        let found = block_degree(cat, from, to, b);
        if found != degree {
            return Err(Error::WrongDegree {
                expected: degree,
                found,
            });
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwMorphism<S> {
    pub source: TwComplex<S>,
    pub target: TwComplex<S>,
    pub degree: i64,
    blocks: Blocks<S>,
}

impl<S: Scalar> TwMorphism<S> {
    pub fn new(
        cat: &Category<S>,
        source: TwComplex<S>,
        target: TwComplex<S>,
        degree: i64,
        blocks: Blocks<S>,
    ) -> Result<Self> {
        let blocks: Blocks<S> = blocks.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        for (&(i, j), v) in &blocks {
            if i >= source.len() || j >= target.len() {
                return Err(Error::ShapeMismatch(format!(
                    "block ({i}, {j}) outside the carriers"
                )));
            }
            check_block(cat, source.carrier[i], target.carrier[j], v, degree)?;
        }
        Ok(TwMorphism {
            source,
            target,
            degree,
            blocks,
        })
    }

    pub fn zero(source: TwComplex<S>, target: TwComplex<S>, degree: i64) -> Self {
        TwMorphism {
            source,
            target,
            degree,
            blocks: Blocks::new(),
        }
    }

    pub fn blocks(&self) -> &Blocks<S> {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn scaled(&self, c: &S) -> Self {
        let blocks = self
            .blocks
            .iter()
            .map(|(k, v)| (*k, v.scaled(c)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        TwMorphism {
            blocks,
            ..self.clone()
        }
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        if self.source != other.source
            || self.target != other.target
            || self.degree != other.degree && !other.is_zero()
        {
            return Err(Error::ShapeMismatch(
                "sum of morphisms with different shapes".into(),
            ));
        }
        let mut blocks = self.blocks.clone();
        for (k, v) in &other.blocks {
            add_block(&mut blocks, *k, v, &S::one());
        }
        Ok(TwMorphism {
            blocks,
            ..self.clone()
        })
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.plus(&other.scaled(&S::one().negated()))
    }
}

/// Sum over all words `δ…δ f_d δ…δ … f_1 δ…δ` of the enlarged `μ`, with
/// `complexes[i]` the target of `morphs[i − 1]`. With no morphisms this is
/// the Maurer–Cartan sum of `complexes[0]`.
fn insertion_sum<S: Scalar>(
    cat: &Category<S>,
    complexes: &[&TwComplex<S>],
    morphs: &[&Blocks<S>],
) -> Blocks<S> {
    let d = morphs.len();
    let deltas: Vec<_> = complexes.iter().map(|c| c.by_source()).collect();
    let mut morph_index: Vec<Vec<Vec<(usize, &SparseVec<S>)>>> = Vec::with_capacity(d);
    for (i, m) in morphs.iter().enumerate() {
        let mut idx = vec![Vec::new(); complexes[i].len()];
        for (&(a, b), v) in m.iter() {
            idx[a].push((b, v));
        }
        morph_index.push(idx);
    }
    let walk = Walk {
        cat,
        complexes,
        deltas: &deltas,
        morphs: &morph_index,
        max: cat.arity_bound(),
    };
    let mut out = Blocks::new();
    let mut args = Vec::new();
    for s0 in 0..complexes[0].len() {
        walk.dfs(0, s0, s0, &mut args, &mut out);
    }
    out
}

struct Walk<'a, S> {
    cat: &'a Category<S>,
    complexes: &'a [&'a TwComplex<S>],
    deltas: &'a [Vec<Vec<(usize, &'a SparseVec<S>)>>],
    morphs: &'a [Vec<Vec<(usize, &'a SparseVec<S>)>>],
    max: usize,
}

impl<'a, S: Scalar> Walk<'a, S> {
    fn dfs(
        &self,
        stage: usize,
        s: usize,
        s0: usize,
        args: &mut Vec<&'a SparseVec<S>>,
        out: &mut Blocks<S>,
    ) {
        let d = self.morphs.len();
        if stage == d && !args.is_empty() {
            let v = apply(self.cat.mu(), args);
            if !v.is_zero() {
                let sign = S::one().signed(self.complexes[0].carrier[s0].shift);
                add_block(out, (s0, s), &v, &sign);
            }
        }
        if args.len() + (d - stage) < self.max {
            for &(t, v) in &self.deltas[stage][s] {
                args.push(v);
                self.dfs(stage, t, s0, args, out);
                args.pop();
            }
        }
        if stage < d {
            for &(t, v) in &self.morphs[stage][s] {
                args.push(v);
                self.dfs(stage + 1, t, s0, args, out);
                args.pop();
            }
        }
    }
}

/// `μ^d` of the twisted category on `f_1, …, f_d` (given in application
/// order: `morphs[0] = f_1`).
pub fn tw_mu<S: Scalar>(cat: &Category<S>, morphs: &[&TwMorphism<S>]) -> Result<TwMorphism<S>> {
    let first = morphs
        .first()
        .ok_or_else(|| Error::ShapeMismatch("μ needs at least one input".into()))?;
    for w in morphs.windows(2) {
        if w[0].target != w[1].source {
            return Err(Error::ShapeMismatch("morphisms are not composable".into()));
        }
    }
    let mut complexes = vec![&first.source];
    complexes.extend(morphs.iter().map(|m| &m.target));
    let blocks: Vec<&Blocks<S>> = morphs.iter().map(|m| &m.blocks).collect();
    let out = insertion_sum(cat, &complexes, &blocks);
    let degree = morphs.iter().map(|m| m.degree).sum::<i64>() + 2 - morphs.len() as i64;
    Ok(TwMorphism {
        source: first.source.clone(),
        target: morphs.last().unwrap().target.clone(),
        degree,
        blocks: out,
    })
}

/// `μ¹` of the twisted category.
pub fn differential<S: Scalar>(cat: &Category<S>, f: &TwMorphism<S>) -> TwMorphism<S> {
    tw_mu(cat, &[f]).expect("one input is composable")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McReport {
    pub valid: bool,
    pub triangular: bool,
    /// First nonzero block `(from, to)` of the Maurer–Cartan sum.
    pub first_failure: Option<(usize, usize)>,
    pub detail: Option<String>,
}

/// Checks triangularity and `Σ_d μ^d(δ, …, δ) = 0`.
pub fn mc_check<S: Scalar>(cat: &Category<S>, t: &TwComplex<S>) -> McReport {
    let triangular = t.delta.keys().all(|(i, j)| i > j);
    if !triangular {
        let first = t.delta.keys().find(|(i, j)| i <= j).copied();
        return McReport {
            valid: false,
            triangular,
            first_failure: first,
            detail: Some("connection is not lower triangular".into()),
        };
    }
    let sum = insertion_sum(cat, &[t], &[]);
    match sum.iter().next() {
        None => McReport {
            valid: true,
            triangular,
            first_failure: None,
            detail: None,
        },
        Some((&(i, j), v)) => McReport {
            valid: false,
            triangular,
            first_failure: Some((i, j)),
            detail: Some(format!(
                "Maurer–Cartan sum has {} in block ({i}, {j})",
                v.iter()
                    .map(|(b, c)| format!("{c}·{}", cat.basis_name(b)))
                    .collect::<Vec<_>>()
                    .join(" + ")
            )),
        },
    }
}
