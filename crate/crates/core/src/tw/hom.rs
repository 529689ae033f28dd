use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{block_degree, cone, differential, Blocks, TwComplex, TwMorphism};
use crate::category::Category;
use crate::error::{Error, Result};
use crate::exactlin::{Echelon, FieldScalar, GradedComplex, PivotOrder, Scalar, SparseVec};
use crate::multilinear::BasisId;

/// The complex `(hom_Tw(X, Y), μ¹_Tw)` and its cohomology.
pub struct TwHom<S> {
    pub source: TwComplex<S>,
    pub target: TwComplex<S>,
    elements: Vec<(usize, usize, BasisId)>,
    index: HashMap<(usize, usize, BasisId), usize>,
    complex: GradedComplex<S>,
}

fn hom_elements<S: Scalar>(
    cat: &Category<S>,
    x: &TwComplex<S>,
    y: &TwComplex<S>,
) -> Vec<(usize, usize, BasisId)> {
    let mut out = Vec::new();
    for (i, a) in x.carrier().iter().enumerate() {
        for (j, b) in y.carrier().iter().enumerate() {
            out.extend(cat.hom(a.object, b.object).iter().map(|e| (i, j, *e)));
        }
    }
    out
}

fn blocks_of<S: Scalar>(elements: &[(usize, usize, BasisId)], v: &SparseVec<S>) -> Blocks<S> {
    let mut blocks = Blocks::new();
    for (k, c) in v.iter() {
        let (i, j, b) = elements[k];
        super::add_block(&mut blocks, (i, j), &SparseVec::unit(b), c);
    }
    blocks
}

pub fn tw_hom<S: FieldScalar>(
    cat: &Category<S>,
    x: &TwComplex<S>,
    y: &TwComplex<S>,
    order: PivotOrder,
) -> Result<TwHom<S>> {
    let elements = hom_elements(cat, x, y);
    let index: HashMap<_, _> = elements.iter().enumerate().map(|(k, e)| (*e, k)).collect();
    let degrees = elements
        .iter()
        .map(|&(i, j, b)| block_degree(cat, x.carrier()[i], y.carrier()[j], b))
        .collect();
    let complex = GradedComplex::build(
        degrees,
        |k| {
            let (i, j, b) = elements[k];
            let f = TwMorphism {
                source: x.clone(),
                target: y.clone(),
                degree: block_degree(cat, x.carrier()[i], y.carrier()[j], b),
                blocks: [((i, j), SparseVec::unit(b))].into(),
            };
            Ok(to_vector(&index, &differential(cat, &f)))
        },
        order,
    )?;
    Ok(TwHom {
        source: x.clone(),
        target: y.clone(),
        elements,
        index,
        complex,
    })
}

fn to_vector<S: Scalar>(
    index: &HashMap<(usize, usize, BasisId), usize>,
    f: &TwMorphism<S>,
) -> SparseVec<S> {
    let mut v = SparseVec::new();
    for (&(i, j), blk) in f.blocks() {
        for (b, c) in blk.iter() {
            v.add_at(index[&(i, j, b)], c);
        }
    }
    v
}

impl<S: FieldScalar> TwHom<S> {
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

    pub fn to_vector(&self, f: &TwMorphism<S>) -> SparseVec<S> {
        to_vector(&self.index, f)
    }

    pub fn to_morphism(&self, v: &SparseVec<S>, degree: i64) -> TwMorphism<S> {
        TwMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            degree,
            blocks: blocks_of(&self.elements, v),
        }
    }

    pub fn representatives(&self, k: i64) -> Vec<TwMorphism<S>> {
        self.complex
            .representatives(k)
            .iter()
            .map(|v| self.to_morphism(v, k))
            .collect()
    }

    pub fn class_of(&self, f: &TwMorphism<S>) -> Result<Vec<S>> {
        self.complex.class_of(&self.to_vector(f), f.degree)
    }

    pub fn is_coboundary(&self, f: &TwMorphism<S>) -> Result<bool> {
        self.complex.is_coboundary(&self.to_vector(f), f.degree)
    }
}

/// `id_X`: the unit of each summand `X_i[σ_i]`, namely `(−1)^{σ_i} e_{X_i}`.
/// Needs strict units in the underlying category.
pub fn identity<S: Scalar>(cat: &Category<S>, x: &TwComplex<S>) -> Result<TwMorphism<S>> {
    let mut blocks = Blocks::new();
    for (i, s) in x.carrier().iter().enumerate() {
        let e = cat
            .strict_unit(s.object)
            .ok_or_else(|| Error::NoIdentity(cat.objects()[s.object].clone()))?;
        blocks.insert(
            (i, i),
            SparseVec::from_entries([(e, S::one().signed(s.shift))]),
        );
    }
    Ok(TwMorphism {
        source: x.clone(),
        target: x.clone(),
        degree: 0,
        blocks,
    })
}

/// Whether a closed degree-0 morphism is a quasi-isomorphism: its cone
/// has `[id] = 0` in `H⁰(end(Cone))`.
pub fn is_quasi_iso<S: FieldScalar>(cat: &Category<S>, c: &TwMorphism<S>) -> Result<bool> {
    let k = cone(cat, c)?;
    let id = identity(cat, &k)?;
    let elements = hom_elements(cat, &k, &k);
    let deg =
        |&(i, j, b): &(usize, usize, BasisId)| block_degree(cat, k.carrier()[i], k.carrier()[j], b);
    let zero_index: HashMap<_, _> = elements
        .iter()
        .filter(|e| deg(e) == 0)
        .enumerate()
        .map(|(n, e)| (*e, n))
        .collect();
    let mut span = Echelon::new(zero_index.len(), PivotOrder::Natural);
    for &(i, j, b) in elements.iter().filter(|e| deg(e) == -1) {
        let h = TwMorphism {
            source: k.clone(),
            target: k.clone(),
            degree: -1,
            blocks: [((i, j), SparseVec::unit(b))].into(),
        };
        span.insert(&to_vector(&zero_index, &differential(cat, &h)), None)?;
    }
    span.contains(&to_vector(&zero_index, &id))
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuasiIsoSearch<S> {
    pub witness: Option<TwMorphism<S>>,
    pub candidates_tried: usize,
    /// Dimension of `H⁰(hom(X, Y))`.
    pub h0_dim: usize,
}

/// Tests candidates in order, stopping at the first quasi-isomorphism or
/// after `budget` tests.
pub fn first_quasi_iso<S: FieldScalar>(
    cat: &Category<S>,
    candidates: impl IntoIterator<Item = TwMorphism<S>>,
    budget: usize,
) -> Result<(Option<TwMorphism<S>>, usize)> {
    let mut tried = 0;
    for c in candidates {
        if tried >= budget {
            break;
        }
        tried += 1;
        if is_quasi_iso(cat, &c)? {
            return Ok((Some(c), tried));
        }
    }
    Ok((None, tried))
}

/// Searches closed degree-0 morphisms `X → Y`: the identity when `X = Y`,
/// the chosen basis of `H⁰`, combinations with coefficients in
/// `{−1, 0, 1}`, then seeded random integer combinations.
pub fn quasi_iso_witness<S: FieldScalar>(
    cat: &Category<S>,
    x: &TwComplex<S>,
    y: &TwComplex<S>,
    budget: usize,
    seed: u64,
) -> Result<QuasiIsoSearch<S>> {
    let hom = tw_hom(cat, x, y, PivotOrder::Natural)?;
    let reps = hom.representatives(0);
    let mut candidates: Vec<TwMorphism<S>> = Vec::new();
    if x == y {
        candidates.push(identity(cat, x)?);
    }
    if reps.is_empty() {
        candidates.push(TwMorphism::zero(x.clone(), y.clone(), 0));
    }
    candidates.extend(reps.iter().cloned());
    let combos =
        SmallCombos::new(reps.len(), budget.saturating_sub(candidates.len())).map(|coeffs| {
            combine(
                &hom,
                &reps,
                &coeffs.iter().map(|c| S::from_int(*c)).collect::<Vec<_>>(),
            )
        });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = reps.len();
    let random = std::iter::from_fn(move || {
        (n > 0).then(|| (0..n).map(|_| rng.gen_range(-3i64..=3)).collect::<Vec<_>>())
    })
    .map(|coeffs| {
        combine(
            &hom,
            &reps,
            &coeffs.iter().map(|c| S::from_int(*c)).collect::<Vec<_>>(),
        )
    });
    let all = candidates.into_iter().chain(combos).chain(random);
    let (witness, tried) = first_quasi_iso(cat, all, budget)?;
    Ok(QuasiIsoSearch {
        witness,
        candidates_tried: tried,
        h0_dim: n,
    })
}

fn combine<S: FieldScalar>(hom: &TwHom<S>, reps: &[TwMorphism<S>], coeffs: &[S]) -> TwMorphism<S> {
    let mut v = SparseVec::new();
    for (r, c) in reps.iter().zip(coeffs) {
        v.add_scaled(&hom.to_vector(r), c);
    }
    hom.to_morphism(&v, 0)
}

/// Coefficient vectors in `{−1, 0, 1}^n` with at least two nonzero entries,
/// in a fixed order, at most `limit` of them.
struct SmallCombos {
    current: Vec<i64>,
    left: usize,
    done: bool,
}

impl SmallCombos {
    fn new(n: usize, limit: usize) -> Self {
        SmallCombos {
            current: vec![0; n],
            left: limit,
            done: n < 2,
        }
    }
}

impl Iterator for SmallCombos {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        while !self.done && self.left > 0 {
            // odometer over digits 0, 1, −1
            let mut k = 0;
            loop {
                if k == self.current.len() {
                    self.done = true;
                    return None;
                }
                self.current[k] = match self.current[k] {
                    0 => 1,
                    1 => -1,
                    _ => 0,
                };
                if self.current[k] != 0 {
                    break;
                }
                k += 1;
            }
            if self.current.iter().filter(|c| **c != 0).count() >= 2 {
                self.left -= 1;
                return Some(self.current.clone());
            }
        }
        None
    }
}
