#![allow(dead_code)]

use ainfty::category::Category;
use ainfty::corpus;
use ainfty::exactlin::rational::int;
use ainfty::exactlin::{PivotOrder, Rational as Q};
use ainfty::exactlin::{Rational, Scalar, SparseVec, TruncSeries};
use ainfty::hochschild::{cc_basis, hh_group, hochschild_diff, HochschildGroup};
use ainfty::instance::Document;
use ainfty::multilinear::{apply, Cochain};
use ainfty::tw::{block_degree, tw_mu, Blocks, TwComplex, TwMorphism};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn doc(name: &str) -> Document {
    corpus::document(name).unwrap_or_else(|| panic!("no bundled instance {name}"))
}

pub fn q(name: &str) -> Category<Rational> {
    doc(name).category().unwrap()
}

pub fn series(name: &str) -> Category<TruncSeries> {
    doc(name).category().unwrap()
}

pub const Q_NAMES: [&str; 6] = ["pt", "dual0", "sph_1", "sph_2", "sph_3", "a2"];

/// Nonzero A∞ relation sums, found by evaluating every term on every
/// composable basis tuple (inputs in application order).
pub fn brute_force_relations<S: Scalar>(cat: &Category<S>) -> Vec<(Vec<usize>, SparseVec<S>)> {
    let curvature = cat.mu().get(&[]).cloned().unwrap_or_default();
    let max = 2 * cat.arity_bound() - 1;
    let mut tuples: Vec<Vec<usize>> = Vec::new();
    if cat.is_curved() {
        tuples.push(Vec::new());
    }
    for d in 1..=max {
        tuples.extend(cat.composable_tuples(d));
    }
    let mut out = Vec::new();
    for tuple in tuples {
        let d = tuple.len();
        let units: Vec<SparseVec<S>> = tuple.iter().map(|b| SparseVec::unit(*b)).collect();
        let mut total = SparseVec::new();
        for m in 0..=d {
            for n in 0..=d - m {
                if m == 0 && curvature.is_zero() {
                    continue;
                }
                let inner = if m == 0 {
                    curvature.clone()
                } else {
                    let args: Vec<&SparseVec<S>> = units[n..n + m].iter().collect();
                    cat.mu_apply(&args)
                };
                if inner.is_zero() {
                    continue;
                }
                let mut args: Vec<&SparseVec<S>> = units[..n].iter().collect();
                args.push(&inner);
                args.extend(units[n + m..].iter());
                let sign: i64 = tuple[..n].iter().map(|b| cat.degree_of(*b) - 1).sum();
                total.add_scaled(&cat.mu_apply(&args), &S::one().signed(sign));
            }
        }
        if !total.is_zero() {
            out.push((tuple, total));
        }
    }
    out
}

/// `Σ ± outer(…, inner(…), …)` evaluated on one basis tuple (application
/// order), with sign `(−1)^{p·✠}`, `p` the parity of `inner` and `✠` the
/// reduced degrees of the inputs before it.
pub fn brute_insert_on<S: Scalar>(
    cat: &Category<S>,
    outer: &Cochain<S>,
    inner: &Cochain<S>,
    inner_parity: i64,
    tuple: &[usize],
) -> SparseVec<S> {
    let units: Vec<SparseVec<S>> = tuple.iter().map(|b| SparseVec::unit(*b)).collect();
    let mut total = SparseVec::new();
    for n in 0..=tuple.len() {
        for m in 0..=tuple.len() - n {
            let args: Vec<&SparseVec<S>> = units[n..n + m].iter().collect();
            let mid = apply(inner, &args);
            if mid.is_zero() {
                continue;
            }
            let mut outer_args: Vec<&SparseVec<S>> = units[..n].iter().collect();
            outer_args.push(&mid);
            outer_args.extend(units[n + m..].iter());
            let sign: i64 = tuple[..n].iter().map(|b| cat.degree_of(*b) - 1).sum();
            total.add_scaled(
                &apply(outer, &outer_args),
                &S::one().signed(sign * inner_parity),
            );
        }
    }
    total
}

pub fn deformation(name: &str) -> ainfty::deform::Deformation {
    ainfty::deform::Deformation::from_document(&doc(name)).unwrap()
}

pub const SERIES_NAMES: [&str; 4] = ["dual_t", "curved", "rank_jump", "mc_solvable"];

/// `Σ_d μ^d(α, …, α)` on `hom(x, x)`, read straight off the structure
/// constants: each entry whose inputs all lie in the support of `α`
/// contributes its coefficient times the product of the `α` coefficients.
pub fn obstruction_oracle(
    cat: &Category<TruncSeries>,
    x: usize,
    alpha: &SparseVec<TruncSeries>,
) -> SparseVec<TruncSeries> {
    let mut out = SparseVec::new();
    for (inputs, o, c) in cat.mu().entries() {
        if inputs.is_empty() {
            if cat.basis_element(o).source == x {
                out.add_at(o, c);
            }
            continue;
        }
        let mut coeff = c.clone();
        for b in inputs {
            match alpha.get(*b) {
                Some(a) => coeff = coeff.times(a),
                None => coeff = TruncSeries::zero(),
            }
        }
        out.add_at(o, &coeff);
    }
    out
}

pub fn obj(c: &Category<Q>, name: &str) -> TwComplex<Q> {
    TwComplex::object(c.object_id(name).unwrap())
}

/// Objects of the instance plus its named twisted complexes.
pub fn bundled_complexes(name: &str) -> Vec<TwComplex<Q>> {
    let c = q(name);
    let mut out: Vec<TwComplex<Q>> = (0..c.objects().len()).map(TwComplex::object).collect();
    out.extend(doc(name).complexes(&c).unwrap().into_iter().map(|(_, t)| t));
    out
}

pub fn random_morphism(
    c: &Category<Q>,
    x: &TwComplex<Q>,
    y: &TwComplex<Q>,
    degree: i64,
    rng: &mut ChaCha8Rng,
) -> TwMorphism<Q> {
    let mut blocks = Blocks::new();
    for (i, a) in x.carrier().iter().enumerate() {
        for (j, b) in y.carrier().iter().enumerate() {
            let mut v = SparseVec::new();
            for &e in c.hom(a.object, b.object) {
                if block_degree(c, *a, *b, e) == degree {
                    v.add_at(e, &int(rng.gen_range(-2..=2)));
                }
            }
            blocks.insert((i, j), v);
        }
    }
    TwMorphism::new(c, x.clone(), y.clone(), degree, blocks).unwrap()
}

/// `Σ (−1)^{✠_n} μ(f_d, …, μ^m(…), f_n, …, f_1)` with twisted-category
/// degrees; `fs` in application order.
pub fn tw_relation(c: &Category<Q>, fs: &[TwMorphism<Q>]) -> TwMorphism<Q> {
    let d = fs.len();
    let mut total = TwMorphism::zero(
        fs[0].source.clone(),
        fs[d - 1].target.clone(),
        fs.iter().map(|f| f.degree).sum::<i64>() + 3 - d as i64,
    );
    for m in 1..=d {
        for n in 0..=d - m {
            let inner_args: Vec<&TwMorphism<Q>> = fs[n..n + m].iter().collect();
            let inner = tw_mu(c, &inner_args).unwrap();
            let mut args: Vec<&TwMorphism<Q>> = fs[..n].iter().collect();
            args.push(&inner);
            args.extend(fs[n + m..].iter());
            let sign: i64 = fs[..n].iter().map(|f| f.degree - 1).sum();
            let term = tw_mu(c, &args).unwrap().scaled(&int(1).signed(sign));
            total = total.plus(&term).unwrap();
        }
    }
    total
}

pub fn random_cochain(a: &Category<Q>, r: i64, max_len: usize, rng: &mut ChaCha8Rng) -> Cochain<Q> {
    let basis = cc_basis(a, r, max_len);
    let mut c = Cochain::new();
    for (k, o) in basis.entries() {
        if rng.gen_bool(0.5) {
            c.add(k.clone(), *o, &int(rng.gen_range(-3..=3)));
        }
    }
    c
}

pub struct Classes {
    groups: Vec<HochschildGroup<Q>>,
}

impl Classes {
    pub fn new(a: &Category<Q>, degrees: std::ops::RangeInclusive<i64>, max_len: usize) -> Self {
        Classes {
            groups: degrees
                .map(|r| hh_group(a, r, max_len, PivotOrder::Natural).unwrap())
                .collect(),
        }
    }

    pub fn group(&self, r: i64) -> Option<&HochschildGroup<Q>> {
        self.groups.iter().find(|g| g.degree == r)
    }

    pub fn all(&self) -> Vec<(i64, Cochain<Q>)> {
        self.groups
            .iter()
            .flat_map(|g| g.classes().into_iter().map(move |c| (g.degree, c)))
            .collect()
    }

    /// Classes whose representatives are cocycles of the untruncated complex;
    /// the others only close because `δ` lands above the cut.
    pub fn closed(&self, a: &Category<Q>, check_len: usize) -> Vec<(i64, Cochain<Q>)> {
        self.all()
            .into_iter()
            .filter(|(_, c)| hochschild_diff(a, c, check_len).is_zero())
            .collect()
    }

    /// Whether `c`, of degree `r`, is zero in cohomology; `None` outside the
    /// computed range.
    pub fn vanishes(&self, a: &Category<Q>, r: i64, c: &Cochain<Q>) -> Option<bool> {
        let g = self.group(r)?;
        let c = &c.filter_lengths(|s| s <= g.max_len);
        assert!(g.is_cocycle(a, c).unwrap(), "degree {r}");
        Some(g.is_coboundary(c).unwrap())
    }
}
