//! Acceptance suite: one line per criterion, nonzero exit if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use ainfty::category::hom_cohomology;
use ainfty::category::{validate, Category};
use ainfty::corpus;
use ainfty::deform::egl;
use ainfty::deform::{
    deformation_class, first_order_equiv, generic_hom, iso_over_laurent, mc_solve, reparametrize,
    special_fibre, validate_deformation, Deformation, McStatus,
};
use ainfty::exactlin::rational::int;
use ainfty::exactlin::{PivotOrder, Rational as Q, Scalar, SparseVec, TruncSeries};
use ainfty::geomfacts::{e1_dim, e1_total, sh2_bound, BettiTable};
use ainfty::hochschild::{bracket, cup, hh, hh_group, hochschild_diff};
use ainfty::instance::{Base, DocScalar, Document};
use ainfty::multilinear::Cochain;
use ainfty::tw::{
    cone, direct_sum, identity, is_quasi_iso, quasi_iso_witness, shift, tw_hom, tw_subcategory,
    twist, TwComplex, TwMorphism,
};
use common::{
    brute_force_relations, bundled_complexes, deformation, doc, obj, obstruction_oracle, q,
    random_cochain, random_morphism, series, tw_relation, Classes, Q_NAMES, SERIES_NAMES,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    check(t < limit, || {
        format!("{what} took {t:.2?}, limit {limit:?}")
    })
}

// ---------------------------------------------------------------------------
// 1. validator

#[derive(Clone, Copy, Debug)]
enum Mutation {
    DegreeBump { basis: usize, by: i64 },
    SignFlip(usize),
    Drop(usize),
}

fn mutate(a: &Category<Q>, m: Mutation) -> Category<Q> {
    let mut out = Category::new(a.objects().iter().cloned(), a.arity_bound()).unwrap();
    for (i, b) in a.basis().iter().enumerate() {
        let bump = match m {
            Mutation::DegreeBump { basis, by } if basis == i => by,
            _ => 0,
        };
        out.add_basis(b.source, b.target, &b.label, b.degree + bump)
            .unwrap();
    }
    for (i, (inputs, o, c)) in a.mu().entries().enumerate() {
        match m {
            Mutation::SignFlip(j) if j == i => out.add_mu(inputs, o, c.negated()).unwrap(),
            Mutation::Drop(j) if j == i => {}
            _ => out.add_mu(inputs, o, c.clone()).unwrap(),
        }
    }
    out
}

/// Degree rule and relation sums, evaluated without the validator.
fn oracle_invalid(a: &Category<Q>) -> bool {
    let bad_degree = a.mu().entries().any(|(inputs, o, _)| {
        let d = inputs.len() as i64;
        a.degree_of(o) != inputs.iter().map(|b| a.degree_of(*b)).sum::<i64>() + 2 - d
    });
    bad_degree || !brute_force_relations(a).is_empty()
}

/// Sign flips, degree bumps and dropped terms, interleaved.
fn candidates(a: &Category<Q>) -> Vec<Mutation> {
    let n_mu = a.mu().entries().count();
    let mut bumps = Vec::new();
    for by in [1, -1, 2, -2, 3, -3, 4, -4, 5, -5] {
        for b in 0..a.basis().len() {
            bumps.push(Mutation::DegreeBump { basis: b, by });
        }
    }
    let flips: Vec<Mutation> = (0..n_mu).map(Mutation::SignFlip).collect();
    let drops: Vec<Mutation> = (0..n_mu).map(Mutation::Drop).collect();
    let longest = bumps.len().max(n_mu);
    let mut out = Vec::new();
    for i in 0..longest {
        for kind in [&flips, &bumps, &drops] {
            if let Some(m) = kind.get(i) {
                out.push(*m);
            }
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for name in Q_NAMES {
        check(validate(&q(name)).valid, || format!("{name} rejected"))?;
    }
    for name in SERIES_NAMES {
        check(validate(&series(name)).valid, || format!("{name} rejected"))?;
    }
    let mut summary = Vec::new();
    for name in ["pt", "dual0", "sph_2"] {
        let a = q(name);
        let mut caught = 0;
        let mut harmless = 0;
        let mut kinds = [0; 3];
        for m in candidates(&a) {
            if caught == 10 {
                break;
            }
            let b = mutate(&a, m);
            if !oracle_invalid(&b) {
                harmless += 1;
                continue;
            }
            check(!validate(&b).valid, || format!("{name}: {m:?} accepted"))?;
            caught += 1;
            kinds[match m {
                Mutation::SignFlip(_) => 0,
                Mutation::DegreeBump { .. } => 1,
                Mutation::Drop(_) => 2,
            }] += 1;
        }
        check(caught == 10, || {
            format!("{name}: only {caught} invalid mutations")
        })?;
        summary.push(format!(
            "{name} 10/10 (flip {}, bump {}, drop {}; {harmless} valid skipped)",
            kinds[0], kinds[1], kinds[2]
        ));
    }
    within(Duration::from_secs(5), start, "validation")?;
    Ok(format!("{}; {:.2?}", summary.join(", "), start.elapsed()))
}

// ---------------------------------------------------------------------------
// 2. twisted complexes

fn criterion_2() -> Outcome {
    let mut triples = 0;
    for name in Q_NAMES {
        let c = q(name);
        let ts = bundled_complexes(name);
        for t in &ts {
            let k = cone(&c, &identity(&c, t).unwrap()).unwrap();
            let end = tw_hom(&c, &k, &k, PivotOrder::Natural).unwrap();
            check(
                end.is_coboundary(&identity(&c, &k).unwrap()).unwrap(),
                || format!("{name}: [id] of Cone(id) is nonzero"),
            )?;
        }
        for x in &ts {
            for y in &ts {
                let hom = tw_hom(&c, x, y, PivotOrder::Natural).unwrap();
                let mut maps = hom.representatives(0);
                maps.push(TwMorphism::zero(x.clone(), y.clone(), 0));
                for f in maps {
                    let k = cone(&c, &f).unwrap();
                    for t in &ts {
                        let chi = |u: &TwComplex<Q>| {
                            tw_hom(&c, t, u, PivotOrder::Natural)
                                .unwrap()
                                .euler_characteristic()
                        };
                        check(chi(&k) == chi(y) - chi(x), || {
                            format!("{name}: Euler characteristic not additive")
                        })?;
                        triples += 1;
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let sph = q("sph_1");
    let s = obj(&sph, "S");
    let sv = sph.find_basis(0, 0, "s").unwrap();
    let s_map = TwMorphism::new(
        &sph,
        s.clone(),
        shift(&s, 1),
        0,
        [((0, 0), SparseVec::unit(sv))].into(),
    )
    .unwrap();
    let cases = [
        (q("a2"), bundled_complexes("a2")),
        (
            sph.clone(),
            vec![s.clone(), shift(&s, 1), cone(&sph, &s_map).unwrap()],
        ),
    ];
    for k in 0..100 {
        let (c, ts) = &cases[k % 2];
        let d = 1 + k % 3;
        let chain: Vec<&TwComplex<Q>> = (0..=d).map(|_| &ts[rng.gen_range(0..ts.len())]).collect();
        let fs: Vec<TwMorphism<Q>> = (0..d)
            .map(|i| random_morphism(c, chain[i], chain[i + 1], rng.gen_range(-1..=1), &mut rng))
            .collect();
        check(tw_relation(c, &fs).is_zero(), || {
            format!("sample {k}: relation fails")
        })?;
    }
    Ok(format!(
        "cones acyclic, {triples} Euler triples, 100 samples"
    ))
}

// ---------------------------------------------------------------------------
// 3. spherical twist

fn criterion_3() -> Outcome {
    let start = Instant::now();
    for n in 1..=3 {
        let c = q(&format!("sph_{n}"));
        let s = obj(&c, "S");
        let natural = twist(&c, &s, &s, PivotOrder::Natural).unwrap();
        let target = shift(&s, 1 - n);
        let w = quasi_iso_witness(&c, &natural.complex, &target, 200, 0).unwrap();
        let witness = w
            .witness
            .ok_or_else(|| format!("sph_{n}: no witness to S[{}]", 1 - n))?;
        check(is_quasi_iso(&c, &witness).unwrap(), || {
            format!("sph_{n}: bad witness")
        })?;
        let reversed = twist(&c, &s, &s, PivotOrder::Reversed).unwrap();
        let w = quasi_iso_witness(&c, &natural.complex, &reversed.complex, 500, 0).unwrap();
        check(w.witness.is_some(), || {
            format!("sph_{n}: pivot orders not connected")
        })?;
    }
    within(Duration::from_secs(10), start, "twists")?;
    Ok(format!(
        "sph_1..3 twist to S[1-n], pivots connected; {:.2?}",
        start.elapsed()
    ))
}

// ---------------------------------------------------------------------------
// 4. Hochschild cohomology

fn criterion_4() -> Outcome {
    let pt = q("pt");
    let dims: Vec<usize> = (0..=3).map(|r| hh(&pt, r, 4).unwrap().dim).collect();
    check(dims == [1, 0, 0, 0], || format!("HH^0..3(pt) = {dims:?}"))?;

    let a = q("dual0");
    let (e, x) = (
        a.find_basis(0, 0, "e").unwrap(),
        a.find_basis(0, 0, "x").unwrap(),
    );
    let phi = Cochain::single(vec![x, x], e, int(1));
    let g = hh_group(&a, 2, 3, PivotOrder::Natural).unwrap();
    check(
        g.is_cocycle(&a, &phi).unwrap() && !g.is_coboundary(&phi).unwrap(),
        || "(x,x) -> e is not a nonzero class".into(),
    )?;

    let mut rng = ChaCha8Rng::seed_from_u64(50);
    for k in 0..50 {
        let name = Q_NAMES[k % Q_NAMES.len()];
        let a = q(name);
        let tau = random_cochain(&a, (k % 4) as i64 - 1, 3, &mut rng);
        check(
            hochschild_diff(&a, &hochschild_diff(&a, &tau, 3), 3).is_zero(),
            || format!("delta^2 != 0 on {name} sample {k}"),
        )?;
        check(
            bracket(&a, a.mu(), &tau, 3) == hochschild_diff(&a, &tau, 3),
            || format!("[mu, tau] != delta tau on {name} sample {k}"),
        )?;
    }

    const L: usize = 3;
    const W: usize = L + 2;
    let mut checked = 0;
    for name in Q_NAMES {
        let a = q(name);
        let cl = Classes::new(&a, -2..=4, L);
        let all = cl.closed(&a, W + 2);
        for (r1, c1) in &all {
            for (r2, c2) in &all {
                for (r3, c3) in &all {
                    let assoc = cup(&a, &cup(&a, c1, c2, W), c3, W).minus(&cup(
                        &a,
                        c1,
                        &cup(&a, c2, c3, W),
                        W,
                    ));
                    if let Some(zero) = cl.vanishes(&a, r1 + r2 + r3, &assoc) {
                        check(zero, || {
                            format!("{name}: cup not associative ({r1},{r2},{r3})")
                        })?;
                        checked += 1;
                    }
                    let left = bracket(&a, c1, &cup(&a, c2, c3, W), W);
                    let mut right = cup(&a, &bracket(&a, c1, c2, W), c3, W);
                    right.add_scaled(
                        &cup(&a, c2, &bracket(&a, c1, c3, W), W),
                        &int(1).signed((r1 - 1) * r2),
                    );
                    if let Some(zero) = cl.vanishes(&a, r1 + r2 + r3 - 1, &left.minus(&right)) {
                        check(zero, || format!("{name}: Leibniz fails ({r1},{r2},{r3})"))?;
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!(
        "HH(pt) = [1,0,0,0], phi nonzero, 50 cochains, {checked} class identities"
    ))
}

// ---------------------------------------------------------------------------
// 5. deformations

fn t_series(terms: &[(u32, i64)]) -> TruncSeries {
    TruncSeries::new(8, terms.iter().map(|(k, c)| (*k, int(*c)))).unwrap()
}

fn criterion_5() -> Outcome {
    for name in ["dual_t", "curved"] {
        check(validate_deformation(&deformation(name)).valid, || {
            format!("{name} rejected")
        })?;
    }
    let curved = deformation("curved");
    let c = curved.category.find_basis(0, 0, "c").unwrap();
    let mut cat = curved.category.clone();
    cat.add_mu(&[], c, t_series(&[(0, 1)])).unwrap();
    check(
        !validate_deformation(&Deformation::new(cat, 8).unwrap()).valid,
        || "order-0 curvature accepted".into(),
    )?;

    let r = mc_solve(&curved, 0).unwrap();
    let expect = McStatus::Obstructed {
        order: 1,
        class: vec![int(1)],
    };
    check(r.status == expect, || format!("curved: {:?}", r.status))?;

    let e = deformation("mc_solvable");
    let r = mc_solve(&e, 0).unwrap();
    check(r.status == McStatus::Solved, || {
        format!("mc_solvable: {:?}", r.status)
    })?;
    check(
        obstruction_oracle(&e.category, 0, &r.alpha).is_zero(),
        || "solver output does not satisfy the equation mod t^8".into(),
    )?;

    check(special_fibre(&deformation("dual_t")) == q("dual0"), || {
        "special fibre of dual_t differs from dual0".into()
    })?;
    Ok("dual_t, curved valid; curved obstructed at order 1 [1]; solution re-verified".into())
}

// ---------------------------------------------------------------------------
// 6. generic vs special fibre

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let e = deformation("rank_jump");
    let flat: Vec<_> = e
        .connections(&doc("rank_jump"))
        .unwrap()
        .into_iter()
        .filter(|c| obstruction_oracle(&e.category, c.object, &c.alpha).is_zero())
        .collect();
    let gl = egl(&e, &flat).unwrap();
    let (x, y, z, w) = (0, 1, 2, 3);
    let special = special_fibre(&gl);
    let sp = hom_cohomology(&special, z, w, PivotOrder::Natural)
        .unwrap()
        .total_dim();
    let gen: usize = generic_hom(&gl, z, w).unwrap().dims.values().sum();
    check(sp > 0 && gen == 0, || {
        format!("special {sp}, generic {gen}")
    })?;
    let found = iso_over_laurent(&gl, x, y, 100, (-1, 0)).unwrap();
    let v = found.witness.map(|w| w.valuation);
    check(v == Some(-1), || format!("witness valuation {v:?}"))?;
    let none = iso_over_laurent(&gl, x, y, 100, (0, 0)).unwrap();
    check(none.witness.is_none(), || {
        "t^0 search found a witness".into()
    })?;
    within(Duration::from_secs(5), start, "fibre comparison")?;
    Ok(format!(
        "special dim {sp}, generic 0, valuation -1, none at t^0; {:.2?}",
        start.elapsed()
    ))
}

// ---------------------------------------------------------------------------
// 7. deformation classes

fn criterion_7() -> Outcome {
    let e = deformation("dual_t");
    let base = deformation_class(&e, 3).unwrap();
    check(!base.is_zero(), || "class of dual_t is zero".into())?;
    let e2 = reparametrize(&e, &t_series(&[(1, 2)])).unwrap();
    let doubled = deformation_class(&e2, 3).unwrap();
    let twice: Vec<Q> = base.coords.iter().map(|c| c * int(2)).collect();
    check(doubled.coords == twice, || {
        format!("{:?} vs {twice:?}", doubled.coords)
    })?;
    let esq = reparametrize(&e, &t_series(&[(2, 1)])).unwrap();
    let squared = deformation_class(&esq, 3).unwrap();
    check(squared.is_zero() && squared.cochain.is_zero(), || {
        "t^2 class has a t^1 part".into()
    })?;

    let trivial = Deformation::trivial(&q("dual0"), 8).unwrap();
    let pairs = [
        ("E/E", &e, &e, true),
        ("E/2t", &e, &e2, false),
        ("E/t^2", &e, &esq, false),
        ("t^2/trivial", &esq, &trivial, true),
        ("2t/2t", &e2, &e2, true),
    ];
    for (label, a, b, expected) in pairs {
        let v = first_order_equiv(a, b, 3).unwrap();
        check(v.equivalent == expected, || {
            format!("{label}: verdict {}", v.equivalent)
        })?;
        let ca = deformation_class(a, 3).unwrap().coords;
        let cb = deformation_class(b, 3).unwrap().coords;
        let diff: Vec<Q> = cb.iter().zip(&ca).map(|(x, y)| x - y).collect();
        check(v.difference == diff, || {
            format!("{label}: difference {:?}", fmt(&v.difference))
        })?;
    }
    Ok(format!(
        "c(E) = {:?}, c(2t) = 2c, c(t^2) = 0, 5 verdicts",
        fmt(&base.coords)
    ))
}

fn fmt(v: &[Q]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

// ---------------------------------------------------------------------------
// 8. HH invariance

fn criterion_8() -> Outcome {
    let mut report = Vec::new();
    let mut mismatches = Vec::new();
    for name in Q_NAMES {
        let a = q(name);
        let mut named: Vec<(String, TwComplex<Q>)> = a
            .objects()
            .iter()
            .enumerate()
            .map(|(i, o)| (o.clone(), TwComplex::object(i)))
            .collect();
        let x = TwComplex::object(0);
        named.push(("XX".into(), direct_sum(&x, &x)));
        let sub = tw_subcategory(&a, &named).unwrap();
        check(validate(&sub).valid, || {
            format!("{name}: twisted subcategory is not A-infinity")
        })?;
        let mut row = Vec::new();
        for r in 0..=2 {
            let small = hh_group(&a, r, 3, PivotOrder::Natural).unwrap().dim();
            let big = hh_group(&sub, r, 3, PivotOrder::Natural).unwrap().dim();
            row.push(format!("{small}/{big}"));
            if small != big {
                mismatches.push(format!("{name} r={r}: {small} vs {big}"));
            }
        }
        report.push(format!("{name} {}", row.join(" ")));
    }
    if mismatches.is_empty() {
        Ok(report.join(", "))
    } else {
        Err(format!(
            "{} (A/Tw dims: {})",
            mismatches.join("; "),
            report.join(", ")
        ))
    }
}

// ---------------------------------------------------------------------------
// 9. E1 page

fn table(pairs: &[(i64, u64)]) -> BettiTable {
    pairs.iter().copied().collect()
}

fn criterion_9() -> Outcome {
    let m = table(&[(0, 1), (1, 0), (2, 3), (3, 2), (4, 1)]);
    let bd = table(&[(0, 1), (1, 2), (2, 4), (3, 5), (5, 7)]);
    // (p, q, dim), read off the two-case formula by hand
    let cases: [(i64, i64, u64); 20] = [
        (0, 0, 1),
        (0, 2, 3),
        (0, 3, 2),
        (0, 4, 1),
        (0, 5, 0),
        (0, -1, 0),
        (-1, 3, 1),
        (-1, 4, 2),
        (-1, 5, 4),
        (-1, 8, 7),
        (-1, 2, 0),
        (-2, 6, 1),
        (-2, 9, 5),
        (-2, 11, 7),
        (1, 0, 0),
        (1, 1, 0),
        (1, 2, 0),
        (2, -4, 0),
        (3, 5, 0),
        (5, -13, 0),
    ];
    for (p, q, want) in cases {
        let got = e1_dim(&m, &bd, p, q);
        check(got == want, || {
            format!("E1^({p},{q}) = {got}, expected {want}")
        })?;
    }
    let bound = sh2_bound(3, 1);
    check(bound == 4, || format!("sh2_bound(3, 1) = {bound}"))?;
    let cells = e1_dim(&m, &bd, 0, 2) + e1_dim(&m, &bd, -1, 3);
    check(cells == bound, || format!("cells (0,2) + (-1,3) = {cells}"))?;
    // b_2(M) plus the even boundary degrees below 2
    let total = e1_total(&m, &bd, 2);
    check(total == bound, || format!("degree-2 total {total}"))?;
    for (b2, b0) in [(0, 0), (1, 0), (0, 1), (7, 2)] {
        check(sh2_bound(b2, b0) == b2 + b0, || {
            format!("sh2_bound({b2}, {b0})")
        })?;
    }
    Ok("20 cells, sh2 bound 4 = E1^(0,2) + E1^(-1,3)".into())
}

// ---------------------------------------------------------------------------
// 10. infrastructure

fn reports_once() -> Vec<String> {
    let mut out = Vec::new();
    for name in Q_NAMES {
        let a = q(name);
        out.push(serde_json::to_string(&validate(&a)).unwrap());
        out.push(serde_json::to_string(&hh(&a, 2, 2).unwrap()).unwrap());
    }
    let a2 = q("a2");
    let ts = bundled_complexes("a2");
    for seed in [0, 9] {
        let s = quasi_iso_witness(&a2, &ts[2], &ts[2], 1000, seed).unwrap();
        out.push(format!("{:?} {:?}", s.witness, s.candidates_tried));
    }
    for name in SERIES_NAMES {
        out.push(format!("{:?}", mc_solve(&deformation(name), 0).unwrap()));
    }
    out
}

/// Category -> document -> text -> category gives the same structure.
fn through_category<S: DocScalar + PartialEq>(d: &Document, trunc: Option<u32>) -> bool {
    let cat = d.category::<S>().unwrap();
    let text = Document::from_category(&cat, trunc)
        .to_canonical_string()
        .unwrap();
    Document::parse(&text).unwrap().category::<S>().unwrap() == cat
}

fn criterion_10(suite_start: Instant) -> Outcome {
    for name in corpus::NAMES {
        let text = corpus::get(name).unwrap();
        let canon = Document::parse(text)
            .unwrap()
            .to_canonical_string()
            .unwrap();
        check(canon == text, || {
            format!("{name}: canonical form differs from the file")
        })?;
        let d = Document::parse(&canon).unwrap();
        let same = match d.base().unwrap() {
            Base::Rational => through_category::<Q>(&d, None),
            Base::Series { trunc } => through_category::<TruncSeries>(&d, Some(trunc)),
        };
        check(same, || {
            format!("{name}: structure changes through a category")
        })?;
    }
    check(reports_once() == reports_once(), || {
        "reports differ between runs".into()
    })?;
    // the rest of the suite is timed by the caller of `cargo test`
    within(Duration::from_secs(120), suite_start, "acceptance run")?;
    Ok(format!(
        "{} instances round-trip, reports deterministic, acceptance run {:.1?}",
        corpus::NAMES.len(),
        suite_start.elapsed()
    ))
}

fn main() {
    let start = Instant::now();
    let criteria: [(u32, &str, Box<dyn Fn() -> Outcome>); 10] = [
        (1, "validator", Box::new(criterion_1)),
        (2, "twisted complexes", Box::new(criterion_2)),
        (3, "spherical twist", Box::new(criterion_3)),
        (4, "Hochschild", Box::new(criterion_4)),
        (5, "deformation pipeline", Box::new(criterion_5)),
        (6, "generic vs special fibre", Box::new(criterion_6)),
        (7, "deformation classes", Box::new(criterion_7)),
        (8, "HH invariance", Box::new(criterion_8)),
        (9, "E1 page", Box::new(criterion_9)),
        (10, "infrastructure", Box::new(move || criterion_10(start))),
    ];
    let mut failed = Vec::new();
    for (n, title, run) in criteria {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!(
            "criterion {n:>2} {tag} [{title}, {:.2?}] {detail}",
            t.elapsed()
        );
        if outcome.is_err() {
            failed.push(n);
        }
    }
    println!(
        "acceptance: {} of 10 passed in {:.2?}",
        10 - failed.len(),
        start.elapsed()
    );
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
