mod common;

use ainfty::category::Category;
use ainfty::exactlin::rational::int;
use ainfty::exactlin::{PivotOrder, Rational, Scalar};
use ainfty::hochschild::{
    bracket, cc_basis, cup, hh, hh_group, hochschild_diff, truncation_is_exact, unit_cochain,
};
use ainfty::multilinear::Cochain;
use ainfty::tw::{direct_sum, tw_subcategory, TwComplex};
use common::{brute_insert_on, q, random_cochain, Classes, Q_NAMES};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Q = Rational;

/// Every tuple of length at most `max_len`, the empty one included.
fn tuples(a: &Category<Q>, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for s in 1..=max_len {
        out.extend(a.composable_tuples(s));
    }
    out
}

#[test]
fn basis_of_the_point() {
    let pt = q("pt");
    let b = cc_basis(&pt, 0, 3);
    assert_eq!(b.entries(), &[(vec![], 0)]);
    for s in 1..=3 {
        assert_eq!(cc_basis(&pt, s, 3).entries(), &[(vec![0; s as usize], 0)]);
    }
}

#[test]
fn basis_of_dual_numbers() {
    let a = q("dual0");
    let (e, x) = (
        a.find_basis(0, 0, "e").unwrap(),
        a.find_basis(0, 0, "x").unwrap(),
    );
    let b = cc_basis(&a, 2, 2);
    assert!(b.entries().contains(&(vec![x, x], e)));
    assert_eq!(b.len(), 8);
    for r in 3..6 {
        assert!(cc_basis(&a, r, 2).is_empty());
    }
}

#[test]
fn differential_matches_term_by_term_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for name in Q_NAMES {
        let a = q(name);
        for r in -1..=3 {
            let tau = random_cochain(&a, r, 2, &mut rng);
            let d = hochschild_diff(&a, &tau, 3);
            let mu = a.mu().clone();
            for t in tuples(&a, 3) {
                let mut expect = brute_insert_on(&a, &mu, &tau, r - 1, &t);
                expect.add_scaled(&brute_insert_on(&a, &tau, &mu, 1, &t), &int(1).signed(r));
                assert_eq!(
                    d.get(&t).cloned().unwrap_or_default(),
                    expect,
                    "{name} r={r} {t:?}"
                );
            }
        }
    }
}

#[test]
fn differential_squares_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    let a = q("dual0");
    for k in 0..50 {
        let r = k % 4;
        let tau = random_cochain(&a, r, 3, &mut rng);
        assert!(
            hochschild_diff(&a, &hochschild_diff(&a, &tau, 3), 3).is_zero(),
            "sample {k}"
        );
    }
    for name in Q_NAMES {
        let a = q(name);
        for r in -2..=3 {
            let tau = random_cochain(&a, r, 3, &mut rng);
            assert!(
                hochschild_diff(&a, &hochschild_diff(&a, &tau, 3), 3).is_zero(),
                "{name} r={r}"
            );
        }
    }
}

#[test]
fn bracket_with_mu_is_the_differential() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for name in Q_NAMES {
        let a = q(name);
        for r in -1..=3 {
            let tau = random_cochain(&a, r, 3, &mut rng);
            assert_eq!(bracket(&a, a.mu(), &tau, 3), hochschild_diff(&a, &tau, 3));
        }
    }
}

#[test]
fn point_unit_and_identity() {
    let pt = q("pt");
    let one = unit_cochain(&pt).unwrap();
    assert!(hochschild_diff(&pt, &one, 4).is_zero());
    // a ↦ a is not a derivation of μ²: δ(id) = μ²
    let id = Cochain::single(vec![0], 0, int(1));
    assert_eq!(hochschild_diff(&pt, &id, 4), pt.mu().clone());
}

#[test]
fn hochschild_cohomology_of_the_point() {
    let pt = q("pt");
    let h0 = hh(&pt, 0, 4).unwrap();
    assert_eq!(h0.dim, 1);
    assert!(h0.stable && h0.exact);
    for l in 1..=4 {
        assert_eq!(hh(&pt, 0, l).unwrap().dim, 1);
    }
    for r in 1..=3 {
        let h = hh(&pt, r, 4).unwrap();
        assert_eq!(h.dim, 0, "r={r}");
        assert!(h.exact);
    }
}

fn phi(a: &Category<Q>) -> Cochain<Q> {
    let (e, x) = (
        a.find_basis(0, 0, "e").unwrap(),
        a.find_basis(0, 0, "x").unwrap(),
    );
    Cochain::single(vec![x, x], e, int(1))
}

#[test]
fn dual_numbers_deformation_class() {
    let a = q("dual0");
    let g = hh_group(&a, 2, 3, PivotOrder::Natural).unwrap();
    let p = phi(&a);
    assert!(g.is_cocycle(&a, &p).unwrap());
    assert!(!g.is_coboundary(&p).unwrap());
    assert!(g.dim() >= 1);
    assert!(g.primitive(&p).unwrap().is_none());
    // a coboundary has a primitive that maps back onto it
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let b = random_cochain(&a, 1, 3, &mut rng);
    let db = hochschild_diff(&a, &b, 3);
    let p2 = g.primitive(&db).unwrap().unwrap();
    assert_eq!(hochschild_diff(&a, &p2, 3), db);
}

#[test]
fn degree_zero_algebras_vanish_above_the_length() {
    for name in ["pt", "dual0", "a2"] {
        let a = q(name);
        for l in 0..=3 {
            for r in (l as i64 + 1)..=(l as i64 + 3) {
                assert!(cc_basis(&a, r, l).is_empty(), "{name}");
            }
        }
    }
    assert!(truncation_is_exact(&q("dual0"), 2, 3));
    assert!(!truncation_is_exact(&q("sph_1"), 0, 3));
}

#[test]
fn bracket_is_graded_antisymmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let a = q("dual0");
    for _ in 0..20 {
        let (rp, rq) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        let p = random_cochain(&a, rp, 2, &mut rng);
        let s = random_cochain(&a, rq, 2, &mut rng);
        let pq = bracket(&a, &p, &s, 4);
        let qp = bracket(&a, &s, &p, 4);
        assert_eq!(pq, qp.scaled(&int(-1).signed((rp - 1) * (rq - 1))));
    }
}

const L: usize = 3;
/// Working length for intermediate products.
const W: usize = L + 2;

#[test]
fn unit_class_acts_as_identity() {
    for name in Q_NAMES {
        let a = q(name);
        let cl = Classes::new(&a, -1..=3, L);
        let one = unit_cochain(&a).unwrap();
        assert!(!cl.vanishes(&a, 0, &one).unwrap(), "{name}");
        for (r, c) in cl.all() {
            for product in [cup(&a, &one, &c, L), cup(&a, &c, &one, L)] {
                assert_eq!(
                    cl.vanishes(&a, r, &product.minus(&c)),
                    Some(true),
                    "{name} r={r}"
                );
            }
        }
    }
}

#[test]
fn cup_is_associative_on_classes() {
    for name in Q_NAMES {
        let a = q(name);
        let cl = Classes::new(&a, -2..=4, L);
        let all = cl.closed(&a, W + 2);
        for (r1, c1) in &all {
            for (r2, c2) in &all {
                for (r3, c3) in &all {
                    let left = cup(&a, &cup(&a, c1, c2, W), c3, W);
                    let right = cup(&a, c1, &cup(&a, c2, c3, W), W);
                    if let Some(zero) = cl.vanishes(&a, r1 + r2 + r3, &left.minus(&right)) {
                        assert!(zero, "{name}: {r1} {r2} {r3}");
                    }
                }
            }
        }
    }
}

#[test]
fn gerstenhaber_leibniz_on_classes() {
    for name in Q_NAMES {
        let a = q(name);
        let cl = Classes::new(&a, -2..=4, L);
        let all = cl.closed(&a, W + 2);
        for (r1, c1) in &all {
            for (r2, c2) in &all {
                for (r3, c3) in &all {
                    let left = bracket(&a, c1, &cup(&a, c2, c3, W), W);
                    let mut right = cup(&a, &bracket(&a, c1, c2, W), c3, W);
                    right.add_scaled(
                        &cup(&a, c2, &bracket(&a, c1, c3, W), W),
                        &int(1).signed((r1 - 1) * r2),
                    );
                    if let Some(zero) = cl.vanishes(&a, r1 + r2 + r3 - 1, &left.minus(&right)) {
                        assert!(zero, "{name}: {r1} {r2} {r3}");
                    }
                }
            }
        }
    }
}

#[test]
fn cup_is_graded_commutative_on_classes() {
    for name in Q_NAMES {
        let a = q(name);
        let cl = Classes::new(&a, -2..=4, L);
        let all = cl.closed(&a, W + 2);
        for (r1, c1) in &all {
            for (r2, c2) in &all {
                let d =
                    cup(&a, c1, c2, L).minus(&cup(&a, c2, c1, L).scaled(&int(1).signed(r1 * r2)));
                if let Some(zero) = cl.vanishes(&a, r1 + r2, &d) {
                    assert!(zero, "{name}: {r1} {r2}");
                }
            }
        }
    }
}

#[test]
fn invariance_under_adding_a_double() {
    // where the cut at length L is exact in degrees ≤ 2
    for name in ["pt", "dual0", "a2"] {
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
        for r in 0..=2 {
            let small = hh_group(&a, r, L, PivotOrder::Natural).unwrap().dim();
            let big = hh_group(&sub, r, L, PivotOrder::Natural).unwrap().dim();
            assert_eq!(small, big, "{name} r={r}");
        }
    }
}

#[test]
fn curved_categories_are_refused() {
    let mut c = Category::<Q>::new(["X".to_string()], 2).unwrap();
    let e = c.add_basis(0, 0, "e", 0).unwrap();
    let k = c.add_basis(0, 0, "c", 2).unwrap();
    c.add_mu(&[e, e], e, int(1)).unwrap();
    c.add_mu(&[], k, int(1)).unwrap();
    assert!(hh_group(&c, 2, 2, PivotOrder::Natural).is_err());
}
