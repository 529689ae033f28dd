use std::collections::HashMap;

use super::{block_degree, tw_mu, TwComplex, TwMorphism};
use crate::category::Category;
use crate::error::Result;
use crate::exactlin::{Scalar, SparseVec};

/// The full subcategory of twisted complexes on the given objects, as a
/// plain A∞-category. Basis element `(i, j, b)` of `hom(T, U)` is labelled
/// `i.j.b`; structure maps are those of the twisted category.
pub fn tw_subcategory<S: Scalar>(
    cat: &Category<S>,
    objects: &[(String, TwComplex<S>)],
) -> Result<Category<S>> {
    let mut sub = Category::new(objects.iter().map(|(n, _)| n.clone()), cat.arity_bound())?;
    // new basis id -> (source, target, i, j, b)
    let mut elements = Vec::new();
    let mut index = HashMap::new();
    for (p, (_, x)) in objects.iter().enumerate() {
        for (q, (_, y)) in objects.iter().enumerate() {
            for (i, a) in x.carrier().iter().enumerate() {
                for (j, c) in y.carrier().iter().enumerate() {
                    for &b in cat.hom(a.object, c.object) {
                        let label = format!("{i}.{j}.{}", cat.basis_element(b).label);
                        let id = sub.add_basis(p, q, &label, block_degree(cat, *a, *c, b))?;
                        elements.push((p, q, i, j, b));
                        index.insert((p, q, i, j, b), id);
                    }
                }
            }
        }
    }
    let morphism = |id: usize| {
        let (p, q, i, j, b) = elements[id];
        TwMorphism {
            source: objects[p].1.clone(),
            target: objects[q].1.clone(),
            degree: sub.degree_of(id),
            blocks: [((i, j), SparseVec::unit(b))].into(),
        }
    };
    let mut entries = Vec::new();
    for d in 1..=cat.arity_bound() {
        for tuple in sub.composable_tuples(d) {
            let ms: Vec<TwMorphism<S>> = tuple.iter().map(|id| morphism(*id)).collect();
            let refs: Vec<&TwMorphism<S>> = ms.iter().collect();
            let out = tw_mu(cat, &refs)?;
            let (p, q) = (elements[tuple[0]].0, elements[*tuple.last().unwrap()].1);
            for (&(i, j), v) in out.blocks() {
                for (b, c) in v.iter() {
                    entries.push((tuple.clone(), index[&(p, q, i, j, b)], c.clone()));
                }
            }
        }
    }
    for (tuple, out, c) in entries {
        sub.add_mu(&tuple, out, c)?;
    }
    Ok(sub)
}
