//! Bounded breadth-first search for a construction of a target from
//! generators by shifts, cones and idempotent splittings.

use serde::Serialize;

use super::karoubi::{idempotent_candidates, karoubi_iso};
use super::{cone, quasi_iso_witness, shift, tw_hom, KaroubiObject, TwComplex, TwMorphism};
use crate::category::Category;
use crate::error::{Error, Result};
use crate::exactlin::{FieldScalar, PivotOrder};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Derivation {
    Generator {
        index: usize,
        shift: i64,
    },
    /// Cone over the `class`-th basis cocycle of `H⁰(hom(source, target))`.
    Cone {
        source: Box<Derivation>,
        target: Box<Derivation>,
        class: usize,
    },
    /// Image of the `candidate`-th idempotent of `H⁰(end(of))`.
    Split {
        of: Box<Derivation>,
        candidate: usize,
    },
}

impl Derivation {
    pub fn depth(&self) -> usize {
        match self {
            Derivation::Generator { .. } => 0,
            Derivation::Cone { source, target, .. } => 1 + source.depth().max(target.depth()),
            Derivation::Split { of, .. } => 1 + of.depth(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub depth: usize,
    /// Total number of candidate tests allowed.
    pub budget: usize,
    /// Generators are tried with shifts in `[−shift_range, shift_range]`.
    pub shift_range: i64,
    /// Candidate tests per quasi-isomorphism attempt.
    pub witness_budget: usize,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            depth: 2,
            budget: 10_000,
            shift_range: 2,
            witness_budget: 64,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SearchOutcome<S> {
    Found {
        derivation: Derivation,
        witness: Option<TwMorphism<S>>,
        tests: usize,
    },
    /// Every construction up to `depth` was tried.
    NoneFound {
        depth: usize,
        explored: usize,
        tests: usize,
    },
}

struct Node<S> {
    complex: TwComplex<S>,
    derivation: Derivation,
}

struct Budget {
    used: usize,
    limit: usize,
}

impl Budget {
    fn charge(&mut self, n: usize) -> Result<()> {
        self.used += n;
        if self.used > self.limit {
            return Err(Error::BudgetExceeded(self.limit));
        }
        Ok(())
    }

    fn remaining(&self) -> usize {
        self.limit.saturating_sub(self.used)
    }
}

fn test_node<S: FieldScalar>(
    cat: &Category<S>,
    node: &Node<S>,
    target: &TwComplex<S>,
    opts: &SearchOptions,
    budget: &mut Budget,
) -> Result<Option<SearchOutcome<S>>> {
    let per = opts.witness_budget.min(budget.remaining().max(1));
    let search = quasi_iso_witness(cat, &node.complex, target, per, opts.seed)?;
    budget.charge(search.candidates_tried.max(1))?;
    Ok(search.witness.map(|w| SearchOutcome::Found {
        derivation: node.derivation.clone(),
        witness: Some(w),
        tests: budget.used,
    }))
}

/// Breadth-first closure of the shifted generators under cones over basis
/// cocycles of `H⁰` and splittings of `H⁰`-idempotents. Split summands are
/// compared with the target up to isomorphism in the split-closed `H⁰`
/// and are not used further.
pub fn generate_search<S: FieldScalar>(
    cat: &Category<S>,
    generators: &[TwComplex<S>],
    target: &TwComplex<S>,
    opts: &SearchOptions,
) -> Result<SearchOutcome<S>> {
    let mut budget = Budget {
        used: 0,
        limit: opts.budget,
    };
    let mut nodes: Vec<Node<S>> = Vec::new();
    for (index, g) in generators.iter().enumerate() {
        for s in -opts.shift_range..=opts.shift_range {
            nodes.push(Node {
                complex: shift(g, s),
                derivation: Derivation::Generator { index, shift: s },
            });
        }
    }
    // shift 0 first so that a generator equal to the target is found at once
    nodes.sort_by_key(|n| match n.derivation {
        Derivation::Generator { shift, index } => (shift.abs(), shift < 0, index),
        _ => unreachable!(),
    });
    for n in &nodes {
        if let Some(found) = test_node(cat, n, target, opts, &mut budget)? {
            return Ok(found);
        }
    }
    let whole_target = KaroubiObject::whole(cat, target.clone())?;
    let mut frontier_start = 0;
    for _level in 1..=opts.depth {
        let frontier_end = nodes.len();
        let mut fresh = Vec::new();
        for a in 0..frontier_end {
            for b in 0..frontier_end {
                if a < frontier_start && b < frontier_start {
                    continue;
                }
                let hom = tw_hom(
                    cat,
                    &nodes[a].complex,
                    &nodes[b].complex,
                    PivotOrder::Natural,
                )?;
                for (class, c) in hom.representatives(0).into_iter().enumerate() {
                    let node = Node {
                        complex: cone(cat, &c)?,
                        derivation: Derivation::Cone {
                            source: Box::new(nodes[a].derivation.clone()),
                            target: Box::new(nodes[b].derivation.clone()),
                            class,
                        },
                    };
                    if let Some(found) = test_node(cat, &node, target, opts, &mut budget)? {
                        return Ok(found);
                    }
                    fresh.push(node);
                }
            }
        }
        for node in &nodes[frontier_start..frontier_end] {
            let candidates = idempotent_candidates(cat, &node.complex, budget.remaining())?;
            budget.charge(1)?;
            for (candidate, pi) in candidates.into_iter().enumerate() {
                let k = KaroubiObject {
                    complex: node.complex.clone(),
                    idempotent: pi,
                };
                let (iso, tried) = karoubi_iso(
                    cat,
                    &k,
                    &whole_target,
                    opts.witness_budget.min(budget.remaining().max(1)),
                )?;
                budget.charge(tried.max(1))?;
                if iso.is_some() {
                    return Ok(SearchOutcome::Found {
                        derivation: Derivation::Split {
                            of: Box::new(node.derivation.clone()),
                            candidate,
                        },
                        witness: None,
                        tests: budget.used,
                    });
                }
            }
        }
        frontier_start = frontier_end;
        nodes.extend(fresh);
    }
    Ok(SearchOutcome::NoneFound {
        depth: opts.depth,
        explored: nodes.len(),
        tests: budget.used,
    })
}
