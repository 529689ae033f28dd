use serde::Serialize;

use super::Category;
use crate::exactlin::Scalar;
use crate::multilinear::{insert, Grading};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// Output degree differs from `Σ|a_i| + 2 − d`.
    Degree,
    /// The A∞ relation sum is nonzero on this tuple.
    Relation,
    /// A curvature term with nonzero constant coefficient.
    OrderT,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub arity: usize,
    /// Inputs written `a_d, …, a_1`.
    pub inputs: Vec<String>,
    pub output: String,
    pub coefficient: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArityCheck {
    pub arity: usize,
    pub tuples: u64,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub arity_bound: usize,
    pub checks: Vec<ArityCheck>,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn failures(&self, kind: ViolationKind) -> usize {
        self.violations.iter().filter(|v| v.kind == kind).count()
    }
}

/// Checks degrees of all `μ` entries and the A∞ relations for arities up to
/// `2·D − 1`, including insertions of curvature terms when present.
pub fn validate<S: Scalar>(a: &Category<S>) -> ValidationReport {
    let mut violations = Vec::new();
    let names = |ks: &[usize]| {
        ks.iter()
            .rev()
            .map(|b| a.basis_name(*b))
            .collect::<Vec<_>>()
    };
    for (inputs, out, c) in a.mu().entries() {
        let expected = inputs.iter().map(|b| a.degree(*b)).sum::<i64>() + 2 - inputs.len() as i64;
        if a.degree(out) != expected {
            violations.push(Violation {
                kind: ViolationKind::Degree,
                arity: inputs.len(),
                inputs: names(inputs),
                output: a.basis_name(out),
                coefficient: c.to_string(),
                detail: format!("output degree {} but expected {expected}", a.degree(out)),
            });
        }
    }
    let max = 2 * a.arity_bound() - 1;
    let relations = insert(a.mu(), a.mu(), a, Some(1), max);
    let min = if a.is_curved() { 0 } else { 1 };
    let mut failures = vec![0usize; max + 1];
    for (inputs, out, c) in relations.entries() {
        failures[inputs.len()] += 1;
        violations.push(Violation {
            kind: ViolationKind::Relation,
            arity: inputs.len(),
            inputs: names(inputs),
            output: a.basis_name(out),
            coefficient: c.to_string(),
            detail: "relation sum does not vanish".into(),
        });
    }
    let checks = (min..=max)
        .map(|d| ArityCheck {
            arity: d,
            tuples: u64::try_from(a.count_tuples(d)).unwrap_or(u64::MAX),
            failures: failures[d],
        })
        .collect();
    ValidationReport {
        valid: violations.is_empty(),
        arity_bound: a.arity_bound(),
        checks,
        violations,
    }
}
