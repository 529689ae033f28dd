use super::{coefficient, deformed_obstruction, special_fibre, Deformation};
use crate::category::{hom_cohomology, ObjId};
use crate::error::{Error, Result};
use crate::exactlin::{PivotOrder, Rational, SparseVec, TruncSeries};

#[derive(Clone, Debug, PartialEq)]
pub enum McStatus {
    Solved,
    /// The order-`k` obstruction has a nonzero class in `H²(hom(X, X))`
    /// of the special fibre, in the coordinates of its chosen basis.
    Obstructed {
        order: u32,
        class: Vec<Rational>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct McStep {
    pub order: u32,
    /// `t^k` coefficient of the obstruction before the correction.
    pub obstruction: SparseVec<Rational>,
    /// `α_k`.
    pub correction: SparseVec<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct McResult {
    pub object: ObjId,
    pub status: McStatus,
    /// `Σ α_k t^k` over the orders solved so far.
    pub alpha: SparseVec<TruncSeries>,
    /// `dim H¹(hom(X, X))` of the special fibre: the freedom at each order.
    pub family_dims: Vec<usize>,
    pub log: Vec<McStep>,
}

/// Solves `μ⁰ + μ¹(α) + μ²(α, α) + … = 0` order by order. At order `k`
/// the equation reads `μ¹_0(α_k) = −R_k`, with `R_k` the `t^k` part of the
/// obstruction of `α_1 t + … + α_{k−1} t^{k−1}`.
pub fn mc_solve(e: &Deformation, x: ObjId) -> Result<McResult> {
    let fibre = special_fibre(e);
    let h = hom_cohomology(&fibre, x, x, PivotOrder::Natural)?;
    let mut alpha: SparseVec<TruncSeries> = SparseVec::new();
    let mut log = Vec::new();
    let mut family_dims = Vec::new();
    for k in 1..e.trunc {
        let obs = deformed_obstruction(e, x, &alpha)?;
        let r = coefficient(&obs, k);
        if (0..k).any(|j| !coefficient(&obs, j).is_zero()) {
            return Err(Error::NotACocycle(format!(
                "lower orders of the obstruction survive at order {k}"
            )));
        }
        let correction = if r.is_zero() {
            SparseVec::new()
        } else {
            match h.primitive(&r.negated(), 2)? {
                Some(b) => b,
                None => {
                    let class = h.class_of(&r, 2)?;
                    log.push(McStep {
                        order: k,
                        obstruction: r,
                        correction: SparseVec::new(),
                    });
                    return Ok(McResult {
                        object: x,
                        status: McStatus::Obstructed { order: k, class },
                        alpha,
                        family_dims,
                        log,
                    });
                }
            }
        };
        family_dims.push(h.dim(1));
        for (b, c) in correction.iter() {
            alpha.add_at(b, &e.t_power(k, c));
        }
        log.push(McStep {
            order: k,
            obstruction: r,
            correction,
        });
    }
    Ok(McResult {
        object: x,
        status: McStatus::Solved,
        alpha,
        family_dims,
        log,
    })
}
