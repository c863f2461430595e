//! Witnesses obtained by subtracting as much as possible from a
//! block-positive `P + Q^Γ` while staying block-positive.

use serde::{Deserialize, Serialize};

use crate::classifier::{min_schmidt_k_expectation, OptimOptions};
use crate::error::{Error, Result};
use crate::states::max_entangled_projector;
use crate::tensor::{BipartiteOperator, Side};

use super::{Family, Witness};

/// What gets subtracted from `P + Q^Γ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeMode {
    /// `W = P + Q^Γ − ε I`.
    Identity,
    /// `W = P + Q^Γ − ε d |ψ⁺_d⟩⟨ψ⁺_d|`, the UPB variant (needs `d_A = d_B`).
    MaxEntangled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeStatus {
    Subtracted,
    NoSubtractionPossible,
}

#[derive(Debug, Clone)]
pub struct EdgeWitness {
    pub witness: Witness,
    /// Minimum of `⟨ab|P + Q^Γ|ab⟩` over normalized product vectors.
    pub epsilon: f64,
    pub status: EdgeStatus,
    /// Product minimum of the returned witness, recomputed with a fresh seed.
    pub post_check_min: f64,
}

const EPS_FLOOR: f64 = 1e-9;

/// `ε` is found with the product-vector optimizer; the result is re-checked
/// for block-positivity with an independent seed.
pub fn edge_steered_witness(
    p: Option<&BipartiteOperator>,
    q: Option<&BipartiteOperator>,
    mode: EdgeMode,
    opts: &OptimOptions,
) -> Result<EdgeWitness> {
    let base = match (p, q) {
        (None, None) => {
            return Err(Error::InvalidParameter("P and Q cannot both be absent".into()))
        }
        (Some(p), None) => p.clone(),
        (None, Some(q)) => q.partial_transpose(Side::B),
        (Some(p), Some(q)) => p.combine(1.0, &q.partial_transpose(Side::B), 1.0)?,
    };
    for (op, name) in [(p, "P"), (q, "Q")] {
        if let Some(op) = op {
            let min = op.min_eigenvalue()?;
            if min < -1e-10 {
                return Err(Error::Precondition(format!("{name} is not positive (min eigenvalue {min:e})")));
            }
        }
    }
    if base.mat().norm() == 0.0 {
        return Err(Error::InvalidParameter("P + Q^Γ vanishes".into()));
    }
    let (da, db) = base.dims();
    if mode == EdgeMode::MaxEntangled && da != db {
        return Err(Error::DimensionMismatch("max-entangled subtraction needs d_A = d_B".into()));
    }

    let found = min_schmidt_k_expectation(&base, 1, opts)?;
    let epsilon = found.min_value.max(0.0);
    let (op, status) = if epsilon <= EPS_FLOOR {
        (base, EdgeStatus::NoSubtractionPossible)
    } else {
        let sub = match mode {
            EdgeMode::Identity => BipartiteOperator::identity(da, db).scale(epsilon),
            EdgeMode::MaxEntangled => max_entangled_projector(da)?.scale(epsilon * da as f64),
        };
        (base.combine(1.0, &sub, -1.0)?, EdgeStatus::Subtracted)
    };
    let check_opts = OptimOptions {
        seed: opts.seed.wrapping_add(0x9e37_79b9),
        ..opts.clone()
    };
    let post_check_min = min_schmidt_k_expectation(&op, 1, &check_opts)?.min_value;
    Ok(EdgeWitness {
        witness: Witness::new(op, Family::EdgeSteered { epsilon }),
        epsilon,
        status,
        post_check_min,
    })
}
