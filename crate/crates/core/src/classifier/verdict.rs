//! Block-positivity and decomposability verdicts combining numerics with
//! analytic family knowledge.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{max_abs_diff, BipartiteOperator, Side};
use crate::witnesses::{rebuild, Decomposability, Family, Witness};

use super::seesaw::{min_schmidt_k_expectation, OptimOptions, OptimResult, OptimStatus};

/// Numerical answer; only the negative one is a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockPositivity {
    YesHeuristic,
    NoCertified,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KVerdict {
    pub k: usize,
    pub numeric: BlockPositivity,
    pub min_value: f64,
    /// Exact answer from the family's criterion, when one applies.
    pub analytic: Option<bool>,
    /// Numerics contradict the analytic answer.
    pub disagreement: bool,
}

impl KVerdict {
    /// The analytic answer when available, otherwise the numerical one.
    pub fn holds(&self) -> bool {
        self.analytic.unwrap_or(self.numeric == BlockPositivity::YesHeuristic)
    }
}

/// True if the family tag really describes `op`: either the tag rebuilds to
/// the same matrix or it carries no rebuildable data.
pub fn family_matches(op: &BipartiteOperator, family: &Family) -> bool {
    match rebuild(family) {
        Some(r) => r.dims() == op.dims() && max_abs_diff(r.mat(), op.mat()) <= 1e-9,
        None => !matches!(family, Family::Unknown),
    }
}

/// `k`-block-positivity via the rank-`k` minimizer, with the family's
/// analytic answer attached.
///
/// A certified violation where the family says "yes" is a hard disagreement;
/// a missed violation where the family says "no" is reported too (the
/// minimizer is only a one-sided test), and both are logged.
pub fn is_k_block_positive(witness: &Witness, k: usize, opts: &OptimOptions) -> Result<KVerdict> {
    Ok(k_verdict(witness, k, opts)?.0)
}

pub(crate) fn k_verdict(witness: &Witness, k: usize, opts: &OptimOptions) -> Result<(KVerdict, OptimResult)> {
    let r = min_schmidt_k_expectation(&witness.op, k, opts)?;
    let numeric = match r.status {
        OptimStatus::CertifiedNegative => BlockPositivity::NoCertified,
        OptimStatus::HeuristicNonnegative => BlockPositivity::YesHeuristic,
    };
    let analytic = witness.family.analytic_k_block_positive(k);
    let disagreement = match analytic {
        Some(a) => a != (numeric == BlockPositivity::YesHeuristic),
        None => false,
    };
    if disagreement {
        log::warn!(
            "{}: analytic {}-block-positivity {:?} contradicts minimizer value {:e}",
            witness.family.name(),
            k,
            analytic,
            r.min_value
        );
    }
    let verdict = KVerdict {
        k,
        numeric,
        min_value: r.min_value,
        analytic,
        disagreement,
    };
    Ok((verdict, r))
}

/// Decomposability from family metadata, or from the dimension when every
/// witness is decomposable (`d_A d_B ≤ 6`).
pub fn decomposability_verdict(witness: &Witness) -> Decomposability {
    let (da, db) = witness.op.dims();
    if da * db <= 6 {
        return Decomposability::YesAnalytic;
    }
    if !family_matches(&witness.op, &witness.family) {
        return Decomposability::Unknown;
    }
    witness.family.decomposability()
}

/// Certifies `W = A + B^Γ` for explicitly supplied `A, B ⪰ 0`.
pub fn verify_decomposition(
    w: &BipartiteOperator,
    a: &BipartiteOperator,
    b: &BipartiteOperator,
    tol: f64,
) -> Result<Witness> {
    for (op, name) in [(a, "A"), (b, "B")] {
        let min = op.min_eigenvalue()?;
        if min < -tol {
            return Err(Error::Precondition(format!("{name} is not positive (min eigenvalue {min:e})")));
        }
    }
    let sum = a.combine(1.0, &b.partial_transpose(Side::B), 1.0)?;
    sum.same_dims(w)?;
    let err = max_abs_diff(sum.mat(), w.mat());
    if err > tol {
        return Err(Error::Precondition(format!("W differs from A + B^Γ by {err:e}")));
    }
    Ok(Witness::new(w.clone(), Family::Decomposition))
}
