//! Numerical spanning dimension of the product zero set `P_W`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{numerical_rank, tensor_vec, BipartiteOperator, CMatrix, CVector};

use super::seesaw::{product_runs, OptimOptions};

/// Product vectors with `⟨a⊗b|W|a⊗b⟩` at or below this are zeros.
pub const ZERO_TOL: f64 = 1e-8;
/// Floor of the singular-value threshold for the span.
pub const SPAN_RANK_TOL: f64 = 1e-8;
/// Candidates at or below this enter the rank; the rest are only counted.
pub const CLEAN_ZERO_TOL: f64 = 1e-13;
const MAX_RESTARTS: usize = 200;
const BATCH: usize = 25;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpanningResult {
    /// Rank of the harvested zeros of `W`.
    pub dimension: usize,
    /// Rank of the zeros of `W^Γ` (partial conjugates `a ⊗ b̄`).
    pub pt_dimension: usize,
    pub full_dimension: usize,
    pub candidates: usize,
    /// Candidates above `CLEAN_ZERO_TOL`, left out of the rank.
    pub loose_candidates: usize,
    /// Singular-value threshold actually used.
    pub rank_tol: f64,
    pub restarts_used: usize,
    pub seed: u64,
}

impl SpanningResult {
    /// Spanning property: sufficient for optimality.
    pub fn spans(&self) -> bool {
        self.dimension == self.full_dimension
    }
}

/// Splits a converged product vector into its factors via the dominant Schmidt pair.
fn factors(psi: &CVector, da: usize, db: usize) -> (CVector, CVector) {
    let m = CMatrix::from_fn(da, db, |i, j| psi[i * db + j]);
    let svd = crate::tensor::sorted_svd(&m);
    let s = svd.values[0].sqrt();
    let a = svd.u.column(0) * nalgebra::Complex::new(s, 0.0);
    let b = svd.v_t.row(0).transpose() * nalgebra::Complex::new(s, 0.0);
    (a, b)
}

/// Harvests product zeros from independent see-saw runs until `5 d_A d_B`
/// candidates or 200 restarts, and reports the numerical rank of their span.
///
/// Each run is projected onto the nearest exact product vector before it is
/// tested, so rank is not inflated by a tiny Schmidt tail. Near a flat part
/// of the zero set a candidate with value `v` can sit `~v^{1/4}` away from
/// it, so only candidates with `v ≤ CLEAN_ZERO_TOL` enter the rank and the
/// threshold is `max(SPAN_RANK_TOL, v_max^{1/4})` over those.
pub fn spanning_dimension(w: &BipartiteOperator, opts: &OptimOptions) -> Result<SpanningResult> {
    w.require_hermitian()?;
    let (da, db) = w.dims();
    let full = da * db;
    let target = 5 * full;
    let run_opts = OptimOptions {
        rel_tol: 0.0,
        ..opts.clone()
    };
    let mut zeros: Vec<CVector> = Vec::new();
    let mut pt_zeros: Vec<CVector> = Vec::new();
    let mut candidates = 0;
    let mut worst: f64 = 0.0;
    let mut used = 0;
    while candidates < target && used < MAX_RESTARTS {
        let end = (used + BATCH).min(MAX_RESTARTS);
        for (_, run) in product_runs(w, &run_opts, used as u64..end as u64) {
            let (a, b) = factors(&run.vector, da, db);
            let psi = tensor_vec(&a, &b);
            let psi = psi.unscale(psi.norm());
            let value = w.expectation(&psi);
            if value < -opts.cert_tol {
                return Err(Error::Precondition(format!(
                    "operator is not block-positive (product value {value:e})"
                )));
            }
            if value <= ZERO_TOL {
                candidates += 1;
            }
            if value <= CLEAN_ZERO_TOL {
                worst = worst.max(value);
                let bc = b.map(|z| z.conj());
                let pt = tensor_vec(&a, &bc);
                pt_zeros.push(pt.unscale(pt.norm()));
                zeros.push(psi);
            }
        }
        used = end;
    }
    let rank_tol = SPAN_RANK_TOL.max(worst.powf(0.25));
    let rank = |vs: &[CVector]| {
        if vs.is_empty() {
            0
        } else {
            numerical_rank(&CMatrix::from_columns(vs), rank_tol)
        }
    };
    Ok(SpanningResult {
        dimension: rank(&zeros),
        pt_dimension: rank(&pt_zeros),
        full_dimension: full,
        candidates,
        loose_candidates: candidates - zeros.len(),
        rank_tol,
        restarts_used: used,
        seed: opts.seed,
    })
}
