//! Spectral separability screens, detection, and structural physical approximation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{realignment_norm, BipartiteOperator, Side};

/// PPT threshold on the smallest eigenvalue of `X^Γ`.
pub const PPT_TOL: f64 = 1e-10;
/// Realignment sums above `1 + CCNR_TOL` flag entanglement.
pub const CCNR_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PptCheck {
    pub is_ppt: bool,
    pub min_pt_eigenvalue: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealignmentCheck {
    pub sum: f64,
    pub flags_entangled: bool,
}

pub fn ppt_check(x: &BipartiteOperator) -> Result<PptCheck> {
    x.require_hermitian()?;
    let min = x.partial_transpose(Side::B).min_eigenvalue()?;
    Ok(PptCheck {
        is_ppt: min >= -PPT_TOL,
        min_pt_eigenvalue: min,
    })
}

/// Computable cross-norm test; `rho` must be a unit-trace Hermitian operator.
pub fn realignment_check(rho: &BipartiteOperator) -> Result<RealignmentCheck> {
    rho.require_hermitian()?;
    let tr = rho.trace().re;
    if (tr - 1.0).abs() > 1e-8 {
        return Err(Error::Precondition(format!("state must have unit trace, got {tr}")));
    }
    let sum = realignment_norm(rho);
    Ok(RealignmentCheck {
        sum,
        flags_entangled: sum > 1.0 + CCNR_TOL,
    })
}

/// `tr(W ρ)`; negative values certify entanglement when `W` is block-positive.
pub fn detect(w: &BipartiteOperator, rho: &BipartiteOperator) -> Result<f64> {
    w.trace_with(rho)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaResult {
    pub p_star: f64,
    /// `p* Ŵ + (1 − p*) I / D` with `Ŵ = W / tr W`.
    #[serde(skip)]
    pub state: Option<BipartiteOperator>,
    pub min_eigenvalue: f64,
    pub ppt: PptCheck,
    pub ccnr: RealignmentCheck,
    pub note: Option<String>,
}

/// Largest mixing weight `p` for which `p Ŵ + (1 − p) I / D` is still positive.
///
/// `λ_min` is affine in `p`, so `p* = 1 / (1 − D λ_min(Ŵ))`.
pub fn spa(w: &BipartiteOperator) -> Result<SpaResult> {
    w.require_hermitian()?;
    let tr = w.trace().re;
    if tr <= 0.0 {
        return Err(Error::Precondition(format!("SPA needs tr W > 0, got {tr}")));
    }
    let dim = w.dim() as f64;
    let w_hat = w.scale(1.0 / tr);
    let lam = w_hat.min_eigenvalue()?;
    let (p_star, note) = if lam >= 0.0 {
        (1.0, Some("operator is already positive; SPA is W / tr W".to_string()))
    } else {
        (1.0 / (1.0 - dim * lam), None)
    };
    let (da, db) = w.dims();
    let state = w_hat.combine(p_star, &BipartiteOperator::identity(da, db), (1.0 - p_star) / dim)?;
    Ok(SpaResult {
        p_star,
        min_eigenvalue: state.min_eigenvalue()?,
        ppt: ppt_check(&state)?,
        ccnr: realignment_check(&state)?,
        state: Some(state),
        note,
    })
}
