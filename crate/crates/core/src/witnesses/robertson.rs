//! Breuer–Hall maps on `M_{2N}` and the Robertson-type generalizations.
//!
//! Off-diagonal blocks use `B_kl = X_kl + R(X_lk)`: the reduction map is
//! applied to the *mirrored* block. This is what `X ↦ U Xᵀ U†` produces for
//! `U = i I_N ⊗ σ₂`, and it is the form under which the block maps are positive.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maps::{choi_of_map, Convention, MapDescriptor};
use crate::tensor::{c, hermitian_defect, CMatrix, C64};

use super::{Family, Witness};

/// Serializable summary of which construction produced a map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RobertsonVariant {
    /// `Φ_U(X) = (I tr X − X − U Xᵀ U†) / (2(N−1))`.
    BreuerHall,
    /// `2 × 2` grid of `N × N` blocks, reduction `R_N`, factor `1/N`.
    Block2xN,
    /// `N × N` grid of `2 × 2` blocks with off-diagonal weights `z_kl`.
    ZDeformed { max_abs_z: f64, all_unimodular: bool },
}

/// Input selector for [`robertson_breuer_hall`].
#[derive(Debug, Clone, Copy)]
pub enum RobertsonKind<'a> {
    BreuerHall,
    Block2xN,
    /// Hermitian pattern `z_kl = conj(z_lk)`, `|z_kl| ≤ 1`; diagonal ignored.
    ZDeformed(&'a CMatrix),
}

#[derive(Debug, Clone)]
pub struct BreuerHallMap {
    pub map: MapDescriptor,
    /// The Choi matrix of `map`, tagged.
    pub witness: Witness,
}

/// `U₀ = i I_N ⊗ σ₂`, antisymmetric and unitary on `C^{2N}`.
pub fn antisymmetric_unitary_u0(n: usize) -> CMatrix {
    let j = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)]);
    CMatrix::identity(n, n).kronecker(&j)
}

/// `R(Y) = I tr Y − Y`.
fn reduction(y: &CMatrix) -> CMatrix {
    CMatrix::identity(y.nrows(), y.nrows()) * y.trace() - y
}

fn block(x: &CMatrix, size: usize, k: usize, l: usize) -> CMatrix {
    x.view((k * size, l * size), (size, size)).into_owned()
}

fn validate_u(u: &CMatrix, dim: usize) -> Result<()> {
    if u.nrows() != dim || u.ncols() != dim {
        return Err(Error::DimensionMismatch(format!("U must be {dim}x{dim}")));
    }
    let unit = (u * u.adjoint() - CMatrix::identity(dim, dim)).camax();
    if unit > 1e-10 {
        return Err(Error::InvalidParameter(format!("U is not unitary (defect {unit:e})")));
    }
    let anti = (u + u.transpose()).camax();
    if anti > 1e-10 {
        return Err(Error::InvalidParameter(format!("U is not antisymmetric (defect {anti:e})")));
    }
    Ok(())
}

fn block_2xn(n: usize, x: &CMatrix) -> CMatrix {
    let x11 = block(x, n, 0, 0);
    let x12 = block(x, n, 0, 1);
    let x21 = block(x, n, 1, 0);
    let x22 = block(x, n, 1, 1);
    let id = CMatrix::identity(n, n);
    let mut out = CMatrix::zeros(2 * n, 2 * n);
    out.view_mut((0, 0), (n, n)).copy_from(&(&id * x22.trace()));
    out.view_mut((n, n), (n, n)).copy_from(&(&id * x11.trace()));
    out.view_mut((0, n), (n, n)).copy_from(&-(&x12 + reduction(&x21)));
    out.view_mut((n, 0), (n, n)).copy_from(&-(&x21 + reduction(&x12)));
    out.unscale(n as f64)
}

fn z_deformed(n: usize, z: &CMatrix, x: &CMatrix) -> CMatrix {
    let tr = x.trace();
    let id2 = CMatrix::identity(2, 2);
    let mut out = CMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        for l in 0..n {
            let blk = if k == l {
                &id2 * (tr - block(x, 2, k, k).trace())
            } else {
                (block(x, 2, k, l) + reduction(&block(x, 2, l, k))) * z[(k, l)]
            };
            out.view_mut((2 * k, 2 * l), (2, 2)).copy_from(&blk);
        }
    }
    out.unscale(2.0 * (n as f64 - 1.0))
}

/// Builds a Robertson-type map on `M_{2N}` and its Choi matrix.
///
/// `u` is only used by the Breuer–Hall variant; the block variants use the
/// reduction map directly.
pub fn robertson_breuer_hall(n: usize, u: &CMatrix, kind: RobertsonKind<'_>) -> Result<BreuerHallMap> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("N = {n}, need N >= 2")));
    }
    let dim = 2 * n;
    let (map, variant) = match kind {
        RobertsonKind::BreuerHall => {
            validate_u(u, dim)?;
            let u = u.clone();
            let scale = 1.0 / (2.0 * (n as f64 - 1.0));
            let map = choi_of_map(
                move |x| {
                    let id = CMatrix::identity(dim, dim) * x.trace();
                    (id - x - &u * x.transpose() * u.adjoint()).scale(scale)
                },
                dim,
                dim,
                Convention::Choi,
            )?;
            (map, RobertsonVariant::BreuerHall)
        }
        RobertsonKind::Block2xN => {
            let map = choi_of_map(move |x| block_2xn(n, x), dim, dim, Convention::Choi)?;
            (map, RobertsonVariant::Block2xN)
        }
        RobertsonKind::ZDeformed(z) => {
            if z.nrows() != n || z.ncols() != n {
                return Err(Error::DimensionMismatch(format!("z must be {n}x{n}")));
            }
            let mut zz = z.clone();
            for k in 0..n {
                zz[(k, k)] = C64::new(0.0, 0.0);
            }
            let defect = hermitian_defect(&zz);
            if defect > 1e-12 {
                return Err(Error::InvalidParameter(format!(
                    "z must satisfy z_kl = conj(z_lk) (defect {defect:e})"
                )));
            }
            let offdiag = (0..n)
                .flat_map(|k| (0..n).map(move |l| (k, l)))
                .filter(|(k, l)| k != l)
                .map(|(k, l)| zz[(k, l)].norm());
            let max_abs_z = offdiag.clone().fold(0.0, f64::max);
            if max_abs_z > 1.0 + 1e-12 {
                return Err(Error::InvalidParameter(format!("|z_kl| = {max_abs_z} exceeds 1")));
            }
            let all_unimodular = offdiag.into_iter().all(|a| (a - 1.0).abs() < 1e-12);
            let map = choi_of_map(move |x| z_deformed(n, &zz, x), dim, dim, Convention::Choi)?;
            (map, RobertsonVariant::ZDeformed { max_abs_z, all_unimodular })
        }
    };
    if !map.is_unital(1e-10) || !map.is_trace_preserving(1e-10) {
        return Err(Error::Precondition("constructed map is not unital and trace-preserving".into()));
    }
    let witness = Witness::new(map.choi().clone(), Family::BreuerHall { n, variant });
    Ok(BreuerHallMap { map, witness })
}
