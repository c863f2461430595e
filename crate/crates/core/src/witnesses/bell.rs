use crate::error::{Error, Result};
use crate::states::{weyl_operator, WeylIndex};
use crate::tensor::{hermitian_defect, tensor_product, BipartiteOperator, CMatrix};

use super::{Family, Witness};

/// `W = a((d−1) I ⊗ I + Σ_{k+l>0} c_kl U_kl ⊗ U_{−k,l})`.
///
/// `c[(0,0)]` is ignored. With `require_block_positive` every `|c_kl|` must be
/// at most one, which makes `W` block-positive.
pub fn bell_diagonal_witness(c: &CMatrix, a: f64, require_block_positive: bool) -> Result<Witness> {
    let d = c.nrows();
    if d < 2 || c.ncols() != d {
        return Err(Error::InvalidParameter("coefficients must form a d x d matrix, d >= 2".into()));
    }
    if !(a > 0.0) {
        return Err(Error::InvalidParameter(format!("a = {a}, need a > 0")));
    }
    let mut max_abs_c: f64 = 0.0;
    let mut w = CMatrix::identity(d * d, d * d).scale((d - 1) as f64);
    for k in 0..d {
        for l in 0..d {
            if k + l == 0 {
                continue;
            }
            let ckl = c[(k, l)];
            max_abs_c = max_abs_c.max(ckl.norm());
            let ua = weyl_operator(WeylIndex::new(d, k, l)?);
            let ub = weyl_operator(WeylIndex::wrapped(d, -(k as i64), l as i64)?);
            w += tensor_product(&ua, &ub) * ckl;
        }
    }
    if require_block_positive && max_abs_c > 1.0 + 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "max |c_kl| = {max_abs_c} exceeds 1; block-positivity is not guaranteed"
        )));
    }
    let w = w.scale(a);
    let defect = hermitian_defect(&w);
    if defect > 1e-10 {
        return Err(Error::NotHermitian(defect));
    }
    Ok(Witness::new(
        BipartiteOperator::new(w, d, d)?,
        Family::BellDiagonal { d, max_abs_c },
    ))
}
