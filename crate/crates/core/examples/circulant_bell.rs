//! Circulant operators, their partial transposes, and Bell-diagonal witnesses
//! built from Weyl operators.

use ewt::classifier::{min_schmidt_k_expectation, OptimOptions};
use ewt::sample;
use ewt::states::{bell_projector, CirculantOperator, WeylIndex};
use ewt::tensor::max_abs_diff;
use ewt::witnesses::bell_diagonal_witness;
use ewt::{CMatrix, Side, C64};

fn main() -> ewt::Result<()> {
    let mut rng = sample::rng_for(8, 0);
    let d = 3;
    let blocks = (0..d).map(|_| sample::hermitian(d, &mut rng)).collect();
    let circ = CirculantOperator::new(blocks)?;
    let direct = circ.assemble().partial_transpose(Side::B);
    let via_coeffs = circ.pt_coeffs()?.assemble();
    println!("PT via coefficient formula vs direct: max error {:.1e}", max_abs_diff(direct.mat(), via_coeffs.mat()));

    // unimodular c_kl with c_{-k,-l} = conj(c_kl) stay block-positive
    let mut cm = CMatrix::zeros(d, d);
    for k in 0..d {
        for l in 0..d {
            if (k, l) == (0, 0) {
                continue;
            }
            let (mk, ml) = ((d - k) % d, (d - l) % d);
            if (mk, ml) < (k, l) {
                cm[(k, l)] = cm[(mk, ml)].conj();
            } else if (mk, ml) == (k, l) {
                cm[(k, l)] = C64::new(1.0, 0.0);
            } else {
                cm[(k, l)] = C64::from_polar(1.0, 0.7 * (k + 2 * l) as f64);
            }
        }
    }
    let w = bell_diagonal_witness(&cm, 1.0 / d as f64, true)?;
    let r = min_schmidt_k_expectation(&w.op, 1, &OptimOptions::with_seed(4))?;
    println!("Bell-diagonal witness: min eigenvalue {:+.4}, product minimum {:+.2e}", w.op.min_eigenvalue()?, r.min_value);
    let p00 = bell_projector(WeylIndex::new(d, 0, 0)?);
    println!("tr(W P_00) = {:+.4}", w.op.trace_with(&p00)?);
    Ok(())
}
