//! Witnesses from the realignment criterion, mutually unbiased bases, and
//! the CHSH inequality.

use ewt::classifier::{min_schmidt_k_expectation, OptimOptions};
use ewt::states::{isotropic, max_entangled_projector};
use ewt::witnesses::{chsh_witness, mub_witness, prime_mubs, realignment_witness};

fn main() -> ewt::Result<()> {
    let rho = isotropic(3, 0.6)?;
    let rw = realignment_witness(&rho)?;
    println!("realignment: sum {:.4}, tr(W rho) = {:+.4}, detects {}", rw.ccnr_sum, rw.trace_with_state, rw.detects);

    for d in [2, 3] {
        let bases = prime_mubs(d)?;
        let w = mub_witness(&bases, &bases.conjugate(), d + 1)?;
        let p = max_entangled_projector(d)?;
        println!("MUB witness d = {d}: tr(W P+) = {:+.4}", w.op.trace_with(&p)?);
    }

    let h = std::f64::consts::FRAC_1_SQRT_2;
    let w = chsh_witness([0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [h, 0.0, h], [h, 0.0, -h])?;
    let r = min_schmidt_k_expectation(&w.op, 1, &OptimOptions::with_seed(0))?;
    println!("CHSH witness: min eigenvalue {:+.4} (2 - 2√2 = {:+.4}), product minimum {:+.2e}", w.op.min_eigenvalue()?, 2.0 - 2.0 * 2f64.sqrt(), r.min_value);
    Ok(())
}
