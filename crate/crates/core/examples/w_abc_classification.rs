//! The W[a,b,c] family on C^3 ⊗ C^3: analytic classification next to the
//! numerical product minimizer.

use ewt::classifier::{min_schmidt_k_expectation, OptimOptions, OptimStatus};
use ewt::witnesses::{classify_w_abc, w_abc};

fn main() -> ewt::Result<()> {
    let opts = OptimOptions::with_seed(3);
    println!("    a     b     c  | positive  block-pos  indecomp  3-Schmidt | product min");
    for (a, b, c) in [
        (1.0, 1.0, 0.0),
        (0.0, 1.0, 1.0),
        (2.0, 1.0, 1.0),
        (1.0, 0.5, 0.5),
        (0.5, 0.5, 1.0),
        (1.2, 0.4, 0.9),
        (1.5, 0.5, 0.0),
    ] {
        let cls = classify_w_abc(a, b, c)?;
        let w = w_abc(a, b, c)?;
        let r = min_schmidt_k_expectation(&w.op, 1, &opts)?;
        let certified = if r.status == OptimStatus::CertifiedNegative { " (violation)" } else { "" };
        println!(
            "{a:5.2} {b:5.2} {c:5.2}  | {:8}  {:9}  {:8}  {:9} | {:+.3e}{certified}",
            cls.is_positive, cls.is_block_positive, cls.is_indecomposable, cls.is_3_schmidt, r.min_value
        );
    }
    Ok(())
}
