//! The flip operator as a witness for Werner states.
//!
//! Run with `cargo run --example flip_and_werner`.

use ewt::classifier::{detect, min_schmidt_k_expectation, OptimOptions};
use ewt::states::{flip, werner};

fn main() -> ewt::Result<()> {
    for d in 2..=4 {
        let f = flip(d);
        let spec = f.spectrum()?;
        println!(
            "d = {d}: flip has {} eigenvalues +1 and {} eigenvalues -1",
            spec.eigenvalues.iter().filter(|&&e| e > 0.0).count(),
            spec.count_below(0.0)
        );
    }

    // block-positive: product minimum 0, antisymmetric Schmidt-rank-2 vectors reach -1
    let f = flip(3);
    let opts = OptimOptions::with_seed(1);
    for k in 1..=2 {
        let r = min_schmidt_k_expectation(&f, k, &opts)?;
        println!("min over Schmidt rank <= {k}: {:+.6} ({:?})", r.min_value, r.status);
    }

    println!("\n  p     tr(F rho_p)");
    let f = flip(2);
    for i in 0..=10 {
        let p = i as f64 / 10.0;
        let t = detect(&f, &werner(2, p)?)?;
        let mark = if t < -1e-12 { "  entangled" } else { "" };
        println!("{p:5.2}  {t:+.4}{mark}");
    }
    Ok(())
}
