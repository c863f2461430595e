//! Structural physical approximation and the spanning dimension of the
//! product zero set.

use ewt::classifier::{spa, spanning_dimension, OptimOptions};
use ewt::states::flip;
use ewt::witnesses::{reduction_witness, w_abc};

fn main() -> ewt::Result<()> {
    let opts = OptimOptions::with_seed(0);
    let cases = [
        ("flip d=2", flip(2)),
        ("flip d=3", flip(3)),
        ("reduction d=2", reduction_witness(2)?.op),
        ("reduction d=3", reduction_witness(3)?.op),
        ("W[1,1,0]", w_abc(1.0, 1.0, 0.0)?.op),
        ("W[0,1,1]", w_abc(0.0, 1.0, 1.0)?.op),
    ];
    println!("{:<14} {:>8} {:>6} {:>6} | spanning (W, W^Γ)", "witness", "p*", "PPT", "CCNR");
    for (name, w) in cases {
        let s = spa(&w)?;
        let span = spanning_dimension(&w, &opts)?;
        println!(
            "{name:<14} {:>8.5} {:>6} {:>6} | {} / {} of {}",
            s.p_star,
            s.ppt.is_ppt,
            s.ccnr.flags_entangled,
            span.dimension,
            span.pt_dimension,
            span.full_dimension
        );
    }
    Ok(())
}
