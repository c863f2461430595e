//! Breuer–Hall maps and the block generalizations on M_{2N}.

use ewt::classifier::{classify, OptimOptions};
use ewt::witnesses::{antisymmetric_unitary_u0, robertson_breuer_hall, RobertsonKind};
use ewt::{CMatrix, C64};

fn main() -> ewt::Result<()> {
    let opts = OptimOptions::with_seed(2);
    for n in [2, 3] {
        let bh = robertson_breuer_hall(n, &antisymmetric_unitary_u0(n), RobertsonKind::BreuerHall)?;
        let r = classify(&bh.witness, &opts)?;
        println!(
            "N = {n}: unital {}, trace-preserving {}, EW {}, decomposable {:?}",
            bh.map.is_unital(1e-12),
            bh.map.is_trace_preserving(1e-12),
            r.is_ew,
            r.decomposable
        );
    }

    let u = antisymmetric_unitary_u0(3);
    let mut z = CMatrix::from_element(3, 3, C64::new(-1.0, 0.0));
    z[(0, 1)] = C64::new(0.0, 0.5);
    z[(1, 0)] = C64::new(0.0, -0.5);
    let zd = robertson_breuer_hall(3, &u, RobertsonKind::ZDeformed(&z))?;
    println!("z-deformed map: family {:?}", zd.witness.family);
    Ok(())
}
