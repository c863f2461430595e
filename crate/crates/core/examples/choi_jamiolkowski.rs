//! Maps and their Choi matrices: transposition, reduction, the Choi map
//! family, dual maps, and the de Pillis variant.

use ewt::maps::{phi_abc, reduction, transposition, witness_from_violator};
use ewt::states::{flip, isotropic};
use ewt::tensor::max_abs_diff;

fn main() -> ewt::Result<()> {
    let t = transposition(3);
    println!("C_T == flip: {}", t.choi().mat() == flip(3).mat());
    println!("transposition CP: {}", t.is_completely_positive(1e-12)?);

    let r = reduction(3);
    println!("reduction self-dual: {}", max_abs_diff(r.choi().mat(), r.dual().choi().mat()) < 1e-14);

    let phi = phi_abc(1.0, 1.0, 0.0)?;
    let swapped = phi_abc(1.0, 0.0, 1.0)?;
    println!(
        "dual of Phi[1,1,0] equals Phi[1,0,1]: {}",
        max_abs_diff(phi.dual().choi().mat(), swapped.choi().mat()) < 1e-14
    );
    println!("Phi[1,1,0] unital: {}, CP: {}", phi.is_unital(1e-12), phi.is_completely_positive(1e-12)?);

    let j = t.depillis();
    println!("de Pillis matrix of T is (T x id) C_T; its min eigenvalue = {:.3}", j.min_eigenvalue()?);

    // a violated positivity condition becomes a witness
    let rho = isotropic(3, 0.5)?;
    if let Some((w, lambda)) = witness_from_violator(&t, &rho, 1e-12)? {
        println!("(id x T) rho has eigenvalue {lambda:.4}; tr(W rho) = {:.4}", w.trace_with(&rho)?);
    }
    Ok(())
}
