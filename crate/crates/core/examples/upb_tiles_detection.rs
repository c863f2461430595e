//! PPT entanglement from the Tiles unextendible product basis: the state is
//! PPT, the realignment criterion flags it, and a witness steered by the UPB
//! projector detects it.

use ewt::classifier::{detect, ppt_check, realignment_check, OptimOptions};
use ewt::io::tiles_upb;
use ewt::states::{family_projector, upb_state};
use ewt::witnesses::{edge_steered_witness, EdgeMode};

fn main() -> ewt::Result<()> {
    let tiles = tiles_upb();
    let x = upb_state(&tiles)?;
    let rho = x.scale(1.0 / x.trace().re);

    let ppt = ppt_check(&rho)?;
    println!("PPT: {} (min PT eigenvalue {:.2e})", ppt.is_ppt, ppt.min_pt_eigenvalue);
    let ccnr = realignment_check(&rho)?;
    println!("realignment sum {:.6} -> entangled: {}", ccnr.sum, ccnr.flags_entangled);

    let pi = family_projector(&tiles)?;
    let edge = edge_steered_witness(Some(&pi), None, EdgeMode::MaxEntangled, &OptimOptions::with_seed(0))?;
    println!("epsilon = min over product vectors of <ab|Pi|ab> = {:.6}", edge.epsilon);
    println!("witness product minimum (independent seed): {:.3e}", edge.post_check_min);
    println!("tr(W rho) = {:.6}", detect(&edge.witness.op, &rho)?);
    Ok(())
}
