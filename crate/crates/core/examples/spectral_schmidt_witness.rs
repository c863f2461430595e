//! Spectral construction of Schmidt-number witnesses from the Φ_p family,
//! compared with the rank-k minimizer.

use ewt::classifier::{min_schmidt_k_expectation, OptimOptions};
use ewt::maps::phi_p;
use ewt::witnesses::{spectral_k_schmidt_witness, SpectralWitnessSpec};

fn main() -> ewt::Result<()> {
    let d = 3;
    let opts = OptimOptions::with_seed(5);
    for p in [0.2, 0.3, 0.4, 0.6, 1.0] {
        let (map, k) = phi_p(d, p)?;
        let mins: Vec<String> = (1..=d)
            .map(|r| min_schmidt_k_expectation(map.choi(), r, &opts).map(|o| format!("{:+.3}", o.min_value)))
            .collect::<ewt::Result<_>>()?;
        println!("p = {p:.1}: {k}-positive; minima over Schmidt rank 1..{d}: {}", mins.join(" "));
    }

    let spec = SpectralWitnessSpec::max_entangled_family(4, 1.0, 1)?;
    let (_, v) = spectral_k_schmidt_witness(&spec)?;
    let mu: Vec<String> = v.mu.iter().map(|m| m.map_or("-".into(), |x| format!("{x:.4}"))).collect();
    println!("\nreduction map, d = 4: mu_l = [{}]", mu.join(", "));
    println!("T1 = {}, T2 = {}, Schmidt witness order {:?}", v.t1, v.t2, v.schmidt_witness_order);
    Ok(())
}
