//! GHZ and W states of three qubits and three witnesses that tell them apart.
//! Operators live on C^2 ⊗ C^4 (first qubit against the rest).

use ewt::sample;
use ewt::states::three_qubit_states;
use ewt::witnesses::three_qubit_witnesses;
use ewt::BipartiteOperator;

fn main() -> ewt::Result<()> {
    let (ghz, w_state) = three_qubit_states();
    let ws = three_qubit_witnesses();
    let pg = BipartiteOperator::projector(&ghz);
    let pw = BipartiteOperator::projector(&w_state);
    for (name, w) in [("W", &ws.w), ("W'", &ws.w_prime), ("W''", &ws.w_double_prime)] {
        println!("{name:>4}: tr(.|GHZ><GHZ|) = {:+.4}   tr(.|W><W|) = {:+.4}", w.op.trace_with(&pg)?, w.op.trace_with(&pw)?);
    }

    let mut rng = sample::rng_for(21, 0);
    let mut min = f64::INFINITY;
    for _ in 0..1000 {
        let rho = sample::fully_separable_state(&[2, 2, 2], 4, &mut rng);
        min = min.min(ws.w_prime.op.trace_with(&rho)?);
    }
    println!("W' on 1000 fully separable states: minimum {min:+.4}");
    Ok(())
}
