//! Full classification report for a catalog witness, printed as JSON.
//!
//! `cargo run --example classify_report -- w_dk 4 2` classifies W_{4,2};
//! with no arguments the Choi witness W[1,1,0] is used.

use ewt::classifier::{classify, OptimOptions};
use ewt::witnesses::{w_abc, w_dk, Witness};

fn main() -> ewt::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let witness: Witness = match args.first().map(String::as_str) {
        Some("w_dk") => {
            let d = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(4);
            let k = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(2);
            w_dk(d, k)?
        }
        _ => w_abc(1.0, 1.0, 0.0)?,
    };
    let report = classify(&witness, &OptimOptions::with_seed(0))?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
