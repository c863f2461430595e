//! Numerical classification: rank-`k` minimization, separability screens,
//! spanning dimension, SPA and the combined report.

mod checks;
mod report;
mod seesaw;
mod spanning;
mod verdict;

pub use checks::{
    detect, ppt_check, realignment_check, spa, PptCheck, RealignmentCheck, SpaResult, CCNR_TOL,
    PPT_TOL,
};
pub use report::{classify, Detection, WitnessReport, POSITIVITY_TOL};
pub use seesaw::{
    min_schmidt_k_expectation, seesaw_run, seesaw_trace, OptimOptions, OptimResult, OptimStatus,
    SeesawRun, CERT_TOL,
};
pub use spanning::{spanning_dimension, SpanningResult, CLEAN_ZERO_TOL, SPAN_RANK_TOL, ZERO_TOL};
pub use verdict::{
    decomposability_verdict, family_matches, is_k_block_positive, verify_decomposition,
    BlockPositivity, KVerdict,
};
