use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::states::{max_entangled_projector, werner};
use crate::tensor::BipartiteOperator;
use crate::witnesses::{Decomposability, Witness};

use super::checks::{spa, SpaResult};
use super::seesaw::{OptimOptions, CERT_TOL};
use super::spanning::{spanning_dimension, SpanningResult};
use super::verdict::{decomposability_verdict, k_verdict, BlockPositivity, KVerdict};

/// Eigenvalues at or above `-POSITIVITY_TOL` count as nonnegative.
pub const POSITIVITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Detection {
    pub name: String,
    pub trace: f64,
}

/// Everything the classifier can say about one Hermitian operator.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessReport {
    pub family: String,
    pub d_a: usize,
    pub d_b: usize,
    pub min_eigenvalue: f64,
    pub is_positive_operator: bool,
    pub block_positive_k: BTreeMap<usize, KVerdict>,
    /// Block-positive but not positive.
    pub is_ew: bool,
    /// Smallest `k` at which `k`-block-positivity fails.
    pub schmidt_witness_order: Option<usize>,
    pub detected_examples: Vec<Detection>,
    pub spanning: Option<SpanningResult>,
    pub spa: Option<SpaResult>,
    pub decomposable: Decomposability,
    pub seed: u64,
    pub restarts: usize,
}

impl WitnessReport {
    pub fn spanning_dim(&self) -> Option<usize> {
        self.spanning.as_ref().map(|s| s.dimension)
    }

    pub fn spa_p_star(&self) -> Option<f64> {
        self.spa.as_ref().map(|s| s.p_star)
    }
}

fn standard_detections(op: &BipartiteOperator, violators: &[(usize, BipartiteOperator)]) -> Result<Vec<Detection>> {
    let (da, db) = op.dims();
    let mut candidates: Vec<(String, BipartiteOperator)> = Vec::new();
    if da == db {
        candidates.push(("max_entangled".into(), max_entangled_projector(da)?));
        candidates.push(("antisymmetric_werner".into(), werner(da, 0.0)?));
    }
    for (k, v) in violators {
        candidates.push((format!("schmidt_rank_{k}_violator"), v.clone()));
    }
    let mut out = Vec::new();
    for (name, rho) in candidates {
        let trace = op.trace_with(&rho)?;
        if trace < -CERT_TOL {
            out.push(Detection { name, trace });
        }
    }
    Ok(out)
}

/// Full classification: positivity, `k`-block-positivity for every `k`,
/// detections of reference states, spanning dimension (block-positive
/// operators only), SPA (when `tr W > 0`) and decomposability.
pub fn classify(witness: &Witness, opts: &OptimOptions) -> Result<WitnessReport> {
    let op = &witness.op;
    op.require_hermitian()?;
    let (da, db) = op.dims();
    let min_eigenvalue = op.min_eigenvalue()?;
    let is_positive_operator = min_eigenvalue >= -POSITIVITY_TOL;

    let mut block_positive_k = BTreeMap::new();
    let mut violators = Vec::new();
    for k in 1..=da.min(db) {
        let verdict = if is_positive_operator {
            KVerdict {
                k,
                numeric: BlockPositivity::YesHeuristic,
                min_value: min_eigenvalue,
                analytic: witness.family.analytic_k_block_positive(k),
                disagreement: false,
            }
        } else {
            let (v, r) = k_verdict(witness, k, opts)?;
            if v.numeric == BlockPositivity::NoCertified && violators.is_empty() {
                violators.push((k, BipartiteOperator::projector(&r.witness_vector)));
            }
            v
        };
        block_positive_k.insert(k, verdict);
    }
    let schmidt_witness_order = block_positive_k.values().find(|v| !v.holds()).map(|v| v.k);
    let block_positive = block_positive_k[&1].holds();
    let is_ew = block_positive && !is_positive_operator;

    let spanning = if block_positive && block_positive_k[&1].numeric == BlockPositivity::YesHeuristic {
        Some(spanning_dimension(op, opts)?)
    } else {
        None
    };
    let spa = if op.trace().re > 0.0 { Some(spa(op)?) } else { None };

    Ok(WitnessReport {
        family: witness.family.name().to_string(),
        d_a: da,
        d_b: db,
        min_eigenvalue,
        is_positive_operator,
        block_positive_k,
        is_ew,
        schmidt_witness_order,
        detected_examples: standard_detections(op, &violators)?,
        spanning,
        spa,
        decomposable: decomposability_verdict(witness),
        seed: opts.seed,
        restarts: opts.restarts_for(da, db),
    })
}
