//! See-saw minimization of `⟨Ψ|W|Ψ⟩` over unit vectors of Schmidt rank `≤ k`.
//!
//! `Ψ` is kept as a `d_A × d_B` coefficient matrix `M = X Vᵀ` (or `M = U Y`)
//! where `V` (resp. `U`) has `k` orthonormal columns. With the isometry
//! `T = I_A ⊗ V` fixed, the best `X` is the lowest eigenvector of `T† W T`;
//! then `U` is an orthonormal basis of the column space of `M` and the other
//! side is solved with `T = U ⊗ I_B`. Both half-steps can only lower the
//! objective because the current `Ψ` always lies in the range of `T`.
//!
//! The bases come from a column-pivoted QR rather than the SVD: `M` has rank
//! at most `k`, and the singular vectors of a rank-deficient wide matrix are
//! only accurate to about `1e-6`, which is enough to break monotonicity.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sample;
use crate::tensor::{spectrum_unchecked, BipartiteOperator, CMatrix, CVector, PureState};

/// Violations below `-CERT_TOL` are reported as certified.
pub const CERT_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimOptions {
    pub seed: u64,
    /// `None` means `50 · max(d_A, d_B)`.
    pub restarts: Option<usize>,
    pub max_sweeps: usize,
    /// Stop when a sweep changes the value by at most `rel_tol · max(1, |value|)`.
    pub rel_tol: f64,
    pub cert_tol: f64,
}

impl Default for OptimOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            restarts: None,
            max_sweeps: 500,
            rel_tol: 1e-12,
            cert_tol: CERT_TOL,
        }
    }
}

impl OptimOptions {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    pub fn restarts_for(&self, d_a: usize, d_b: usize) -> usize {
        self.restarts.unwrap_or(50 * d_a.max(d_b)).max(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OptimStatus {
    CertifiedNegative,
    HeuristicNonnegative,
}

#[derive(Debug, Clone)]
pub struct OptimResult {
    /// `⟨Ψ|W|Ψ⟩` recomputed from `witness_vector`.
    pub min_value: f64,
    pub witness_vector: PureState,
    pub status: OptimStatus,
    pub restarts_used: usize,
    /// Sweeps of the winning restart.
    pub iterations: usize,
    pub seed: u64,
    /// Restart (RNG stream) that produced the minimum.
    pub best_restart: u64,
}

/// Outcome of one see-saw descent.
#[derive(Debug, Clone)]
pub struct SeesawRun {
    pub value: f64,
    pub vector: CVector,
    pub sweeps: usize,
    /// Objective after every half-step, when requested.
    pub history: Vec<f64>,
}

fn random_isometry<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> CMatrix {
    sample::unitary(n, rng).columns(0, k).into_owned()
}

/// Eigenvalues this close to the minimum are treated as one eigenspace.
const DEGENERACY_TOL: f64 = 1e-12;

/// Lowest eigenpair of `T† W T` lifted back to the full space.
///
/// When the lowest eigenvalue is degenerate a random unit vector of that
/// eigenspace is returned; otherwise the solver's fixed choice would steer
/// every restart to the same few minimizers.
fn half_step<R: Rng + ?Sized>(w: &CMatrix, t: &CMatrix, rng: &mut R) -> (f64, CVector) {
    let reduced = t.adjoint() * w * t;
    let spec = spectrum_unchecked(&reduced);
    let val = spec.min();
    let n = spec.eigenvalues.len();
    let tol = DEGENERACY_TOL * val.abs().max(1.0);
    let first = spec.eigenvalues.iter().position(|&e| e <= val + tol).unwrap_or(n - 1);
    let x = if first == n - 1 {
        spec.eigenvectors.column(n - 1).into_owned()
    } else {
        let coeffs = sample::unit_vector(n - first, rng);
        spec.eigenvectors.columns(first, n - first) * coeffs
    };
    (val, t * x)
}

fn coefficient_matrix(psi: &CVector, d_a: usize, d_b: usize) -> CMatrix {
    CMatrix::from_fn(d_a, d_b, |i, j| psi[i * d_b + j])
}

/// `k` orthonormal columns whose span contains the column space of `m`
/// (`rank m ≤ k ≤ rows`).
fn range_basis(m: CMatrix, k: usize) -> CMatrix {
    m.col_piv_qr().q().columns(0, k).into_owned()
}

/// Runs one descent from a random starting isometry.
pub fn seesaw_run<R: Rng + ?Sized>(
    w: &BipartiteOperator,
    k: usize,
    opts: &OptimOptions,
    rng: &mut R,
    record: bool,
) -> SeesawRun {
    let (da, db) = w.dims();
    let wm = w.mat();
    let id_a = CMatrix::identity(da, da);
    let id_b = CMatrix::identity(db, db);
    let mut v = random_isometry(db, k, rng);
    let mut history = Vec::new();
    let mut value = f64::INFINITY;
    let mut vector = CVector::zeros(da * db);
    let mut sweeps = 0;
    while sweeps < opts.max_sweeps {
        sweeps += 1;
        let before = value;

        let (val, psi) = half_step(wm, &id_a.kronecker(&v), rng);
        value = val;
        vector = psi;
        if record {
            history.push(value);
        }

        let m = coefficient_matrix(&vector, da, db);
        let u = range_basis(m, k);
        let (val, psi) = half_step(wm, &u.kronecker(&id_b), rng);
        value = val;
        vector = psi;
        if record {
            history.push(value);
        }

        let m = coefficient_matrix(&vector, da, db);
        v = range_basis(m.transpose(), k);

        if (before - value).abs() <= opts.rel_tol * value.abs().max(1.0) {
            break;
        }
    }
    SeesawRun {
        value,
        vector,
        sweeps,
        history,
    }
}

fn validate(w: &BipartiteOperator, k: usize) -> Result<()> {
    let dmin = w.d_a().min(w.d_b());
    if k == 0 || k > dmin {
        return Err(Error::InvalidParameter(format!("k = {k} outside 1..={dmin}")));
    }
    w.require_hermitian()
}

/// Multistart minimum of `⟨Ψ|W|Ψ⟩` over unit `Ψ` with Schmidt rank `≤ k`.
///
/// Restart `r` draws from stream `r` of the generator seeded with `opts.seed`;
/// restarts run in parallel and the merge picks the lowest value, breaking
/// ties by the lowest stream, so the result does not depend on scheduling.
pub fn min_schmidt_k_expectation(
    w: &BipartiteOperator,
    k: usize,
    opts: &OptimOptions,
) -> Result<OptimResult> {
    validate(w, k)?;
    let (da, db) = w.dims();
    let restarts = opts.restarts_for(da, db);
    let runs: Vec<(u64, SeesawRun)> = (0..restarts as u64)
        .into_par_iter()
        .map(|r| {
            let mut rng = sample::rng_for(opts.seed, r);
            (r, seesaw_run(w, k, opts, &mut rng, false))
        })
        .collect();
    let (best_restart, best) = runs
        .into_iter()
        .min_by(|(ra, a), (rb, b)| a.value.total_cmp(&b.value).then(ra.cmp(rb)))
        .expect("at least one restart");

    let norm = best.vector.norm();
    let psi = best.vector.unscale(norm);
    let min_value = w.expectation(&psi);
    let status = if min_value < -opts.cert_tol {
        OptimStatus::CertifiedNegative
    } else {
        OptimStatus::HeuristicNonnegative
    };
    Ok(OptimResult {
        min_value,
        witness_vector: PureState::new(psi, da, db)?,
        status,
        restarts_used: restarts,
        iterations: best.sweeps,
        seed: opts.seed,
        best_restart,
    })
}

/// Single descent with the per-half-step objective recorded; used to check
/// monotonicity.
pub fn seesaw_trace(w: &BipartiteOperator, k: usize, seed: u64, stream: u64) -> Result<SeesawRun> {
    validate(w, k)?;
    let mut rng = sample::rng_for(seed, stream);
    Ok(seesaw_run(w, k, &OptimOptions::with_seed(seed), &mut rng, true))
}

/// Local descents from many seeds, returning every run (used to harvest zeros).
pub(crate) fn product_runs(
    w: &BipartiteOperator,
    opts: &OptimOptions,
    streams: std::ops::Range<u64>,
) -> Vec<(u64, SeesawRun)> {
    streams
        .into_par_iter()
        .map(|r| {
            let mut rng = sample::rng_for(opts.seed, r);
            (r, seesaw_run(w, 1, opts, &mut rng, false))
        })
        .collect()
}
