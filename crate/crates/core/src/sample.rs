//! Seeded random objects used by the optimizer and by the sampling checks.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::tensor::{c, outer, tensor_vec, BipartiteOperator, CMatrix, CVector};

/// Deterministic generator for `(seed, stream)`; each restart gets its own stream.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}

/// Complex Gaussian matrix with i.i.d. standard normal real and imaginary parts.
pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| c(gaussian(rng), gaussian(rng)))
}

/// Haar-random unit vector.
pub fn unit_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CVector {
    loop {
        let v = CVector::from_fn(n, |_, _| c(gaussian(rng), gaussian(rng)));
        let norm = v.norm();
        if norm > 1e-12 {
            return v.unscale(norm);
        }
    }
}

pub fn product_vector<R: Rng + ?Sized>(d_a: usize, d_b: usize, rng: &mut R) -> CVector {
    tensor_vec(&unit_vector(d_a, rng), &unit_vector(d_b, rng))
}

pub fn hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let g = ginibre(n, n, rng);
    (&g + g.adjoint()).scale(0.5)
}

/// Haar-random unitary from the QR decomposition of a Ginibre matrix.
pub fn unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let qr = ginibre(n, n, rng).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..n {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

/// Random density matrix `G G† / tr(G G†)` of the given rank.
pub fn density<R: Rng + ?Sized>(n: usize, rank: usize, rng: &mut R) -> CMatrix {
    let g = ginibre(n, rank.max(1), rng);
    let rho = &g * g.adjoint();
    let tr = rho.trace().re;
    rho.unscale(tr)
}

/// Random probability vector (flat Dirichlet).
pub fn simplex_point<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    let w: Vec<f64> = (0..n).map(|_| -rng.random::<f64>().max(1e-300).ln()).collect();
    let s: f64 = w.iter().sum();
    w.into_iter().map(|x| x / s).collect()
}

/// Convex combination of `terms` random pure product states on `d_a ⊗ d_b`.
pub fn separable_state<R: Rng + ?Sized>(
    d_a: usize,
    d_b: usize,
    terms: usize,
    rng: &mut R,
) -> BipartiteOperator {
    let weights = simplex_point(terms, rng);
    let mut rho = CMatrix::zeros(d_a * d_b, d_a * d_b);
    for w in weights {
        let v = product_vector(d_a, d_b, rng);
        rho += outer(&v, &v).scale(w);
    }
    BipartiteOperator::new(rho, d_a, d_b).expect("dimensions are consistent")
}

/// Mixture of fully product states over the given local dimensions, returned
/// as a bipartite operator split after the first factor.
pub fn fully_separable_state<R: Rng + ?Sized>(
    dims: &[usize],
    terms: usize,
    rng: &mut R,
) -> BipartiteOperator {
    assert!(dims.len() >= 2, "need at least two parties");
    let total: usize = dims.iter().product();
    let weights = simplex_point(terms, rng);
    let mut rho = CMatrix::zeros(total, total);
    for w in weights {
        let v = dims
            .iter()
            .map(|&d| unit_vector(d, rng))
            .reduce(|acc, x| tensor_vec(&acc, &x))
            .expect("non-empty");
        rho += outer(&v, &v).scale(w);
    }
    BipartiteOperator::new(rho, dims[0], total / dims[0]).expect("dimensions are consistent")
}
