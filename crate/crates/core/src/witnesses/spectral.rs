//! Spectral construction of Schmidt-number witnesses from `W = W₊ − W₋`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::states::{bell_vector, WeylIndex};
use crate::tensor::{k_norm, outer, BipartiteOperator, CMatrix, PureState};

use super::{Family, Witness};

/// `W = Σ_{α>L} λ_α P_α − Σ_{α≤L} λ_α P_α` over an orthonormal basis `ψ_α`.
#[derive(Debug, Clone)]
pub struct SpectralWitnessSpec {
    /// Unitary whose columns are `ψ_1, …, ψ_D`.
    pub basis: CMatrix,
    /// Nonnegative `λ_α`, strictly positive for `α > L`.
    pub lambdas: Vec<f64>,
    /// Number of negative directions `L`.
    pub l: usize,
    /// Target order `k` of the test.
    pub k: usize,
    pub d_a: usize,
    pub d_b: usize,
}

impl SpectralWitnessSpec {
    pub fn new(
        basis: CMatrix,
        lambdas: Vec<f64>,
        l: usize,
        k: usize,
        d_a: usize,
        d_b: usize,
    ) -> Result<Self> {
        let dim = d_a * d_b;
        if basis.nrows() != dim || basis.ncols() != dim || lambdas.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "need a {dim}x{dim} basis and {dim} eigenvalues"
            )));
        }
        let defect = (basis.adjoint() * &basis - CMatrix::identity(dim, dim)).norm();
        if defect > 1e-9 {
            return Err(Error::InvalidParameter(format!(
                "projectors must come from an orthonormal basis (defect {defect:e})"
            )));
        }
        if l == 0 || l >= dim {
            return Err(Error::InvalidParameter(format!("L = {l} must lie in 1..{dim}")));
        }
        if k == 0 || k > d_a.min(d_b) {
            return Err(Error::InvalidParameter(format!("k = {k} outside 1..={}", d_a.min(d_b))));
        }
        if lambdas.iter().any(|&x| x < 0.0 || !x.is_finite()) {
            return Err(Error::InvalidParameter("eigenvalues must be nonnegative".into()));
        }
        if lambdas[l..].iter().any(|&x| x <= 0.0) {
            return Err(Error::InvalidParameter("λ_α must be positive for α > L".into()));
        }
        Ok(Self { basis, lambdas, l, k, d_a, d_b })
    }

    /// `λ_1 = pd − 1` on `ψ⁺_d`, `λ = 1` on the remaining Bell vectors.
    /// `p = 1` is the reduction witness.
    pub fn max_entangled_family(d: usize, p: f64, k: usize) -> Result<Self> {
        let lambda1 = p * d as f64 - 1.0;
        if lambda1 < 0.0 {
            return Err(Error::InvalidParameter(format!("p = {p} < 1/d gives a negative λ_1")));
        }
        let mut basis = CMatrix::zeros(d * d, d * d);
        let mut col = 0;
        for m in 0..d {
            for n in 0..d {
                basis.set_column(col, bell_vector(WeylIndex::new(d, m, n)?).vec());
                col += 1;
            }
        }
        let mut lambdas = vec![1.0; d * d];
        lambdas[0] = lambda1;
        Self::new(basis, lambdas, 1, k, d, d)
    }

    fn vector(&self, alpha: usize) -> PureState {
        PureState::new(self.basis.column(alpha).into_owned(), self.d_a, self.d_b)
            .expect("column length matches")
    }

    pub fn assemble(&self) -> BipartiteOperator {
        let dim = self.d_a * self.d_b;
        let mut w = CMatrix::zeros(dim, dim);
        for (alpha, &lam) in self.lambdas.iter().enumerate() {
            let v = self.basis.column(alpha).into_owned();
            let sign = if alpha < self.l { -1.0 } else { 1.0 };
            w += outer(&v, &v).scale(sign * lam);
        }
        BipartiteOperator::new(w, self.d_a, self.d_b).expect("square by construction")
    }
}

/// Quantities of the spectral test for every `ℓ = 1..=min(d_A, d_B)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralVerdict {
    pub k: usize,
    /// `Σ_{α≤L} ‖ψ_α‖²_ℓ`, index `ℓ − 1`.
    pub norm_sums: Vec<f64>,
    /// `μ_ℓ`, or `None` where the sum above reaches one.
    pub mu: Vec<Option<f64>>,
    /// `λ_α ≥ μ_k` for all `α > L`: the operator is `k`-block-positive.
    pub t1: bool,
    /// `μ_{k+1} > λ_α` for all `α > L`: not `(k+1)`-block-positive.
    pub t2: bool,
    /// `k + 1` when both hold: the operator is a `(k+1)`-Schmidt witness.
    pub schmidt_witness_order: Option<usize>,
}

pub fn spectral_k_schmidt_witness(spec: &SpectralWitnessSpec) -> Result<(Witness, SpectralVerdict)> {
    let dmin = spec.d_a.min(spec.d_b);
    let negatives: Vec<PureState> = (0..spec.l).map(|a| spec.vector(a)).collect();
    let mut norm_sums = Vec::with_capacity(dmin);
    let mut weighted = Vec::with_capacity(dmin);
    for ell in 1..=dmin {
        let mut s = 0.0;
        let mut ws = 0.0;
        for (alpha, psi) in negatives.iter().enumerate() {
            let n = k_norm(psi, ell)?;
            s += n;
            ws += spec.lambdas[alpha] * n;
        }
        norm_sums.push(s);
        weighted.push(ws);
    }
    const TOL: f64 = 1e-12;
    let mu: Vec<Option<f64>> = norm_sums
        .iter()
        .zip(&weighted)
        .map(|(&s, &w)| (s < 1.0 - TOL).then(|| w / (1.0 - s)))
        .collect();

    let k = spec.k;
    let Some(mu_k) = mu[k - 1] else {
        return Err(Error::Precondition(format!(
            "Σ_(α≤L) ‖ψ_α‖²_k = {} must be < 1 for k = {k}",
            norm_sums[k - 1]
        )));
    };
    let positives = &spec.lambdas[spec.l..];
    let t1 = positives.iter().all(|&lam| lam >= mu_k - TOL);
    // at Schmidt rank min(d_A, d_B) every vector qualifies, so the operator
    // fails there exactly when some negative direction has λ_α > 0
    let t2 = k < dmin
        && match mu[k] {
            Some(mu_next) => positives.iter().all(|&lam| mu_next > lam + TOL),
            None => k + 1 == dmin && spec.lambdas[..spec.l].iter().any(|&lam| lam > TOL),
        };
    let verdict = SpectralVerdict {
        k,
        norm_sums,
        mu,
        t1,
        t2,
        schmidt_witness_order: (t1 && t2).then_some(k + 1),
    };
    let witness = Witness::new(spec.assemble(), Family::SpectralK { k, t1, t2 });
    Ok((witness, verdict))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_mu_values() {
        for d in 3..6 {
            let spec = SpectralWitnessSpec::max_entangled_family(d, 1.0, 1).unwrap();
            let (_, v) = spectral_k_schmidt_witness(&spec).unwrap();
            let df = d as f64;
            assert!((v.mu[0].unwrap() - 1.0).abs() < 1e-12);
            assert!((v.mu[1].unwrap() - 2.0 * (df - 1.0) / (df - 2.0)).abs() < 1e-12);
            assert_eq!(v.schmidt_witness_order, Some(2));
        }
    }

    #[test]
    fn precondition_failure_is_reported() {
        // k = d makes Σ‖ψ⁺‖²_k = 1
        let spec = SpectralWitnessSpec::max_entangled_family(3, 1.0, 3).unwrap();
        assert!(matches!(spectral_k_schmidt_witness(&spec), Err(Error::Precondition(_))));
    }
}
