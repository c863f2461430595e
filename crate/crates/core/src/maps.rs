//! Linear maps on matrices through their Choi matrices.
//!
//! A map `Φ: M_{d_in} → M_{d_out}` is stored as `C_Φ = Σ_ij E_ij ⊗ Φ(E_ij)`
//! on `C^{d_in} ⊗ C^{d_out}`, always in the computational basis. Closures are
//! only used once, to build the descriptor.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sample;
use crate::tensor::{matrix_unit, outer, BipartiteOperator, CMatrix, Side, ZERO};

/// How the map is presented to the caller. The canonical storage is the Choi
/// matrix in both cases; the de Pillis matrix is `(T ⊗ id) C_Φ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Convention {
    Choi,
    DePillis,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MapDescriptor {
    d_in: usize,
    d_out: usize,
    choi: BipartiteOperator,
    pub convention: Convention,
}

const LINEARITY_TOL: f64 = 1e-9;

/// Builds the Choi descriptor of `apply` after checking superposition on a
/// few random combinations of matrix units.
pub fn choi_of_map<F>(apply: F, d_in: usize, d_out: usize, convention: Convention) -> Result<MapDescriptor>
where
    F: Fn(&CMatrix) -> CMatrix,
{
    if d_in == 0 || d_out == 0 {
        return Err(Error::InvalidParameter("map dimensions must be positive".into()));
    }
    let n = d_in * d_out;
    let mut choi = CMatrix::zeros(n, n);
    let mut images = Vec::with_capacity(d_in * d_in);
    for i in 0..d_in {
        for j in 0..d_in {
            let img = apply(&matrix_unit(d_in, i, j));
            if img.nrows() != d_out || img.ncols() != d_out {
                return Err(Error::DimensionMismatch(format!(
                    "map returned {}x{}, expected {d_out}x{d_out}",
                    img.nrows(),
                    img.ncols()
                )));
            }
            choi.view_mut((i * d_out, j * d_out), (d_out, d_out)).copy_from(&img);
            images.push(img);
        }
    }

    let mut rng = sample::rng_for(0x6c696e, 0);
    for trial in 0..3 {
        let coeffs = sample::ginibre(d_in, d_in, &mut rng);
        let predicted = coeffs
            .iter()
            .enumerate()
            .fold(CMatrix::zeros(d_out, d_out), |acc, (idx, z)| {
                // nalgebra iterates column-major
                let (i, j) = (idx % d_in, idx / d_in);
                acc + images[i * d_in + j].map(|x| x * z)
            });
        let actual = apply(&coeffs);
        let scale = 1.0 + predicted.norm();
        let err = (&actual - &predicted).norm() / scale;
        if err > LINEARITY_TOL {
            return Err(Error::Nonlinear(format!(
                "trial {trial}: relative deviation {err:e} from the linear extension"
            )));
        }
    }
    Ok(MapDescriptor {
        d_in,
        d_out,
        choi: BipartiteOperator::new(choi, d_in, d_out)?,
        convention,
    })
}

impl MapDescriptor {
    pub fn from_choi(choi: BipartiteOperator) -> Self {
        Self {
            d_in: choi.d_a(),
            d_out: choi.d_b(),
            choi,
            convention: Convention::Choi,
        }
    }

    pub fn from_depillis(j: BipartiteOperator) -> Self {
        Self {
            convention: Convention::DePillis,
            ..Self::from_choi(j.partial_transpose(Side::A))
        }
    }

    pub fn d_in(&self) -> usize {
        self.d_in
    }

    pub fn d_out(&self) -> usize {
        self.d_out
    }

    pub fn choi(&self) -> &BipartiteOperator {
        &self.choi
    }

    pub fn depillis(&self) -> BipartiteOperator {
        self.choi.partial_transpose(Side::A)
    }

    /// The matrix in the descriptor's own convention.
    pub fn representation(&self) -> BipartiteOperator {
        match self.convention {
            Convention::Choi => self.choi.clone(),
            Convention::DePillis => self.depillis(),
        }
    }

    /// `Φ(a) = tr_A[(aᵀ ⊗ I) C_Φ]`, i.e. `Φ(a)_kl = Σ_ij a_ij C[(i,k),(j,l)]`.
    pub fn apply(&self, a: &CMatrix) -> Result<CMatrix> {
        if a.nrows() != self.d_in || a.ncols() != self.d_in {
            return Err(Error::DimensionMismatch(format!(
                "map expects {0}x{0} input, got {1}x{2}",
                self.d_in,
                a.nrows(),
                a.ncols()
            )));
        }
        let mut out = CMatrix::zeros(self.d_out, self.d_out);
        for i in 0..self.d_in {
            for j in 0..self.d_in {
                let aij = a[(i, j)];
                if aij == ZERO {
                    continue;
                }
                out += self.choi.block(i, j) * aij;
            }
        }
        Ok(out)
    }

    /// Dual map: `tr[Φ#(A) B] = tr[A Φ(B)]`, with Choi matrix
    /// `C#[(a,j),(b,i)] = C[(i,b),(j,a)]`.
    pub fn dual(&self) -> Self {
        let (din, dout) = (self.d_in, self.d_out);
        let mut dual = CMatrix::zeros(din * dout, din * dout);
        for i in 0..din {
            for j in 0..din {
                for a in 0..dout {
                    for b in 0..dout {
                        dual[(a * din + j, b * din + i)] = self.choi.mat()[(i * dout + b, j * dout + a)];
                    }
                }
            }
        }
        Self {
            d_in: dout,
            d_out: din,
            choi: BipartiteOperator::new(dual, dout, din).expect("square by construction"),
            convention: self.convention,
        }
    }

    /// `(id ⊗ Φ) X` computed block by block.
    pub fn apply_extended(&self, x: &BipartiteOperator) -> Result<BipartiteOperator> {
        if x.d_b() != self.d_in {
            return Err(Error::DimensionMismatch(format!(
                "operator has B-factor {} but the map acts on dimension {}",
                x.d_b(),
                self.d_in
            )));
        }
        let da = x.d_a();
        let mut out = CMatrix::zeros(da * self.d_out, da * self.d_out);
        for i in 0..da {
            for j in 0..da {
                let img = self.apply(&x.block(i, j))?;
                out.view_mut((i * self.d_out, j * self.d_out), (self.d_out, self.d_out))
                    .copy_from(&img);
            }
        }
        BipartiteOperator::new(out, da, self.d_out)
    }

    /// Hilbert–Schmidt inner product of two maps, `Σ_ij ⟨Φ(E_ij), Ψ(E_ij)⟩`.
    pub fn inner(&self, other: &Self) -> Result<num_complex::Complex64> {
        self.choi.hs_inner(&other.choi)
    }

    /// Completely positive iff the Choi matrix is positive semidefinite.
    pub fn is_completely_positive(&self, tol: f64) -> Result<bool> {
        Ok(self.choi.min_eigenvalue()? >= -tol)
    }

    pub fn is_unital(&self, tol: f64) -> bool {
        let id = CMatrix::identity(self.d_in, self.d_in);
        let out = self.apply(&id).expect("input dimension matches");
        (out - CMatrix::identity(self.d_out, self.d_out)).norm() <= tol
    }

    pub fn is_trace_preserving(&self, tol: f64) -> bool {
        // tr Φ(X) = tr X for all X  ⇔  tr_B C = I
        let reduced = self.choi.partial_trace(Side::B);
        (reduced - CMatrix::identity(self.d_in, self.d_in)).norm() <= tol
    }
}

/// Transposition `X ↦ Xᵀ`; its Choi matrix is the flip.
pub fn transposition(d: usize) -> MapDescriptor {
    choi_of_map(|x| x.transpose(), d, d, Convention::Choi).expect("transposition is linear")
}

pub fn identity_map(d: usize) -> MapDescriptor {
    choi_of_map(|x| x.clone(), d, d, Convention::Choi).expect("identity is linear")
}

/// Reduction map `X ↦ I tr X − X`.
pub fn reduction(d: usize) -> MapDescriptor {
    phi_p_map(d, 1.0)
}

fn phi_p_map(d: usize, p: f64) -> MapDescriptor {
    choi_of_map(
        move |x| CMatrix::identity(d, d) * x.trace() - x.scale(p),
        d,
        d,
        Convention::Choi,
    )
    .expect("Φ_p is linear")
}

/// `Φ_p(X) = I tr X − pX` together with the largest `k` for which it is
/// `k`-positive (`0` when it is not positive at all).
///
/// `Φ_p` is `k`-positive iff `p ≤ 1/k`, so `k = min(d, ⌊1/p⌋)`.
pub fn phi_p(d: usize, p: f64) -> Result<(MapDescriptor, usize)> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("d = {d}, need d >= 2")));
    }
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::InvalidParameter(format!("p = {p}, need p > 0")));
    }
    Ok((phi_p_map(d, p), phi_p_k_positivity(d, p)))
}

pub fn phi_p_k_positivity(d: usize, p: f64) -> usize {
    (1..=d).rev().find(|&k| p * k as f64 <= 1.0 + 1e-12).unwrap_or(0)
}

/// Unital map `Φ[a,b,c]` on `M_3`: `Φ(E_ii) = (1/N) Σ_j A_ij E_jj`,
/// `Φ(E_ij) = −E_ij / N` for `i ≠ j`, with `N = a + b + c` and `A` the
/// circulant matrix with first row `(a, b, c)`.
pub fn phi_abc(a: f64, b: f64, c: f64) -> Result<MapDescriptor> {
    let n = a + b + c;
    if n <= 0.0 {
        return Err(Error::InvalidParameter("a + b + c must be positive".into()));
    }
    let alpha = [a, b, c];
    choi_of_map(
        move |x| {
            CMatrix::from_fn(3, 3, |k, l| {
                if k == l {
                    (0..3).map(|i| x[(i, i)] * alpha[(k + 3 - i) % 3]).sum::<num_complex::Complex64>() / n
                } else {
                    -x[(k, l)] / n
                }
            })
        },
        3,
        3,
        Convention::Choi,
    )
}

/// Given a negative eigenvector `ψ` of `(id ⊗ Φ)X`, returns the witness
/// `W = (id ⊗ Φ#)|ψ⟩⟨ψ|` and the eigenvalue `λ = tr(WX) < 0`.
/// `None` when `(id ⊗ Φ)X` has no eigenvalue below `-tol`.
pub fn witness_from_violator(
    map: &MapDescriptor,
    x: &BipartiteOperator,
    tol: f64,
) -> Result<Option<(BipartiteOperator, f64)>> {
    let image = map.apply_extended(x)?;
    let spec = image.spectrum()?;
    if spec.min() >= -tol {
        return Ok(None);
    }
    let psi = spec.min_vector();
    let proj = BipartiteOperator::new(outer(&psi, &psi), image.d_a(), image.d_b())?;
    let w = map.dual().apply_extended(&proj)?;
    Ok(Some((w, spec.min())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{flip, max_entangled_projector};
    use crate::tensor::max_abs_diff;

    #[test]
    fn transposition_choi_is_flip() {
        for d in 2..5 {
            assert_eq!(transposition(d).choi().mat(), flip(d).mat());
        }
    }

    #[test]
    fn identity_choi_is_d_pplus() {
        let d = 3;
        let expected = max_entangled_projector(d).unwrap().scale(d as f64);
        assert!(max_abs_diff(identity_map(d).choi().mat(), expected.mat()) < 1e-14);
    }

    #[test]
    fn nonlinear_map_is_rejected() {
        let r = choi_of_map(|x| x.component_mul(x), 2, 2, Convention::Choi);
        assert!(matches!(r, Err(Error::Nonlinear(_))));
    }

    #[test]
    fn phi_p_k_values() {
        let ks: Vec<usize> = [0.2, 0.3, 0.4, 0.6, 1.0, 1.5]
            .iter()
            .map(|&p| phi_p_k_positivity(3, p))
            .collect();
        assert_eq!(ks, vec![3, 3, 2, 1, 1, 0]);
    }

    #[test]
    fn phi_abc_is_unital() {
        let m = phi_abc(1.0, 1.0, 0.0).unwrap();
        assert!(m.is_unital(1e-14));
        assert!(!m.is_completely_positive(1e-12).unwrap());
    }
}
