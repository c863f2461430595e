//! Dense complex linear algebra on bipartite Hilbert spaces.
//!
//! Every operator on `C^{d_A} ⊗ C^{d_B}` is stored as a `d_A d_B × d_A d_B`
//! matrix whose rows and columns are indexed row-major over `(i_A, i_B)`,
//! i.e. basis vector `e_i ⊗ f_k` sits at position `i * d_B + k`. The same
//! convention is used by `nalgebra`'s Kronecker product, so
//! `(A ⊗ B)[(i,k),(j,l)] = A[i,j] B[k,l]`.

use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector, SymmetricEigen, SVD};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Maximum `|X - X†|` entry for an operator to be flagged Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Input tolerance accepted by [`hermitian_spectrum`].
pub const SPECTRUM_INPUT_TOL: f64 = 1e-10;
/// Schmidt rank threshold, relative to the largest singular value.
pub const RANK_TOL: f64 = 1e-8;

pub(crate) const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub(crate) const ONE: C64 = C64 { re: 1.0, im: 0.0 };

pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Tensor factor selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

/// Kronecker product with row-major pairing of indices.
pub fn tensor_product(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn tensor_vec(a: &CVector, b: &CVector) -> CVector {
    a.kronecker(b)
}

/// Largest entry of `|X - X†|`.
pub fn hermitian_defect(m: &CMatrix) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch in max_abs_diff");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Matrix unit `E_ij` of size `n`.
pub fn matrix_unit(n: usize, i: usize, j: usize) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    m[(i, j)] = ONE;
    m
}

pub fn outer(u: &CVector, v: &CVector) -> CMatrix {
    u * v.adjoint()
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Real eigenvalues, sorted in descending order.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in the same order.
    pub eigenvectors: CMatrix,
}

impl Spectrum {
    pub fn min(&self) -> f64 {
        *self.eigenvalues.last().expect("empty spectrum")
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// Eigenvector belonging to the smallest eigenvalue.
    pub fn min_vector(&self) -> CVector {
        self.eigenvectors.column(self.eigenvalues.len() - 1).into_owned()
    }

    pub fn count_below(&self, threshold: f64) -> usize {
        self.eigenvalues.iter().filter(|&&l| l < threshold).count()
    }

    /// `V diag(λ) V†`.
    pub fn reconstruct(&self) -> CMatrix {
        let mut scaled = self.eigenvectors.clone();
        for (j, &l) in self.eigenvalues.iter().enumerate() {
            scaled.column_mut(j).scale_mut(l);
        }
        scaled * self.eigenvectors.adjoint()
    }
}

/// Makes the first non-negligible component of `v` real and positive.
fn fix_phase(mut v: CVector) -> CVector {
    let scale = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if let Some(z) = v.iter().find(|z| z.norm() > 1e-8 * scale).copied() {
        let phase = z.conj() / z.norm();
        v *= phase;
    }
    v
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues descending.
pub fn hermitian_spectrum(x: &CMatrix) -> Result<Spectrum> {
    let defect = hermitian_defect(x);
    if defect > SPECTRUM_INPUT_TOL {
        return Err(Error::NotHermitian(defect));
    }
    Ok(spectrum_unchecked(x))
}

pub(crate) fn spectrum_unchecked(x: &CMatrix) -> Spectrum {
    let sym = (x + x.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(sym);
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let eigenvalues = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        let v = fix_phase(eig.eigenvectors.column(i).into_owned());
        vectors.set_column(col, &v);
    }
    Spectrum {
        eigenvalues,
        eigenvectors: vectors,
    }
}

/// Singular values (descending) with the matching left and right singular vectors.
pub(crate) struct SortedSvd {
    pub values: Vec<f64>,
    pub u: CMatrix,
    pub v_t: CMatrix,
}

pub(crate) fn sorted_svd(m: &CMatrix) -> SortedSvd {
    let svd = SVD::new(m.clone(), true, true);
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested V^T");
    let k = svd.singular_values.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let mut su = CMatrix::zeros(u.nrows(), k);
    let mut sv = CMatrix::zeros(k, v_t.ncols());
    for (dst, &src) in order.iter().enumerate() {
        su.set_column(dst, &u.column(src));
        sv.set_row(dst, &v_t.row(src));
    }
    SortedSvd {
        values: order.iter().map(|&i| svd.singular_values[i]).collect(),
        u: su,
        v_t: sv,
    }
}

pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Numerical rank: singular values strictly above `tol`.
pub fn numerical_rank(m: &CMatrix, tol: f64) -> usize {
    if m.ncols() == 0 || m.nrows() == 0 {
        return 0;
    }
    singular_values(m).into_iter().filter(|&s| s > tol).count()
}

/// Operator on `C^{d_A} ⊗ C^{d_B}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteOperator {
    mat: CMatrix,
    d_a: usize,
    d_b: usize,
    hermitian: bool,
}

impl BipartiteOperator {
    pub fn new(mat: CMatrix, d_a: usize, d_b: usize) -> Result<Self> {
        if d_a == 0 || d_b == 0 {
            return Err(Error::InvalidParameter("factor dimensions must be positive".into()));
        }
        let n = d_a * d_b;
        if mat.nrows() != n || mat.ncols() != n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix cannot act on {d_a}⊗{d_b}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        Ok(Self::from_parts(mat, d_a, d_b))
    }

    fn from_parts(mat: CMatrix, d_a: usize, d_b: usize) -> Self {
        let hermitian = hermitian_defect(&mat) <= HERMITIAN_TOL;
        Self {
            mat,
            d_a,
            d_b,
            hermitian,
        }
    }

    pub fn identity(d_a: usize, d_b: usize) -> Self {
        Self::from_parts(CMatrix::identity(d_a * d_b, d_a * d_b), d_a, d_b)
    }

    pub fn zeros(d_a: usize, d_b: usize) -> Self {
        Self::from_parts(CMatrix::zeros(d_a * d_b, d_a * d_b), d_a, d_b)
    }

    /// `A ⊗ B` as a bipartite operator.
    pub fn product(a: &CMatrix, b: &CMatrix) -> Result<Self> {
        if !a.is_square() || !b.is_square() {
            return Err(Error::DimensionMismatch("factors must be square".into()));
        }
        Ok(Self::from_parts(tensor_product(a, b), a.nrows(), b.nrows()))
    }

    /// `|ψ⟩⟨ψ|` (not normalized).
    pub fn projector(psi: &PureState) -> Self {
        Self::from_parts(outer(psi.vec(), psi.vec()), psi.d_a(), psi.d_b())
    }

    pub fn mat(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    pub fn d_a(&self) -> usize {
        self.d_a
    }

    pub fn d_b(&self) -> usize {
        self.d_b
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.d_a, self.d_b)
    }

    /// Total dimension `D = d_A d_B`.
    pub fn dim(&self) -> usize {
        self.d_a * self.d_b
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn trace(&self) -> C64 {
        self.mat.trace()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_parts(self.mat.scale(s), self.d_a, self.d_b)
    }

    pub fn same_dims(&self, other: &Self) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(Error::DimensionMismatch(format!(
                "{}⊗{} vs {}⊗{}",
                self.d_a, self.d_b, other.d_a, other.d_b
            )));
        }
        Ok(())
    }

    /// `α·self + β·other`.
    pub fn combine(&self, alpha: f64, other: &Self, beta: f64) -> Result<Self> {
        self.same_dims(other)?;
        Ok(Self::from_parts(
            self.mat.scale(alpha) + other.mat.scale(beta),
            self.d_a,
            self.d_b,
        ))
    }

    /// `Re ⟨ψ|X|ψ⟩` for a vector in the full space.
    pub fn expectation(&self, psi: &CVector) -> f64 {
        psi.dotc(&(&self.mat * psi)).re
    }

    /// `Re tr(self · rho)`.
    pub fn trace_with(&self, rho: &Self) -> Result<f64> {
        self.same_dims(rho)?;
        let n = self.dim();
        let mut acc = ZERO;
        for i in 0..n {
            for k in 0..n {
                acc += self.mat[(i, k)] * rho.mat[(k, i)];
            }
        }
        Ok(acc.re)
    }

    /// Hilbert–Schmidt inner product `tr(self† other)`.
    pub fn hs_inner(&self, other: &Self) -> Result<C64> {
        self.same_dims(other)?;
        Ok(self.mat.dotc(&other.mat))
    }

    /// Partial transposition on one factor.
    pub fn partial_transpose(&self, side: Side) -> Self {
        let (da, db) = self.dims();
        let mut out = CMatrix::zeros(self.dim(), self.dim());
        for i in 0..da {
            for k in 0..db {
                for j in 0..da {
                    for l in 0..db {
                        let v = self.mat[(i * db + k, j * db + l)];
                        match side {
                            Side::B => out[(i * db + l, j * db + k)] = v,
                            Side::A => out[(j * db + k, i * db + l)] = v,
                        }
                    }
                }
            }
        }
        Self::from_parts(out, da, db)
    }

    /// Partial trace over `traced`; the result lives on the other factor.
    pub fn partial_trace(&self, traced: Side) -> CMatrix {
        let (da, db) = self.dims();
        match traced {
            Side::B => CMatrix::from_fn(da, da, |i, j| {
                (0..db).map(|k| self.mat[(i * db + k, j * db + k)]).sum()
            }),
            Side::A => CMatrix::from_fn(db, db, |k, l| {
                (0..da).map(|i| self.mat[(i * db + k, i * db + l)]).sum()
            }),
        }
    }

    /// Realigned `d_A² × d_B²` matrix `R[(i,j),(k,l)] = X[(i,k),(j,l)]`.
    ///
    /// Its singular values are the operator Schmidt coefficients of `X`.
    pub fn realign(&self) -> CMatrix {
        let (da, db) = self.dims();
        CMatrix::from_fn(da * da, db * db, |r, s| {
            let (i, j) = (r / da, r % da);
            let (k, l) = (s / db, s % db);
            self.mat[(i * db + k, j * db + l)]
        })
    }

    /// Block `X_ij` (a `d_B × d_B` matrix) of `X = Σ E_ij ⊗ X_ij`.
    pub fn block(&self, i: usize, j: usize) -> CMatrix {
        let db = self.d_b;
        self.mat.view((i * db, j * db), (db, db)).into_owned()
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        hermitian_spectrum(&self.mat)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.spectrum()?.min())
    }

    pub fn require_hermitian(&self) -> Result<()> {
        let defect = hermitian_defect(&self.mat);
        if defect > SPECTRUM_INPUT_TOL {
            return Err(Error::NotHermitian(defect));
        }
        Ok(())
    }

    /// Swaps the tensor factors: `F X F†`.
    pub fn swap_factors(&self) -> Self {
        let (da, db) = self.dims();
        let perm = |idx: usize| (idx % db) * da + idx / db;
        let n = self.dim();
        let mut out = CMatrix::zeros(n, n);
        for r in 0..n {
            for s in 0..n {
                out[(perm(r), perm(s))] = self.mat[(r, s)];
            }
        }
        Self::from_parts(out, db, da)
    }
}

impl std::ops::Add for &BipartiteOperator {
    type Output = BipartiteOperator;
    fn add(self, rhs: Self) -> BipartiteOperator {
        self.combine(1.0, rhs, 1.0).expect("dimension mismatch in operator sum")
    }
}

impl std::ops::Sub for &BipartiteOperator {
    type Output = BipartiteOperator;
    fn sub(self, rhs: Self) -> BipartiteOperator {
        self.combine(1.0, rhs, -1.0)
            .expect("dimension mismatch in operator difference")
    }
}

/// Schmidt data of a bipartite vector `ψ = Σ_k s_k u_k ⊗ v_k`.
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition {
    /// Nonincreasing Schmidt coefficients, `min(d_A, d_B)` of them.
    pub coefficients: Vec<f64>,
    /// `u_k` as columns (`d_A × min(d_A,d_B)`).
    pub left: CMatrix,
    /// `v_k` as columns (`d_B × min(d_A,d_B)`).
    pub right: CMatrix,
    pub rank: usize,
}

impl SchmidtDecomposition {
    pub fn reconstruct(&self) -> CVector {
        let (da, db) = (self.left.nrows(), self.right.nrows());
        let mut out = CVector::zeros(da * db);
        for (k, &s) in self.coefficients.iter().enumerate() {
            let term = tensor_vec(
                &self.left.column(k).into_owned(),
                &self.right.column(k).into_owned(),
            );
            out += term.scale(s);
        }
        out
    }
}

/// Vector in `C^{d_A} ⊗ C^{d_B}` with a lazily computed Schmidt decomposition.
#[derive(Debug, Clone)]
pub struct PureState {
    vec: CVector,
    d_a: usize,
    d_b: usize,
    schmidt: OnceLock<SchmidtDecomposition>,
}

impl PureState {
    pub fn new(vec: CVector, d_a: usize, d_b: usize) -> Result<Self> {
        if vec.len() != d_a * d_b {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} is not in {d_a}⊗{d_b}",
                vec.len()
            )));
        }
        Ok(Self {
            vec,
            d_a,
            d_b,
            schmidt: OnceLock::new(),
        })
    }

    pub fn product(a: &CVector, b: &CVector) -> Self {
        Self {
            vec: tensor_vec(a, b),
            d_a: a.len(),
            d_b: b.len(),
            schmidt: OnceLock::new(),
        }
    }

    pub fn vec(&self) -> &CVector {
        &self.vec
    }

    pub fn into_vec(self) -> CVector {
        self.vec
    }

    pub fn d_a(&self) -> usize {
        self.d_a
    }

    pub fn d_b(&self) -> usize {
        self.d_b
    }

    pub fn norm(&self) -> f64 {
        self.vec.norm()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroVector);
        }
        Self::new(self.vec.unscale(n), self.d_a, self.d_b)
    }

    /// `d_A × d_B` coefficient matrix `M[i,k] = ψ[(i,k)]`.
    pub fn coefficient_matrix(&self) -> CMatrix {
        CMatrix::from_fn(self.d_a, self.d_b, |i, k| self.vec[i * self.d_b + k])
    }

    pub fn schmidt(&self) -> Result<&SchmidtDecomposition> {
        if let Some(s) = self.schmidt.get() {
            return Ok(s);
        }
        let s = schmidt_decompose(self)?;
        Ok(self.schmidt.get_or_init(|| s))
    }

    pub fn schmidt_rank(&self) -> Result<usize> {
        Ok(self.schmidt()?.rank)
    }
}

/// Schmidt decomposition via SVD of the coefficient matrix.
pub fn schmidt_decompose(psi: &PureState) -> Result<SchmidtDecomposition> {
    if psi.norm() == 0.0 {
        return Err(Error::ZeroVector);
    }
    let svd = sorted_svd(&psi.coefficient_matrix());
    let smax = svd.values[0];
    let rank = svd.values.iter().filter(|&&s| s > RANK_TOL * smax).count();
    Ok(SchmidtDecomposition {
        coefficients: svd.values,
        left: svd.u,
        right: svd.v_t.transpose(),
        rank,
    })
}

/// `||ψ||_k² = Σ_{j ≤ k} s_j²` for a normalized vector.
pub fn k_norm(psi: &PureState, k: usize) -> Result<f64> {
    let d = psi.d_a().min(psi.d_b());
    if k == 0 || k > d {
        return Err(Error::InvalidParameter(format!("k = {k} outside 1..={d}")));
    }
    if (psi.norm() - 1.0).abs() > 1e-10 {
        return Err(Error::Precondition(format!(
            "k-norm needs a unit vector, got norm {}",
            psi.norm()
        )));
    }
    let s = psi.schmidt()?;
    Ok(s.coefficients.iter().take(k).map(|x| x * x).sum())
}

/// Hermitian, Hilbert–Schmidt orthonormal basis of `d × d` matrices:
/// `E_kk`, `(E_kl + E_lk)/√2` and `i(E_kl − E_lk)/√2` for `k < l`.
pub fn hermitian_basis(d: usize) -> Vec<CMatrix> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::with_capacity(d * d);
    for k in 0..d {
        out.push(matrix_unit(d, k, k));
    }
    for k in 0..d {
        for l in (k + 1)..d {
            let mut sym = CMatrix::zeros(d, d);
            sym[(k, l)] = c(h, 0.0);
            sym[(l, k)] = c(h, 0.0);
            out.push(sym);
            let mut asym = CMatrix::zeros(d, d);
            asym[(k, l)] = c(0.0, h);
            asym[(l, k)] = c(0.0, -h);
            out.push(asym);
        }
    }
    out
}

/// One term `λ G_A ⊗ G_B` of an operator Schmidt decomposition.
#[derive(Debug, Clone)]
pub struct OperatorSchmidtTerm {
    pub coefficient: f64,
    pub g_a: CMatrix,
    pub g_b: CMatrix,
}

/// Operator Schmidt decomposition of a Hermitian operator with Hermitian factors.
///
/// Expands `X` in the Hermitian bases of both factors, where the coefficient
/// matrix is real, and takes its real SVD.
pub fn hermitian_operator_schmidt(x: &BipartiteOperator) -> Result<Vec<OperatorSchmidtTerm>> {
    x.require_hermitian()?;
    let (da, db) = x.dims();
    let ba = hermitian_basis(da);
    let bb = hermitian_basis(db);
    let mut t = DMatrix::<f64>::zeros(da * da, db * db);
    for (mu, ha) in ba.iter().enumerate() {
        for (nu, hb) in bb.iter().enumerate() {
            let prod = tensor_product(ha, hb);
            // tr((H_A ⊗ H_B) X), real because every factor is Hermitian.
            t[(mu, nu)] = prod.dotc(x.mat()).re;
        }
    }
    let svd = SVD::new(t, true, true);
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested V^T");
    let mut terms: Vec<OperatorSchmidtTerm> = (0..svd.singular_values.len())
        .map(|m| {
            let g_a = ba
                .iter()
                .enumerate()
                .fold(CMatrix::zeros(da, da), |acc, (mu, h)| acc + h.scale(u[(mu, m)]));
            let g_b = bb
                .iter()
                .enumerate()
                .fold(CMatrix::zeros(db, db), |acc, (nu, h)| acc + h.scale(v_t[(m, nu)]));
            OperatorSchmidtTerm {
                coefficient: svd.singular_values[m],
                g_a,
                g_b,
            }
        })
        .collect();
    terms.sort_by(|a, b| b.coefficient.total_cmp(&a.coefficient));
    Ok(terms)
}

/// Sum of the operator Schmidt coefficients (trace norm of the realigned matrix).
pub fn realignment_norm(x: &BipartiteOperator) -> f64 {
    singular_values(&x.realign()).iter().sum()
}
