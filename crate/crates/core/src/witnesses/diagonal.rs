//! Diagonal-type witnesses `W[A] = Σ_ij a_ij E_ii ⊗ E_jj − Σ_{i≠j} E_ij ⊗ E_ij`
//! and their circulant special cases.

use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sample;
use crate::states::{bell_projector, subspace_projector, WeylIndex};
use crate::tensor::{c, BipartiteOperator, CMatrix};

use super::{Family, Witness};

/// Nonnegative `d × d` matrix `A` defining `W[A]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalTypeSpec {
    a: DMatrix<f64>,
}

impl DiagonalTypeSpec {
    pub fn new(a: DMatrix<f64>) -> Result<Self> {
        if !a.is_square() || a.nrows() < 2 {
            return Err(Error::InvalidParameter("A must be square with d >= 2".into()));
        }
        if let Some(x) = a.iter().find(|x| !(**x >= 0.0) || !x.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "A must be entrywise nonnegative, found {x}"
            )));
        }
        Ok(Self { a })
    }

    /// Circulant `A` with `a_{i,i+k} = α_k`.
    pub fn circulant(alpha: &[f64]) -> Result<Self> {
        let d = alpha.len();
        Self::new(DMatrix::from_fn(d, d, |i, j| alpha[(j + d - i) % d]))
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidParameter("A must be square".into()));
        }
        Self::new(DMatrix::from_fn(d, d, |i, j| rows[i][j]))
    }

    pub fn d(&self) -> usize {
        self.a.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.d()).map(|i| self.a.row(i).iter().copied().collect()).collect()
    }

    pub fn assemble(&self) -> BipartiteOperator {
        let d = self.d();
        let mut w = CMatrix::zeros(d * d, d * d);
        for i in 0..d {
            for j in 0..d {
                w[(i * d + j, i * d + j)] = c(self.a[(i, j)], 0.0);
                if i != j {
                    w[(i * d + i, j * d + j)] = c(-1.0, 0.0);
                }
            }
        }
        BipartiteOperator::new(w, d, d).expect("d^2 x d^2 by construction")
    }

    /// `W[A] ⪰ 0` iff the matrix with diagonal `a_ii` and all off-diagonal
    /// entries `−1` is positive semidefinite (the other diagonal entries
    /// `a_ij ≥ 0` decouple).
    pub fn is_positive(&self) -> bool {
        let d = self.d();
        let dm = DMatrix::from_fn(d, d, |i, j| if i == j { self.a[(i, i)] } else { -1.0 });
        dm.symmetric_eigen().eigenvalues.min() >= -1e-12
    }

    /// `f(t) = 1 − Σ_i t_i / B_i(t)` with `B_i = t_i + Σ_j a_ij t_j`.
    pub fn criterion(&self, t: &[f64]) -> f64 {
        let d = self.d();
        let mut s = 0.0;
        for i in 0..d {
            if t[i] <= 0.0 {
                continue;
            }
            let b: f64 = t[i] + (0..d).map(|j| self.a[(i, j)] * t[j]).sum::<f64>();
            s += t[i] / b;
        }
        1.0 - s
    }

    fn criterion_gradient(&self, t: &[f64]) -> Vec<f64> {
        let d = self.d();
        let mut g = vec![0.0; d];
        for i in 0..d {
            if t[i] <= 0.0 {
                // the term is continuous at t_i = 0 only from inside; its
                // one-sided slope in t_i is 1/B_i
                let b: f64 = (0..d).map(|j| self.a[(i, j)] * t[j]).sum();
                if b > 0.0 {
                    g[i] -= 1.0 / b;
                }
                continue;
            }
            let b: f64 = t[i] + (0..d).map(|j| self.a[(i, j)] * t[j]).sum::<f64>();
            for (k, gk) in g.iter_mut().enumerate() {
                let delta = if i == k { 1.0 } else { 0.0 };
                let num = delta * b - t[i] * (delta + self.a[(i, k)]);
                *gk -= num / (b * b);
            }
        }
        g
    }

    /// Minimizes the block-positivity criterion over the probability simplex.
    /// `W[A]` is block-positive iff the minimum is `≥ 0`.
    pub fn minimize_criterion(&self, seed: u64) -> CriterionResult {
        const STARTS: usize = 32;
        let d = self.d();
        let mut starts: Vec<Vec<f64>> = vec![vec![1.0 / d as f64; d]];
        for i in 0..d {
            for j in (i + 1)..d {
                let mut t = vec![0.0; d];
                t[i] = 0.5;
                t[j] = 0.5;
                starts.push(t);
            }
        }
        let mut rng = sample::rng_for(seed, 0);
        for _ in 0..STARTS {
            starts.push(sample::simplex_point(d, &mut rng));
        }
        // occasional sparse starts reach faces the flat Dirichlet rarely visits
        for _ in 0..d {
            let mut t = sample::simplex_point(d, &mut rng);
            let drop = rng.random_range(0..d);
            t[drop] = 0.0;
            let s: f64 = t.iter().sum();
            t.iter_mut().for_each(|x| *x /= s);
            starts.push(t);
        }

        let mut best = CriterionResult {
            min_value: f64::INFINITY,
            t: vec![],
        };
        for t0 in starts {
            let (v, t) = self.projected_descent(t0);
            if v < best.min_value {
                best = CriterionResult { min_value: v, t };
            }
        }
        best
    }

    fn projected_descent(&self, mut t: Vec<f64>) -> (f64, Vec<f64>) {
        let mut value = self.criterion(&t);
        let mut step = 0.1;
        for _ in 0..2000 {
            let g = self.criterion_gradient(&t);
            let mut improved = false;
            while step > 1e-14 {
                let trial: Vec<f64> = t.iter().zip(&g).map(|(x, gx)| x - step * gx).collect();
                let trial = project_to_simplex(&trial);
                let v = self.criterion(&trial);
                if v < value - 1e-16 {
                    let moved: f64 = trial.iter().zip(&t).map(|(a, b)| (a - b).abs()).sum();
                    t = trial;
                    value = v;
                    improved = true;
                    step *= 1.5;
                    if moved < 1e-13 {
                        return (value, t);
                    }
                    break;
                }
                step *= 0.5;
            }
            if !improved {
                break;
            }
        }
        (value, t)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriterionResult {
    pub min_value: f64,
    pub t: Vec<f64>,
}

impl CriterionResult {
    pub fn block_positive(&self, tol: f64) -> bool {
        self.min_value >= -tol
    }
}

/// Euclidean projection onto `{t ≥ 0, Σ t = 1}`.
pub fn project_to_simplex(v: &[f64]) -> Vec<f64> {
    let mut u = v.to_vec();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (i, &ui) in u.iter().enumerate() {
        cumsum += ui;
        let t = (cumsum - 1.0) / (i + 1) as f64;
        if ui - t > 0.0 {
            theta = t;
        }
    }
    v.iter().map(|&x| (x - theta).max(0.0)).collect()
}

pub fn diagonal_type_witness(spec: &DiagonalTypeSpec) -> Witness {
    Witness::new(spec.assemble(), Family::DiagonalType { a: spec.rows() })
}

/// `W[a,b]` on `C² ⊗ C²`.
pub fn w_ab(a: f64, b: f64) -> Result<Witness> {
    let spec = DiagonalTypeSpec::circulant(&[a, b])?;
    Ok(Witness::new(spec.assemble(), Family::WAb { a, b }))
}

/// Entanglement-witness condition for `W[a,b]`: `a < 1` and `a + b ≥ 1`.
pub fn w_ab_is_ew(a: f64, b: f64) -> bool {
    a >= 0.0 && b >= 0.0 && a < 1.0 && a + b >= 1.0
}

/// `W[a,b,c]` on `C³ ⊗ C³`: circulant diagonal type with `α = (a, b, c)`.
pub fn w_abc(a: f64, b: f64, c: f64) -> Result<Witness> {
    let spec = DiagonalTypeSpec::circulant(&[a, b, c])?;
    Ok(Witness::new(spec.assemble(), Family::WAbc { a, b, c }))
}

/// Verdicts of the `W[a,b,c]` classification theorem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WAbcClassification {
    pub is_positive: bool,
    pub is_block_positive: bool,
    pub is_ew: bool,
    pub is_indecomposable: bool,
    pub is_3_schmidt: bool,
    pub violated_condition: Option<String>,
}

/// Slack on the theorem's inequalities so grid points that sit exactly on a
/// boundary are not decided by rounding.
const BOUNDARY_TOL: f64 = 1e-12;

pub fn classify_w_abc(a: f64, b: f64, c: f64) -> Result<WAbcClassification> {
    let t = BOUNDARY_TOL;
    if a < 0.0 || b < 0.0 || c < 0.0 || !(a + b + c).is_finite() {
        return Err(Error::InvalidParameter(format!(
            "W[a,b,c] needs a, b, c >= 0, got ({a}, {b}, {c})"
        )));
    }
    let is_positive = a >= 2.0 - t;
    let violated = if a + b + c < 2.0 - t {
        Some("a + b + c >= 2".to_string())
    } else if a <= 1.0 && b * c < (1.0 - a) * (1.0 - a) - t {
        Some("a <= 1 implies bc >= (1 - a)^2".to_string())
    } else {
        None
    };
    let is_block_positive = violated.is_none();
    let is_ew = is_block_positive && !is_positive;
    let is_indecomposable = is_ew && 4.0 * b * c < (2.0 - a) * (2.0 - a) - t;
    let is_3_schmidt = is_ew && a >= 1.0 - t && b * c >= (2.0 - a) * (b + c) - t;
    let violated_condition = match (&violated, is_positive) {
        (Some(v), _) => Some(v.clone()),
        (None, true) => Some("0 <= a < 2 (operator is positive)".to_string()),
        (None, false) => None,
    };
    Ok(WAbcClassification {
        is_positive,
        is_block_positive,
        is_ew,
        is_indecomposable,
        is_3_schmidt,
        violated_condition,
    })
}

/// `W_{d,k}`: circulant with `α_0 = d − k`, `α_1 = … = α_{k−1} = 1`, rest `0`.
pub fn w_dk(d: usize, k: usize) -> Result<Witness> {
    if d < 2 || k == 0 || k > d {
        return Err(Error::InvalidParameter(format!("W_(d,k) needs 1 <= k <= d, d >= 2; got d={d}, k={k}")));
    }
    let mut alpha = vec![0.0; d];
    alpha[0] = (d - k) as f64;
    for a in alpha.iter_mut().take(k).skip(1) {
        *a = 1.0;
    }
    let spec = DiagonalTypeSpec::circulant(&alpha)?;
    Ok(Witness::new(spec.assemble(), Family::Wdk { d, k }))
}

/// Bell-diagonal form `(d + 1 − k) Π_0 + Σ_{ℓ<k} Π_ℓ − d P_00` of `W_{d,k}`.
pub fn w_dk_bell_form(d: usize, k: usize) -> Result<BipartiteOperator> {
    if d < 2 || k == 0 || k > d {
        return Err(Error::InvalidParameter(format!("need 1 <= k <= d, got d={d}, k={k}")));
    }
    let mut w = subspace_projector(d, 0)?.scale((d + 1 - k) as f64);
    for l in 1..k {
        w = &w + &subspace_projector(d, l)?;
    }
    w.combine(1.0, &bell_projector(WeylIndex::new(d, 0, 0)?), -(d as f64))
}

/// Diagonal entries of the traceless diagonal Gell-Mann matrices,
/// `F_ℓ = (Σ_{k≤ℓ} E_kk − ℓ E_{ℓ+1,ℓ+1}) / √(ℓ(ℓ+1))`, `ℓ = 1..d−1`.
fn diagonal_gell_mann(d: usize) -> DMatrix<f64> {
    DMatrix::from_fn(d - 1, d, |l, i| {
        let l1 = (l + 1) as f64;
        let norm = (l1 * (l1 + 1.0)).sqrt();
        if i <= l {
            1.0 / norm
        } else if i == l + 1 {
            -l1 / norm
        } else {
            0.0
        }
    })
}

/// `a_ij = (d−1)/d + Σ_{αβ} F_α(i) R_αβ F_β(j)` for an orthogonal `(d−1)×(d−1)` matrix `R`.
pub fn kossakowski_matrix(r: &DMatrix<f64>) -> Result<DiagonalTypeSpec> {
    let d = r.nrows() + 1;
    if !r.is_square() || d < 2 {
        return Err(Error::InvalidParameter("R must be square".into()));
    }
    let orth = (r.transpose() * r - DMatrix::identity(d - 1, d - 1)).amax();
    if orth > 1e-10 {
        return Err(Error::InvalidParameter(format!("R is not orthogonal (defect {orth:e})")));
    }
    let f = diagonal_gell_mann(d);
    let corr = f.transpose() * r * &f;
    let base = (d - 1) as f64 / d as f64;
    let a = corr.map(|x| (base + x).max(0.0));
    DiagonalTypeSpec::new(a)
}

/// Kossakowski witness for `d = 3` with a planar rotation by `angle`.
pub fn kossakowski_rotation(angle: f64) -> Result<Witness> {
    let (s, co) = angle.sin_cos();
    let r = DMatrix::from_row_slice(2, 2, &[co, -s, s, co]);
    let spec = kossakowski_matrix(&r)?;
    Ok(Witness::new(spec.assemble(), Family::DiagonalType { a: spec.rows() }))
}
