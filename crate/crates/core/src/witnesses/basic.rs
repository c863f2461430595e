use crate::error::{Error, Result};
use crate::maps;
use crate::states::{flip, max_entangled_projector, three_qubit_states};
use crate::tensor::{
    c, hermitian_operator_schmidt, outer, tensor_product, BipartiteOperator, CMatrix,
};

use super::{Family, ThreeQubitKind, Witness};

/// Swap operator `F`.
pub fn flip_witness(d: usize) -> Result<Witness> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("d = {d}, need d >= 2")));
    }
    Ok(Witness::new(flip(d), Family::Flip { d }))
}

/// `I ⊗ I − d P⁺_d`, the Choi matrix of the reduction map.
pub fn reduction_witness(d: usize) -> Result<Witness> {
    let op = BipartiteOperator::identity(d, d).combine(1.0, &max_entangled_projector(d)?, -(d as f64))?;
    Ok(Witness::new(op, Family::Reduction { d }))
}

/// `I ⊗ I − p d P⁺_d`, the Choi matrix of `X ↦ I tr X − pX`.
pub fn phi_p_witness(d: usize, p: f64) -> Result<Witness> {
    let (map, _) = maps::phi_p(d, p)?;
    Ok(Witness::new(map.choi().clone(), Family::PhiP { d, p }))
}

fn pauli_dot(v: &[f64; 3]) -> CMatrix {
    CMatrix::from_row_slice(
        2,
        2,
        &[c(v[2], 0.0), c(v[0], -v[1]), c(v[0], v[1]), c(-v[2], 0.0)],
    )
}

fn require_unit(v: &[f64; 3], name: &str) -> Result<()> {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (n - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidParameter(format!("{name} has norm {n}, expected 1")));
    }
    Ok(())
}

/// `2 I − B` with `B = a₁·σ ⊗ (b₁ + b₂)·σ + a₂·σ ⊗ (b₁ − b₂)·σ`.
pub fn chsh_witness(a1: [f64; 3], a2: [f64; 3], b1: [f64; 3], b2: [f64; 3]) -> Result<Witness> {
    for (v, name) in [(&a1, "a1"), (&a2, "a2"), (&b1, "b1"), (&b2, "b2")] {
        require_unit(v, name)?;
    }
    let sum: [f64; 3] = std::array::from_fn(|i| b1[i] + b2[i]);
    let diff: [f64; 3] = std::array::from_fn(|i| b1[i] - b2[i]);
    let bell = tensor_product(&pauli_dot(&a1), &pauli_dot(&sum))
        + tensor_product(&pauli_dot(&a2), &pauli_dot(&diff));
    let w = CMatrix::identity(4, 4).scale(2.0) - bell;
    Ok(Witness::new(BipartiteOperator::new(w, 2, 2)?, Family::Chsh))
}

/// A family of orthonormal bases of `C^d`, stored as unitary matrices whose
/// columns are the basis vectors.
#[derive(Debug, Clone)]
pub struct MubFamily {
    pub d: usize,
    pub bases: Vec<CMatrix>,
}

impl MubFamily {
    pub fn new(bases: Vec<CMatrix>) -> Result<Self> {
        let d = bases.first().map(|b| b.nrows()).unwrap_or(0);
        if d < 2 {
            return Err(Error::InvalidParameter("need at least one basis of dimension >= 2".into()));
        }
        for (i, b) in bases.iter().enumerate() {
            if b.nrows() != d || b.ncols() != d {
                return Err(Error::DimensionMismatch(format!("basis {i} is not {d}x{d}")));
            }
            let defect = (b.adjoint() * b - CMatrix::identity(d, d)).norm();
            if defect > 1e-9 {
                return Err(Error::InvalidParameter(format!("basis {i} is not orthonormal")));
            }
        }
        for i in 0..bases.len() {
            for j in (i + 1)..bases.len() {
                let overlaps = bases[i].adjoint() * &bases[j];
                let worst = overlaps
                    .iter()
                    .map(|z| (z.norm_sqr() - 1.0 / d as f64).abs())
                    .fold(0.0, f64::max);
                if worst > 1e-9 {
                    return Err(Error::InvalidParameter(format!(
                        "bases {i} and {j} are not mutually unbiased (deviation {worst:e})"
                    )));
                }
            }
        }
        Ok(Self { d, bases })
    }

    /// Entrywise complex conjugate of every basis.
    pub fn conjugate(&self) -> Self {
        Self {
            d: self.d,
            bases: self.bases.iter().map(|b| b.map(|z| z.conj())).collect(),
        }
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| n % k != 0)
}

/// Complete set of `d + 1` mutually unbiased bases for prime `d`.
///
/// For `d = 2` the order is: eigenbases of `σ₃`, `σ₁`, `σ₂`. For odd primes:
/// the computational basis followed by `e^{(k)}_j = d^{-1/2} Σ_x ω^{k x² + j x} e_x`.
pub fn prime_mubs(d: usize) -> Result<MubFamily> {
    if !is_prime(d) {
        return Err(Error::InvalidParameter(format!("d = {d} is not prime")));
    }
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let bases = if d == 2 {
        vec![
            CMatrix::identity(2, 2),
            CMatrix::from_row_slice(2, 2, &[c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)]),
            CMatrix::from_row_slice(2, 2, &[c(h, 0.0), c(h, 0.0), c(0.0, h), c(0.0, -h)]),
        ]
    } else {
        let amp = 1.0 / (d as f64).sqrt();
        let mut bases = vec![CMatrix::identity(d, d)];
        for k in 0..d {
            bases.push(CMatrix::from_fn(d, d, |x, j| {
                crate::states::root_of_unity(d, (k * x * x + j * x) as i64) * amp
            }));
        }
        bases
    };
    MubFamily::new(bases)
}

/// `W_m = λ_m I ⊗ I − Σ_{α<m} Σ_i |e⁽α⁾_i⟩⟨e⁽α⁾_i| ⊗ |f⁽α⁾_i⟩⟨f⁽α⁾_i|`, `λ_m = 1 + (m−1)/d`.
pub fn mub_witness(bases: &MubFamily, tilde: &MubFamily, m: usize) -> Result<Witness> {
    let d = bases.d;
    if tilde.d != d {
        return Err(Error::DimensionMismatch("basis families differ in dimension".into()));
    }
    if m == 0 || m > d + 1 || m > bases.bases.len() || m > tilde.bases.len() {
        return Err(Error::InvalidParameter(format!(
            "m = {m} must satisfy 1 <= m <= d + 1 and not exceed the number of supplied bases"
        )));
    }
    let lambda = 1.0 + (m as f64 - 1.0) / d as f64;
    let mut w = CMatrix::identity(d * d, d * d).scale(lambda);
    for alpha in 0..m {
        for i in 0..d {
            let e = bases.bases[alpha].column(i).into_owned();
            let f = tilde.bases[alpha].column(i).into_owned();
            w -= tensor_product(&outer(&e, &e), &outer(&f, &f));
        }
    }
    Ok(Witness::new(BipartiteOperator::new(w, d, d)?, Family::Mub { d, m }))
}

/// Witness built from the operator Schmidt decomposition of a state.
#[derive(Debug, Clone)]
pub struct RealignmentWitness {
    pub witness: Witness,
    /// `Σ_k λ_k`; the state is detected iff this exceeds one.
    pub ccnr_sum: f64,
    /// `tr(W ρ) = 1 − Σ_k λ_k`.
    pub trace_with_state: f64,
    /// `false` when `Σ λ_k ≤ 1`: the construction is returned but detects nothing.
    pub detects: bool,
}

/// `W = I − Σ_k G^A_k ⊗ G^B_k` over the nonzero terms of `ρ = Σ_k λ_k G^A_k ⊗ G^B_k`.
pub fn realignment_witness(rho: &BipartiteOperator) -> Result<RealignmentWitness> {
    rho.require_hermitian()?;
    let tr = rho.trace().re;
    if (tr - 1.0).abs() > 1e-8 {
        return Err(Error::Precondition(format!("state must have unit trace, got {tr}")));
    }
    let terms = hermitian_operator_schmidt(rho)?;
    let lmax = terms.first().map(|t| t.coefficient).unwrap_or(0.0);
    let (da, db) = rho.dims();
    let mut w = CMatrix::identity(da * db, da * db);
    let mut sum = 0.0;
    for t in terms.iter().filter(|t| t.coefficient > 1e-12 * lmax) {
        w -= tensor_product(&t.g_a, &t.g_b);
        sum += t.coefficient;
    }
    let op = BipartiteOperator::new(w, da, db)?;
    let trace_with_state = op.trace_with(rho)?;
    if sum <= 1.0 + 1e-9 {
        log::warn!("realignment sum {sum} <= 1: the witness detects nothing");
    }
    Ok(RealignmentWitness {
        witness: Witness::new(op, Family::Realignment { ccnr_sum: sum }),
        ccnr_sum: sum,
        trace_with_state,
        detects: sum > 1.0 + 1e-9,
    })
}

/// The three three-qubit operators, on `C² ⊗ C⁴`.
#[derive(Debug, Clone)]
pub struct ThreeQubitWitnesses {
    pub w: Witness,
    pub w_prime: Witness,
    pub w_double_prime: Witness,
}

pub fn three_qubit_witnesses() -> ThreeQubitWitnesses {
    let (ghz, wstate) = three_qubit_states();
    let id = BipartiteOperator::identity(2, 4);
    let pw = BipartiteOperator::projector(&wstate);
    let pg = BipartiteOperator::projector(&ghz);
    let make = |p: &BipartiteOperator, s: f64, kind| {
        Witness::new(id.combine(1.0, p, -s).expect("same dims"), Family::ThreeQubit { kind })
    };
    ThreeQubitWitnesses {
        w: make(&pw, 1.5, ThreeQubitKind::W),
        w_prime: make(&pw, 2.25, ThreeQubitKind::WPrime),
        w_double_prime: make(&pg, 4.0 / 3.0, ThreeQubitKind::WDoublePrime),
    }
}
