//! Reference states and structured operators: maximally entangled, isotropic,
//! Werner, Weyl/Bell families, circulant operators, UPB complements and the
//! three-qubit GHZ/W vectors.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{
    c, hermitian_defect, outer, BipartiteOperator, CMatrix, CVector, PureState, Side, C64, ONE,
    ZERO,
};

fn require_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("d = {d}, need d >= 2")));
    }
    Ok(())
}

fn require_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("p = {p} outside [0, 1]")));
    }
    Ok(())
}

/// `ψ⁺_d = (1/√d) Σ e_k ⊗ e_k`.
pub fn max_entangled(d: usize) -> Result<PureState> {
    require_dim(d)?;
    let amp = 1.0 / (d as f64).sqrt();
    let v = CVector::from_fn(d * d, |r, _| if r / d == r % d { c(amp, 0.0) } else { ZERO });
    PureState::new(v, d, d)
}

/// `P⁺_d = |ψ⁺_d⟩⟨ψ⁺_d|`.
pub fn max_entangled_projector(d: usize) -> Result<BipartiteOperator> {
    Ok(BipartiteOperator::projector(&max_entangled(d)?))
}

/// Swap operator `F(ψ ⊗ φ) = φ ⊗ ψ`.
pub fn flip(d: usize) -> BipartiteOperator {
    let mut f = CMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            f[(j * d + i, i * d + j)] = ONE;
        }
    }
    BipartiteOperator::new(f, d, d).expect("square by construction")
}

/// `ρ_p = (p/d²) I + (1 − p) P⁺_d`.
pub fn isotropic(d: usize, p: f64) -> Result<BipartiteOperator> {
    require_dim(d)?;
    require_probability(p)?;
    let id = BipartiteOperator::identity(d, d);
    id.combine(p / (d * d) as f64, &max_entangled_projector(d)?, 1.0 - p)
}

/// `ρ = p Q_S + (1 − p) Q_A` with unit-trace symmetric and antisymmetric
/// projectors `Q_S = (I + F)/(d(d+1))`, `Q_A = (I − F)/(d(d−1))`.
pub fn werner(d: usize, p: f64) -> Result<BipartiteOperator> {
    require_dim(d)?;
    require_probability(p)?;
    let df = d as f64;
    let id = BipartiteOperator::identity(d, d);
    let f = flip(d);
    let qs = id.combine(1.0, &f, 1.0)?.scale(1.0 / (df * (df + 1.0)));
    let qa = id.combine(1.0, &f, -1.0)?.scale(1.0 / (df * (df - 1.0)));
    qs.combine(p, &qa, 1.0 - p)
}

/// Index `(m, n)` of the Weyl operator `U_mn` on `C^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylIndex {
    pub d: usize,
    pub m: usize,
    pub n: usize,
}

impl WeylIndex {
    pub fn new(d: usize, m: usize, n: usize) -> Result<Self> {
        require_dim(d)?;
        if m >= d || n >= d {
            return Err(Error::InvalidParameter(format!(
                "Weyl index ({m},{n}) outside 0..{d}"
            )));
        }
        Ok(Self { d, m, n })
    }

    /// Index with components reduced mod `d` (negative values allowed).
    pub fn wrapped(d: usize, m: i64, n: i64) -> Result<Self> {
        require_dim(d)?;
        let di = d as i64;
        Self::new(d, m.rem_euclid(di) as usize, n.rem_euclid(di) as usize)
    }
}

/// `λ^k` with `λ = e^{2πi/d}`.
pub fn root_of_unity(d: usize, k: i64) -> C64 {
    let k = k.rem_euclid(d as i64) as f64;
    C64::from_polar(1.0, 2.0 * PI * k / d as f64)
}

/// `U_mn e_k = λ^{mk} e_{k+n}`: the phase acts first, then the shift.
pub fn weyl_operator(idx: WeylIndex) -> CMatrix {
    let WeylIndex { d, m, n } = idx;
    let mut u = CMatrix::zeros(d, d);
    for k in 0..d {
        u[((k + n) % d, k)] = root_of_unity(d, (m * k) as i64);
    }
    u
}

/// `|ψ_mn⟩ = (I ⊗ U_mn)|ψ⁺_d⟩`.
pub fn bell_vector(idx: WeylIndex) -> PureState {
    let d = idx.d;
    let amp = 1.0 / (d as f64).sqrt();
    let mut v = CVector::zeros(d * d);
    for k in 0..d {
        v[k * d + (k + idx.n) % d] = root_of_unity(d, (idx.m * k) as i64) * amp;
    }
    PureState::new(v, d, d).expect("length d^2")
}

pub fn bell_projector(idx: WeylIndex) -> BipartiteOperator {
    BipartiteOperator::projector(&bell_vector(idx))
}

/// `Π_n = Σ_m P_mn`, the projector onto `span{e_k ⊗ e_{k+n}}`.
pub fn subspace_projector(d: usize, n: usize) -> Result<BipartiteOperator> {
    require_dim(d)?;
    if n >= d {
        return Err(Error::InvalidParameter(format!("subspace index {n} outside 0..{d}")));
    }
    let mut p = CMatrix::zeros(d * d, d * d);
    for k in 0..d {
        let r = k * d + (k + n) % d;
        p[(r, r)] = ONE;
    }
    BipartiteOperator::new(p, d, d)
}

/// Which family of `d`-dimensional subspaces a circulant operator lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CirculantLayout {
    /// `Σ_n = span{e_i ⊗ e_{i+n}}`.
    Shifted,
    /// `Σ̃_n = span{e_i ⊗ e_{n−i}}`, where partial transposes of shifted
    /// operators live.
    Reflected,
}

/// `A = Σ_n Σ_ij a⁽ⁿ⁾_ij E_ij ⊗ E_{σ(i,n), σ(j,n)}` with `σ` set by the layout.
#[derive(Debug, Clone, PartialEq)]
pub struct CirculantOperator {
    pub d: usize,
    pub blocks: Vec<CMatrix>,
    pub layout: CirculantLayout,
}

impl CirculantOperator {
    pub fn new(blocks: Vec<CMatrix>) -> Result<Self> {
        let d = blocks.len();
        require_dim(d)?;
        if blocks.iter().any(|b| b.nrows() != d || b.ncols() != d) {
            return Err(Error::DimensionMismatch(format!(
                "circulant blocks must all be {d}x{d}"
            )));
        }
        Ok(Self {
            d,
            blocks,
            layout: CirculantLayout::Shifted,
        })
    }

    fn partner(&self, i: usize, n: usize) -> usize {
        match self.layout {
            CirculantLayout::Shifted => (i + n) % self.d,
            CirculantLayout::Reflected => (n + self.d - i) % self.d,
        }
    }

    pub fn is_hermitian(&self) -> bool {
        self.blocks.iter().all(|b| hermitian_defect(b) <= 1e-12)
    }

    pub fn assemble(&self) -> BipartiteOperator {
        let d = self.d;
        let mut x = CMatrix::zeros(d * d, d * d);
        for (n, a) in self.blocks.iter().enumerate() {
            for i in 0..d {
                for j in 0..d {
                    x[(i * d + self.partner(i, n), j * d + self.partner(j, n))] += a[(i, j)];
                }
            }
        }
        BipartiteOperator::new(x, d, d).expect("d^2 x d^2 by construction")
    }

    /// Coefficients of the partial transpose (on B) of a shifted circulant
    /// operator: `ã⁽ⁿ⁾_ij = a⁽ⁿ⁻ⁱ⁻ʲ⁾_ij`, living on the reflected subspaces.
    pub fn pt_coeffs(&self) -> Result<Self> {
        if self.layout != CirculantLayout::Shifted {
            return Err(Error::Precondition(
                "partial-transpose coefficients are defined for the shifted layout".into(),
            ));
        }
        let d = self.d;
        let blocks = (0..d)
            .map(|n| {
                CMatrix::from_fn(d, d, |i, j| {
                    let src = (n + 2 * d - i - j) % d;
                    self.blocks[src][(i, j)]
                })
            })
            .collect();
        Ok(Self {
            d,
            blocks,
            layout: CirculantLayout::Reflected,
        })
    }
}

/// Validates a list of product vectors as an orthonormal product family.
pub fn validate_product_family(vectors: &[PureState]) -> Result<()> {
    let Some(first) = vectors.first() else {
        return Err(Error::InvalidParameter("empty vector family".into()));
    };
    let dims = (first.d_a(), first.d_b());
    for (i, v) in vectors.iter().enumerate() {
        if (v.d_a(), v.d_b()) != dims {
            return Err(Error::DimensionMismatch(format!("vector {i} has different factors")));
        }
        if (v.norm() - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidParameter(format!("vector {i} is not normalized")));
        }
        if v.schmidt_rank()? != 1 {
            return Err(Error::InvalidParameter(format!("vector {i} is not a product vector")));
        }
        for (j, w) in vectors.iter().enumerate().skip(i + 1) {
            let overlap = v.vec().dotc(w.vec()).norm();
            if overlap > 1e-10 {
                return Err(Error::InvalidParameter(format!(
                    "vectors {i} and {j} are not orthogonal (|overlap| = {overlap:e})"
                )));
            }
        }
    }
    Ok(())
}

/// Projector onto the span of an orthonormal product family.
pub fn family_projector(vectors: &[PureState]) -> Result<BipartiteOperator> {
    validate_product_family(vectors)?;
    let (da, db) = (vectors[0].d_a(), vectors[0].d_b());
    let mut p = CMatrix::zeros(da * db, da * db);
    for v in vectors {
        p += outer(v.vec(), v.vec());
    }
    BipartiteOperator::new(p, da, db)
}

/// `X = I − Σ |α_i β_i⟩⟨α_i β_i|`: for an unextendible product basis this is
/// a PPT entangled operator (unnormalized).
pub fn upb_state(vectors: &[PureState]) -> Result<BipartiteOperator> {
    let pi = family_projector(vectors)?;
    let x = BipartiteOperator::identity(pi.d_a(), pi.d_b()).combine(1.0, &pi, -1.0)?;
    for op in [&x, &x.partial_transpose(Side::B)] {
        let min = op.min_eigenvalue()?;
        if min < -1e-10 {
            return Err(Error::InvalidParameter(format!(
                "complement is not PPT (min eigenvalue {min:e})"
            )));
        }
    }
    Ok(x)
}

/// GHZ and W states of three qubits, laid out as `C^2 ⊗ C^4`
/// (first qubit vs. the other two), basis `|abc⟩` at index `4a + 2b + c`.
pub fn three_qubit_states() -> (PureState, PureState) {
    let mut ghz = CVector::zeros(8);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    ghz[0] = c(h, 0.0);
    ghz[7] = c(h, 0.0);
    let mut w = CVector::zeros(8);
    let t = 1.0 / 3f64.sqrt();
    for idx in [1, 2, 4] {
        w[idx] = c(t, 0.0);
    }
    (
        PureState::new(ghz, 2, 4).expect("length 8"),
        PureState::new(w, 2, 4).expect("length 8"),
    )
}
