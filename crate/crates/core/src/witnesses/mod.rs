//! Witness constructors. Each returns the operator exactly as displayed in the
//! literature (unnormalized) together with a [`Family`] tag that carries the
//! analytic facts the classifier can use.

mod basic;
mod bell;
mod diagonal;
mod edge;
mod robertson;
mod spectral;

use serde::{Deserialize, Serialize};

use crate::maps::phi_p_k_positivity;
use crate::tensor::BipartiteOperator;

pub use basic::{
    chsh_witness, flip_witness, mub_witness, phi_p_witness, prime_mubs, realignment_witness,
    reduction_witness, three_qubit_witnesses, MubFamily, RealignmentWitness, ThreeQubitWitnesses,
};
pub use bell::bell_diagonal_witness;
pub use diagonal::{
    classify_w_abc, diagonal_type_witness, kossakowski_matrix, kossakowski_rotation,
    project_to_simplex, w_ab, w_ab_is_ew, w_abc, w_dk, w_dk_bell_form, CriterionResult,
    DiagonalTypeSpec, WAbcClassification,
};
pub use edge::{edge_steered_witness, EdgeMode, EdgeStatus, EdgeWitness};
pub use robertson::{
    antisymmetric_unitary_u0, robertson_breuer_hall, BreuerHallMap, RobertsonKind, RobertsonVariant,
};
pub use spectral::{spectral_k_schmidt_witness, SpectralVerdict, SpectralWitnessSpec};

/// Which three-qubit operator from the GHZ/W example.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThreeQubitKind {
    /// `I − (3/2)|W⟩⟨W|`
    W,
    /// `I − (9/4)|W⟩⟨W|`
    WPrime,
    /// `I − (4/3)|GHZ⟩⟨GHZ|`
    WDoublePrime,
}

/// Provenance of a witness plus whatever is known about it analytically.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Flip { d: usize },
    Reduction { d: usize },
    /// Choi matrix of `X ↦ I tr X − pX`.
    PhiP { d: usize, p: f64 },
    DiagonalType { a: Vec<Vec<f64>> },
    WAb { a: f64, b: f64 },
    WAbc { a: f64, b: f64, c: f64 },
    Wdk { d: usize, k: usize },
    /// Bell-diagonal witness from Weyl operators; `max_abs_c ≤ 1` guarantees block-positivity.
    BellDiagonal { d: usize, max_abs_c: f64 },
    BreuerHall { n: usize, variant: RobertsonVariant },
    Mub { d: usize, m: usize },
    Chsh,
    Realignment { ccnr_sum: f64 },
    /// Spectral construction; `t1` means the operator is `k`-block-positive,
    /// `t2` that it is not `(k+1)`-block-positive.
    SpectralK { k: usize, t1: bool, t2: bool },
    EdgeSteered { epsilon: f64 },
    ThreeQubit { kind: ThreeQubitKind },
    /// `A + B^Γ` with `A, B ⪰ 0` verified at construction.
    Decomposition,
    Unknown,
}

/// Decomposability answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decomposability {
    YesAnalytic,
    NoAnalytic,
    Unknown,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Flip { .. } => "flip",
            Family::Reduction { .. } => "reduction",
            Family::PhiP { .. } => "phi_p",
            Family::DiagonalType { .. } => "diagonal",
            Family::WAb { .. } => "w_ab",
            Family::WAbc { .. } => "w_abc",
            Family::Wdk { .. } => "w_dk",
            Family::BellDiagonal { .. } => "bell_diagonal",
            Family::BreuerHall { .. } => "breuer_hall",
            Family::Mub { .. } => "mub",
            Family::Chsh => "chsh",
            Family::Realignment { .. } => "realignment",
            Family::SpectralK { .. } => "spectral",
            Family::EdgeSteered { .. } => "edge_steered",
            Family::ThreeQubit { .. } => "three_qubit",
            Family::Decomposition => "decomposition",
            Family::Unknown => "unknown",
        }
    }

    /// Exact answer to "is the operator `k`-block-positive?", when the family
    /// has an analytic criterion for that `k`.
    pub fn analytic_k_block_positive(&self, k: usize) -> Option<bool> {
        match *self {
            Family::Flip { .. } | Family::Reduction { .. } => Some(k <= 1),
            Family::PhiP { d, p } => Some(k <= phi_p_k_positivity(d, p)),
            Family::WAb { a, b } => match k {
                1 => Some(a + b >= 1.0),
                _ => Some(a >= 1.0),
            },
            Family::WAbc { a, b, c } => {
                let cls = classify_w_abc(a, b, c).ok()?;
                match k {
                    1 => Some(cls.is_block_positive),
                    2 => Some(cls.is_positive || cls.is_3_schmidt),
                    _ => Some(cls.is_positive),
                }
            }
            Family::DiagonalType { ref a } => {
                let d = a.len();
                if k >= d {
                    DiagonalTypeSpec::from_rows(a).ok().map(|s| s.is_positive())
                } else {
                    None
                }
            }
            Family::Wdk { d, k: kk } => {
                if k == 1 || kk == 1 {
                    Some(true)
                } else if kk == d {
                    Some(false)
                } else if k >= d {
                    Some(false)
                } else {
                    None
                }
            }
            Family::BellDiagonal { max_abs_c, .. } if max_abs_c <= 1.0 && k == 1 => Some(true),
            Family::BreuerHall { variant, .. } if k == 1 => match variant {
                RobertsonVariant::ZDeformed { max_abs_z, .. } => Some(max_abs_z <= 1.0 + 1e-12),
                _ => Some(true),
            },
            Family::Mub { .. } | Family::Chsh | Family::Realignment { .. } if k == 1 => Some(true),
            Family::SpectralK { k: kk, t1, t2 } => {
                if t1 && k <= kk {
                    Some(true)
                } else if t2 && k > kk {
                    Some(false)
                } else {
                    None
                }
            }
            Family::Decomposition if k == 1 => Some(true),
            _ => None,
        }
    }

    /// Decomposability from family knowledge alone.
    pub fn decomposability(&self) -> Decomposability {
        use Decomposability::*;
        match *self {
            Family::Flip { .. } | Family::Reduction { .. } | Family::PhiP { .. } => YesAnalytic,
            Family::WAbc { a, b, c } => match classify_w_abc(a, b, c) {
                Ok(cls) if cls.is_indecomposable => NoAnalytic,
                Ok(cls) if cls.is_ew || cls.is_positive => YesAnalytic,
                _ => Unknown,
            },
            // every witness on C² ⊗ C² is decomposable
            Family::WAb { .. } | Family::Chsh => YesAnalytic,
            Family::Wdk { d, k } => {
                if k == 1 || k == d {
                    YesAnalytic
                } else {
                    NoAnalytic
                }
            }
            Family::BreuerHall { variant, .. } => match variant {
                RobertsonVariant::ZDeformed { all_unimodular, .. } if !all_unimodular => Unknown,
                _ => NoAnalytic,
            },
            Family::SpectralK { t1: true, .. } => YesAnalytic,
            Family::Decomposition => YesAnalytic,
            _ => Unknown,
        }
    }
}

/// A witness operator tagged with its family.
#[derive(Debug, Clone)]
pub struct Witness {
    pub op: BipartiteOperator,
    pub family: Family,
}

impl Witness {
    pub fn new(op: BipartiteOperator, family: Family) -> Self {
        Self { op, family }
    }

    pub fn untagged(op: BipartiteOperator) -> Self {
        Self {
            op,
            family: Family::Unknown,
        }
    }
}

/// Rebuilds the operator described by a family tag with default auxiliary
/// choices, when the tag alone determines it.
pub fn rebuild(family: &Family) -> Option<BipartiteOperator> {
    let w = match *family {
        Family::Flip { d } => flip_witness(d).ok()?,
        Family::Reduction { d } => reduction_witness(d).ok()?,
        Family::PhiP { d, p } => phi_p_witness(d, p).ok()?,
        Family::DiagonalType { ref a } => diagonal_type_witness(&DiagonalTypeSpec::from_rows(a).ok()?),
        Family::WAb { a, b } => w_ab(a, b).ok()?,
        Family::WAbc { a, b, c } => w_abc(a, b, c).ok()?,
        Family::Wdk { d, k } => w_dk(d, k).ok()?,
        Family::BreuerHall { n, variant: RobertsonVariant::BreuerHall } => {
            robertson_breuer_hall(n, &antisymmetric_unitary_u0(n), RobertsonKind::BreuerHall)
                .ok()?
                .witness
        }
        Family::BreuerHall { n, variant: RobertsonVariant::Block2xN } => {
            robertson_breuer_hall(n, &antisymmetric_unitary_u0(n), RobertsonKind::Block2xN)
                .ok()?
                .witness
        }
        Family::ThreeQubit { kind } => {
            let all = three_qubit_witnesses();
            match kind {
                ThreeQubitKind::W => all.w,
                ThreeQubitKind::WPrime => all.w_prime,
                ThreeQubitKind::WDoublePrime => all.w_double_prime,
            }
        }
        _ => return None,
    };
    Some(w.op)
}
