//! JSON matrix files and product-vector fixtures.
//!
//! Numbers are written by `serde_json`, which emits the shortest decimal that
//! round-trips each `f64`, so a save/load cycle is bit-exact.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::tensor::{c, hermitian_defect, BipartiteOperator, CMatrix, CVector, PureState};

/// Tolerance for unit trace and Hermiticity when loading states.
pub const STATE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixKind {
    State,
    Witness,
    Operator,
}

/// On-disk operator: parallel row-major real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub d_a: usize,
    pub d_b: usize,
    pub kind: MatrixKind,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
    #[serde(default)]
    pub meta: BTreeMap<String, Value>,
}

impl MatrixFile {
    pub fn from_operator(op: &BipartiteOperator, kind: MatrixKind, meta: BTreeMap<String, Value>) -> Self {
        let m = op.mat();
        let rows = |f: fn(&crate::tensor::C64) -> f64| -> Vec<Vec<f64>> {
            (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| f(&m[(i, j)])).collect()).collect()
        };
        Self {
            d_a: op.d_a(),
            d_b: op.d_b(),
            kind,
            re: rows(|z| z.re),
            im: rows(|z| z.im),
            meta,
        }
    }

    /// Checks shapes (and, for states, unit trace and Hermiticity) and
    /// builds the operator.
    pub fn to_operator(&self) -> Result<BipartiteOperator> {
        if self.d_a == 0 || self.d_b == 0 {
            return Err(Error::Malformed("factor dimensions must be positive".into()));
        }
        let n = self.d_a * self.d_b;
        let shape_ok = |rows: &Vec<Vec<f64>>| rows.len() == n && rows.iter().all(|r| r.len() == n);
        if !shape_ok(&self.re) || !shape_ok(&self.im) {
            return Err(Error::Malformed(format!("re and im must both be {n}x{n}")));
        }
        let mat = CMatrix::from_fn(n, n, |i, j| c(self.re[i][j], self.im[i][j]));
        if mat.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Malformed("non-finite entry".into()));
        }
        if self.kind == MatrixKind::State {
            let defect = hermitian_defect(&mat);
            if defect > STATE_TOL {
                return Err(Error::NotHermitian(defect));
            }
            let tr = mat.trace();
            if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
                return Err(Error::Malformed(format!("state trace is {tr}, expected 1")));
            }
        }
        BipartiteOperator::new(mat, self.d_a, self.d_b)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut s = self.to_json()?;
        s.push('\n');
        fs::write(path, s)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawVector {
    re: Vec<f64>,
    #[serde(default)]
    im: Vec<f64>,
}

impl RawVector {
    fn to_vector(&self) -> Result<CVector> {
        if !self.im.is_empty() && self.im.len() != self.re.len() {
            return Err(Error::Malformed("re and im lengths differ".into()));
        }
        Ok(CVector::from_fn(self.re.len(), |i, _| {
            c(self.re[i], self.im.get(i).copied().unwrap_or(0.0))
        }))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawProduct {
    a: RawVector,
    b: RawVector,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawFamily {
    d_a: usize,
    d_b: usize,
    vectors: Vec<RawProduct>,
}

/// Loads a family of product vectors `a ⊗ b` (factors normalized on load).
pub fn product_family_from_json(s: &str) -> Result<Vec<PureState>> {
    let raw: RawFamily = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
    raw.vectors
        .iter()
        .map(|p| {
            let a = p.a.to_vector()?;
            let b = p.b.to_vector()?;
            if a.len() != raw.d_a || b.len() != raw.d_b {
                return Err(Error::DimensionMismatch(format!(
                    "factors must have lengths {} and {}",
                    raw.d_a, raw.d_b
                )));
            }
            if a.norm() == 0.0 || b.norm() == 0.0 {
                return Err(Error::ZeroVector);
            }
            Ok(PureState::product(&a.unscale(a.norm()), &b.unscale(b.norm())))
        })
        .collect()
}

pub fn load_product_family(path: impl AsRef<Path>) -> Result<Vec<PureState>> {
    product_family_from_json(&fs::read_to_string(path)?)
}

/// The five Tiles vectors on `C³ ⊗ C³`, bundled with the crate.
pub fn tiles_upb() -> Vec<PureState> {
    product_family_from_json(include_str!("../fixtures/tiles_upb.json")).expect("bundled fixture is valid")
}
