//! Unitarily invariant matrix norms.

use faer::{c64, Mat, Side};
use serde::{Deserialize, Serialize};

use crate::dense::DenseOperator;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    /// Largest singular value.
    #[default]
    Spectral,
    /// Square root of the sum of squared entry magnitudes.
    Frobenius,
}

impl NormKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            NormKind::Spectral => "spectral",
            NormKind::Frobenius => "frobenius",
        }
    }

    /// `||I||` on a space of dimension `dim`.
    pub fn identity_norm(&self, dim: usize) -> f64 {
        match self {
            NormKind::Spectral => 1.0,
            NormKind::Frobenius => (dim as f64).sqrt(),
        }
    }
}

impl std::str::FromStr for NormKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spectral" | "operator" => Ok(NormKind::Spectral),
            "frobenius" => Ok(NormKind::Frobenius),
            _ => Err(Error::Input(format!("unknown norm kind {s:?}"))),
        }
    }
}

// Relative defect below which a block takes the eigenvalue path.
const STRUCTURE_TOL: f64 = 1e-13;

fn block_defect(m: &Mat<c64>, sign: f64) -> f64 {
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            let a = m[(i, j)];
            scale = scale.max(a.norm());
            worst = worst.max((a - m[(j, i)].conj() * sign).norm());
        }
    }
    if scale == 0.0 {
        0.0
    } else {
        worst / scale
    }
}

fn max_abs_eigenvalue(h: &Mat<c64>) -> Result<f64> {
    let ev = h
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::Numerical(format!("eigenvalue solver: {e:?}")))?;
    Ok(ev.iter().fold(0.0f64, |acc, x| acc.max(x.abs())))
}

fn block_spectral_norm(m: &Mat<c64>) -> Result<f64> {
    if m.nrows() == 0 {
        return Ok(0.0);
    }
    if m.nrows() == 1 {
        return Ok(m[(0, 0)].norm());
    }
    if block_defect(m, 1.0) <= STRUCTURE_TOL {
        return max_abs_eigenvalue(m);
    }
    if block_defect(m, -1.0) <= STRUCTURE_TOL {
        let h = Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)] * c64::new(0.0, 1.0));
        return max_abs_eigenvalue(&h);
    }
    let sv = m
        .singular_values()
        .map_err(|e| Error::Numerical(format!("singular value solver: {e:?}")))?;
    Ok(sv.first().copied().unwrap_or(0.0))
}

/// Largest singular value. Hermitian and anti-Hermitian blocks use the
/// eigenvalue route.
pub fn spectral_norm(m: &DenseOperator) -> Result<f64> {
    m.blocks().iter().try_fold(0.0f64, |acc, b| Ok(acc.max(block_spectral_norm(b)?)))
}

pub fn frobenius_norm(m: &DenseOperator) -> f64 {
    m.blocks()
        .iter()
        .map(|b| {
            let mut s = 0.0;
            for j in 0..b.ncols() {
                for i in 0..b.nrows() {
                    s += b[(i, j)].norm_sqr();
                }
            }
            s
        })
        .sum::<f64>()
        .sqrt()
}

pub fn norm(m: &DenseOperator, kind: NormKind) -> Result<f64> {
    match kind {
        NormKind::Spectral => spectral_norm(m),
        NormKind::Frobenius => Ok(frobenius_norm(m)),
    }
}

/// `||U^† U - I||_2`, the departure of `u` from unitarity.
pub fn unitarity_drift(u: &DenseOperator) -> Result<f64> {
    let gram = u.adjoint().mul(u);
    spectral_norm(&gram.sub(&DenseOperator::identity(u.sectors())))
}
