//! The explicit model `Ḡ = ℙ(M₂)` for `PGL₂`, and its Segre boundary.

use serde::{Deserialize, Serialize};
use wonderland_exact::{int, Matrix, Rational, Zero};

use crate::error::{Result, WonderError};

/// A nonzero square matrix up to scale, stored with its first nonzero entry
/// (row-major) equal to one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Matrix", into = "Matrix")]
pub struct ProjMatrixPoint {
    rep: Matrix,
}

impl TryFrom<Matrix> for ProjMatrixPoint {
    type Error = WonderError;

    fn try_from(m: Matrix) -> Result<Self> {
        Self::new(m)
    }
}

impl From<ProjMatrixPoint> for Matrix {
    fn from(p: ProjMatrixPoint) -> Matrix {
        p.rep
    }
}

impl ProjMatrixPoint {
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(WonderError::Invalid("projective matrix must be square".into()));
        }
        let lead = m
            .entries()
            .iter()
            .find(|x| !x.is_zero())
            .cloned()
            .ok_or(WonderError::ZeroPoint)?;
        Ok(Self {
            rep: m.scale(&(int(1) / lead)),
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::new(Matrix::identity(n)).expect("nonzero")
    }

    pub fn rep(&self) -> &Matrix {
        &self.rep
    }

    pub fn n(&self) -> usize {
        self.rep.rows()
    }

    /// `[g A h⁻¹]`.
    pub fn act(&self, g: &Matrix, h: &Matrix) -> Result<Self> {
        Self::new(g.mul(&self.rep).mul(&h.inverse()?))
    }

    /// Conjugation `[g A g⁻¹]`.
    pub fn conjugate(&self, g: &Matrix) -> Result<Self> {
        self.act(g, g)
    }
}

/// `det(rep) = 0`.
pub fn boundary_detect(p: &ProjMatrixPoint) -> bool {
    p.rep.determinant().is_zero()
}

/// Projective vector with its first nonzero entry equal to one.
pub fn normalize_projective(v: &[Rational]) -> Result<Vec<Rational>> {
    let lead = v
        .iter()
        .find(|x| !x.is_zero())
        .cloned()
        .ok_or(WonderError::ZeroPoint)?;
    Ok(v.iter().map(|x| x.clone() / lead.clone()).collect())
}

/// Column and row factors `([u], [v])` with `rep ∝ u vᵀ`.
pub fn segre_factor(p: &ProjMatrixPoint) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let r = p.rep.rank();
    if r != 1 {
        return Err(WonderError::NotRankOne(r));
    }
    let n = p.n();
    let (i, j) = (0..n * n)
        .map(|k| (k / n, k % n))
        .find(|&(i, j)| !p.rep[(i, j)].is_zero())
        .expect("nonzero");
    let u = normalize_projective(&p.rep.column(j))?;
    let v = normalize_projective(p.rep.row(i))?;
    Ok((u, v))
}

/// `[u vᵀ]`.
pub fn segre(u: &[Rational], v: &[Rational]) -> Result<ProjMatrixPoint> {
    ProjMatrixPoint::new(Matrix::from_fn(u.len(), v.len(), |i, j| {
        u[i].clone() * v[j].clone()
    }))
}
