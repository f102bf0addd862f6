//! Antisymmetric 2-tensors at a point.

use crate::matrix::Matrix;
use crate::{ExactError, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Bivector<T> {
    entries: Matrix<T>,
}

impl<T: Scalar> Bivector<T> {
    pub fn new(entries: Matrix<T>) -> Result<Self, ExactError> {
        if !entries.is_square() {
            return Err(ExactError::DimensionMismatch {
                expected: entries.rows(),
                found: entries.cols(),
            });
        }
        let n = entries.rows();
        for i in 0..n {
            for j in i..n {
                if entries[(i, j)] != -entries[(j, i)].clone() {
                    return Err(ExactError::NotAntisymmetric(i, j));
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            entries: Matrix::zeros(n, n),
        }
    }

    /// `u ∧ v`, with matrix `u vᵀ − v uᵀ`.
    pub fn wedge(u: &[T], v: &[T]) -> Self {
        assert_eq!(u.len(), v.len(), "wedge of vectors of different length");
        let n = u.len();
        Self {
            entries: Matrix::from_fn(n, n, |i, j| {
                u[i].clone() * v[j].clone() - v[i].clone() * u[j].clone()
            }),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[(i, j)]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self {
            entries: self.entries.add(&rhs.entries),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self {
            entries: self.entries.sub(&rhs.entries),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        Self {
            entries: self.entries.scale(s),
        }
    }

    /// Image under a linear map with matrix `j` (target × source): `J Λ Jᵀ`.
    pub fn push_forward(&self, j: &Matrix<T>) -> Self {
        assert_eq!(j.cols(), self.dim(), "Jacobian does not match bivector");
        Self {
            entries: j.mul(&self.entries).mul(&j.transpose()),
        }
    }

    /// `Σ_{ij} Λ_ij df_i dg_j`.
    pub fn bracket_eval(&self, df: &[T], dg: &[T]) -> Result<T, ExactError> {
        let n = self.dim();
        for v in [df, dg] {
            if v.len() != n {
                return Err(ExactError::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
        }
        let mut acc = T::zero();
        for i in 0..n {
            if df[i].is_zero() {
                continue;
            }
            let row = crate::matrix::dot(self.entries.row(i), dg);
            acc = acc + df[i].clone() * row;
        }
        Ok(acc)
    }

    /// The vector `Λ(df, ·)`.
    pub fn contract(&self, df: &[T]) -> Vec<T> {
        self.entries.transpose().mul_vec(df)
    }
}

impl<T: Scalar> std::fmt::Debug for Bivector<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Bivector({:?})", self.entries)
    }
}
