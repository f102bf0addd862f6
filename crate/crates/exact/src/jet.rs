//! Second-order jets of functions at a point.

use crate::matrix::Matrix;
use crate::poly::MultiPoly;
use crate::ratfn::RationalFn;
use crate::{ExactError, Scalar};

/// Value, gradient and Hessian of a function at a fixed point.
#[derive(Clone, PartialEq)]
pub struct Jet2<T> {
    pub value: T,
    pub grad: Vec<T>,
    pub hess: Matrix<T>,
}

impl<T: Scalar> Jet2<T> {
    pub fn of_poly(p: &MultiPoly<T>, point: &[T]) -> Result<Self, ExactError> {
        let n = p.nvars();
        let firsts: Vec<MultiPoly<T>> = (0..n).map(|i| p.diff_index(i)).collect();
        let grad = firsts
            .iter()
            .map(|d| d.eval(point))
            .collect::<Result<Vec<_>, _>>()?;
        let mut hess = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = firsts[i].diff_index(j).eval(point)?;
                hess[(i, j)] = v.clone();
                hess[(j, i)] = v;
            }
        }
        Ok(Self {
            value: p.eval(point)?,
            grad,
            hess,
        })
    }

    pub fn of_ratfn(f: &RationalFn<T>, point: &[T]) -> Result<Self, ExactError> {
        let n = f.vars().len();
        let firsts: Vec<RationalFn<T>> = (0..n).map(|i| f.diff_index(i)).collect();
        let grad = firsts
            .iter()
            .map(|d| d.eval(point))
            .collect::<Result<Vec<_>, _>>()?;
        let mut hess = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = firsts[i].diff_index(j).eval(point)?;
                hess[(i, j)] = v.clone();
                hess[(j, i)] = v;
            }
        }
        Ok(Self {
            value: f.eval(point)?,
            grad,
            hess,
        })
    }
}

impl<T: Scalar> std::fmt::Debug for Jet2<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Jet2")
            .field("value", &self.value.to_text())
            .field("grad", &self.grad.iter().map(Scalar::to_text).collect::<Vec<_>>())
            .field("hess", &self.hess)
            .finish()
    }
}

/// Value and gradient of every entry of a polynomial matrix at a point.
pub fn matrix_jet1<T: Scalar>(
    entries: &[Vec<MultiPoly<T>>],
    point: &[T],
) -> Result<(Matrix<T>, Vec<Matrix<T>>), ExactError> {
    let rows = entries.len();
    let cols = entries.first().map_or(0, Vec::len);
    let n = point.len();
    let mut value = Matrix::zeros(rows, cols);
    let mut grads = vec![Matrix::zeros(rows, cols); n];
    for (i, row) in entries.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            value[(i, j)] = p.eval(point)?;
            for (k, g) in grads.iter_mut().enumerate() {
                g[(i, j)] = p.diff_index(k).eval(point)?;
            }
        }
    }
    Ok((value, grads))
}
