//! Quotients of multivariate polynomials.
//!
//! No gcd cancellation is attempted. Sums over a shared denominator keep that
//! denominator, which is enough to keep the chart functions used here small.

use std::fmt;

use crate::poly::{MultiPoly, Vars};
use crate::{ExactError, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct RationalFn<T> {
    num: MultiPoly<T>,
    den: MultiPoly<T>,
}

impl<T: Scalar> RationalFn<T> {
    pub fn new(num: MultiPoly<T>, den: MultiPoly<T>) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        if !crate::poly::same_vars(num.vars(), den.vars()) {
            return Err(ExactError::VariableMismatch);
        }
        Ok(Self { num, den }.normalized())
    }

    pub fn from_poly(p: MultiPoly<T>) -> Self {
        let den = MultiPoly::one(p.vars());
        Self { num: p, den }
    }

    pub fn constant(vars: &Vars, c: T) -> Self {
        Self::from_poly(MultiPoly::constant(vars, c))
    }

    fn normalized(self) -> Self {
        if self.num.is_zero() {
            return Self::from_poly(self.num);
        }
        if self.den.is_constant() {
            let c = self.den.constant_term();
            return Self::from_poly(self.num.scale(&(T::one() / c)));
        }
        if self.num == self.den {
            return Self::from_poly(MultiPoly::one(self.num.vars()));
        }
        self
    }

    pub fn numerator(&self) -> &MultiPoly<T> {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly<T> {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn eval(&self, point: &[T]) -> Result<T, ExactError> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(self.num.eval(point)? / d)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            }
            .normalized();
        }
        Self {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
        .normalized()
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::from_poly(MultiPoly::zero(self.vars()));
        }
        Self {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
        .normalized()
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, ExactError> {
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
        .normalized()
    }

    pub fn pow(&self, e: u32) -> Self {
        Self {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn diff(&self, var: &str) -> Result<Self, ExactError> {
        let i = crate::poly::index_of(self.vars(), var)?;
        Ok(self.diff_index(i))
    }

    /// Quotient rule.
    pub fn diff_index(&self, i: usize) -> Self {
        let dn = self.num.diff_index(i);
        let dd = self.den.diff_index(i);
        if dd.is_zero() {
            return Self {
                num: dn,
                den: self.den.clone(),
            }
            .normalized();
        }
        Self {
            num: &(&dn * &self.den) - &(&self.num * &dd),
            den: self.den.pow(2),
        }
        .normalized()
    }
}

impl<T: Scalar> From<MultiPoly<T>> for RationalFn<T> {
    fn from(p: MultiPoly<T>) -> Self {
        Self::from_poly(p)
    }
}

impl<T: Scalar> fmt::Display for RationalFn<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl<T: Scalar> fmt::Debug for RationalFn<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFn({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::vars;
    use crate::{int, rat, Rational};

    #[test]
    fn quotient_rule() {
        let v = vars(&["x", "y"]);
        let x = MultiPoly::<Rational>::var(&v, 0);
        let y = MultiPoly::<Rational>::var(&v, 1);
        let q = RationalFn::new(x.clone(), y.clone()).unwrap();
        let dq = q.diff("y").unwrap();
        assert_eq!(dq.eval(&[int(3), int(2)]).unwrap(), rat(-3, 4));
        assert_eq!(q.eval(&[int(1), int(0)]), Err(ExactError::ZeroDenominator));
        assert!(RationalFn::new(x, MultiPoly::zero(&v)).is_err());
    }

    #[test]
    fn arithmetic_round_trip() {
        let v = vars(&["x"]);
        let x = MultiPoly::<Rational>::var(&v, 0);
        let one = MultiPoly::one(&v);
        let a = RationalFn::new(one.clone(), &x + &one).unwrap();
        let b = RationalFn::new(&x + &one, one).unwrap();
        let p = a.mul(&b);
        assert_eq!(p.eval(&[int(5)]).unwrap(), int(1));
        let s = a.add(&a).sub(&a);
        assert_eq!(s.eval(&[int(1)]).unwrap(), rat(1, 2));
    }
}
