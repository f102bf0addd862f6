//! Sparse multivariate polynomials with a fixed graded-lexicographic term order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::{ExactError, Scalar};

/// Ordered list of indeterminate names, shared between polynomials.
pub type Vars = Arc<[String]>;

pub fn vars<S: AsRef<str>>(names: &[S]) -> Vars {
    names.iter().map(|s| s.as_ref().to_string()).collect()
}

/// Exponent vector. Ordered by total degree, then lexicographically with the
/// first variable most significant.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors of total degree `d` in `n` variables, in descending
/// graded-lex order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    if n == 0 {
        return if d == 0 { vec![Monomial(vec![])] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly<T> {
    vars: Vars,
    terms: BTreeMap<Monomial, T>,
}

impl<T: Scalar> MultiPoly<T> {
    pub fn zero(vars: &Vars) -> Self {
        Self {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Vars, c: T) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, T::one())
    }

    /// The `i`-th coordinate function.
    pub fn var(vars: &Vars, i: usize) -> Self {
        assert!(i < vars.len(), "variable index out of range");
        let mut p = Self::zero(vars);
        p.terms.insert(Monomial::unit(vars.len(), i), T::one());
        p
    }

    pub fn var_named(vars: &Vars, name: &str) -> Result<Self, ExactError> {
        let i = index_of(vars, name)?;
        Ok(Self::var(vars, i))
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated monomials and dropping zero coefficients.
    pub fn from_terms(
        vars: &Vars,
        terms: impl IntoIterator<Item = (Vec<u32>, T)>,
    ) -> Result<Self, ExactError> {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(ExactError::DimensionMismatch {
                    expected: vars.len(),
                    found: e.len(),
                });
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &T)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> T {
        self.terms.get(m).cloned().unwrap_or_else(T::zero)
    }

    pub fn constant_term(&self) -> T {
        self.coeff(&Monomial::one(self.nvars()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &T)> {
        self.terms.iter().next_back()
    }

    /// Total degree; zero for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Degree in each variable group (`group[i]` is the group of variable
    /// `i`) if the polynomial is multihomogeneous.
    pub fn multidegree(&self, group: &[usize]) -> Option<Vec<u32>> {
        let ngroups = group.iter().copied().max().map_or(0, |g| g + 1);
        let degs = |m: &Monomial| {
            let mut d = vec![0u32; ngroups];
            for (i, e) in m.0.iter().enumerate() {
                d[group[i]] += e;
            }
            d
        };
        let mut it = self.terms.keys().map(degs);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn scale(&self, s: &T) -> Self {
        if s.is_zero() {
            return Self::zero(&self.vars);
        }
        Self {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.clone() * s.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to a named variable.
    pub fn diff(&self, var: &str) -> Result<Self, ExactError> {
        let i = index_of(&self.vars, var)?;
        Ok(self.diff_index(i))
    }

    pub fn diff_index(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            out.terms.insert(m2, c.clone() * T::from_i64(e as i64));
        }
        out
    }

    pub fn eval(&self, point: &[T]) -> Result<T, ExactError> {
        if point.len() != self.nvars() {
            return Err(ExactError::DimensionMismatch {
                expected: self.nvars(),
                found: point.len(),
            });
        }
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = t * pow_scalar(x, e);
                    if t.is_zero() {
                        break;
                    }
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Substitutes `images[i]` for variable `i`; all images must share one
    /// variable set, which becomes the variable set of the result.
    pub fn compose(&self, images: &[MultiPoly<T>]) -> Result<Self, ExactError> {
        if images.len() != self.nvars() {
            return Err(ExactError::DimensionMismatch {
                expected: self.nvars(),
                found: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.vars.clone(),
            None => return Ok(self.clone()),
        };
        if images.iter().any(|p| !same_vars(&p.vars, &target)) {
            return Err(ExactError::VariableMismatch);
        }
        let max_e: Vec<u32> = (0..self.nvars())
            .map(|i| self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<Self>> = images
            .iter()
            .zip(&max_e)
            .map(|(p, &e)| {
                let mut v = vec![Self::one(&target)];
                for k in 1..=e as usize {
                    let next = &v[k - 1] * p;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Self::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over `target`, sending variable `i` to
    /// `target[mapping[i]]`.
    pub fn embed(&self, target: &Vars, mapping: &[usize]) -> Self {
        assert_eq!(mapping.len(), self.nvars());
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &k) in m.0.iter().enumerate() {
                e[mapping[i]] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Dense coefficient vector against a list of monomials; `None` if the
    /// polynomial has a term outside the list.
    pub fn coefficients_in(&self, basis: &[Monomial]) -> Option<Vec<T>> {
        let v: Vec<T> = basis.iter().map(|m| self.coeff(m)).collect();
        let covered = self.terms.keys().all(|m| basis.contains(m));
        covered.then_some(v)
    }

    pub fn from_coefficients(vars: &Vars, basis: &[Monomial], coeffs: &[T]) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in basis.iter().zip(coeffs) {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    fn check_vars(&self, other: &Self) {
        assert!(
            same_vars(&self.vars, &other.vars),
            "polynomial arithmetic across different variable sets: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }
}

pub fn same_vars(a: &Vars, b: &Vars) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub fn index_of(vars: &Vars, name: &str) -> Result<usize, ExactError> {
    vars.iter()
        .position(|v| v == name)
        .ok_or_else(|| ExactError::UnknownVariable(name.to_string()))
}

fn pow_scalar<T: Scalar>(x: &T, e: u32) -> T {
    let mut acc = T::one();
    for _ in 0..e {
        acc = acc * x.clone();
    }
    acc
}

impl<T: Scalar> Add for &MultiPoly<T> {
    type Output = MultiPoly<T>;

    fn add(self, rhs: Self) -> MultiPoly<T> {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<T: Scalar> Sub for &MultiPoly<T> {
    type Output = MultiPoly<T>;

    fn sub(self, rhs: Self) -> MultiPoly<T> {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<T: Scalar> Mul for &MultiPoly<T> {
    type Output = MultiPoly<T>;

    fn mul(self, rhs: Self) -> MultiPoly<T> {
        self.check_vars(rhs);
        let mut out = MultiPoly::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<T: Scalar> Neg for &MultiPoly<T> {
    type Output = MultiPoly<T>;

    fn neg(self) -> MultiPoly<T> {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl<T: Scalar> $tr for MultiPoly<T> {
            type Output = MultiPoly<T>;

            fn $f(self, rhs: Self) -> MultiPoly<T> {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Scalar> Neg for MultiPoly<T> {
    type Output = MultiPoly<T>;

    fn neg(self) -> MultiPoly<T> {
        -&self
    }
}

impl<T: Scalar> fmt::Display for MultiPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            let text = c.to_text();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            let mag = mag.strip_suffix("/1").map(str::to_string).unwrap_or(mag);
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], e)
                    }
                })
                .collect();
            match (factors.is_empty(), mag.as_str()) {
                (true, _) => write!(f, "{mag}")?,
                (false, "1") => write!(f, "{}", factors.join("*"))?,
                (false, _) => write!(f, "{}*{}", mag, factors.join("*"))?,
            }
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Debug for MultiPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}
