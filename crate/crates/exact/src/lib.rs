//! Exact arithmetic over the rationals: matrices, sparse multivariate
//! polynomials, rational functions and pointwise bivectors.
//!
//! The containers are generic over [`Scalar`]; the aliases below fix the
//! scalar to arbitrary-precision rationals, which is what the rest of the
//! workspace uses.

pub mod bivector;
pub mod error;
pub mod jet;
pub mod json;
pub mod matrix;
pub mod poly;
pub mod ratfn;
pub mod scalar;

pub use error::ExactError;
pub use num_traits::{One, Zero};
pub use matrix::{dot, echelon_basis, Rref};
pub use poly::{monomials_of_degree, vars, Monomial, Vars};
pub use scalar::{int, rat, Scalar};

pub type Rational = num_rational::BigRational;
pub type Matrix = matrix::Matrix<Rational>;
pub type Poly = poly::MultiPoly<Rational>;
pub type RatFn = ratfn::RationalFn<Rational>;
pub type Bivector = bivector::Bivector<Rational>;
pub type Jet2 = jet::Jet2<Rational>;
