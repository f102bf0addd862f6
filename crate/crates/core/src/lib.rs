//! Wonderful compactifications of semisimple groups, the Poisson structures
//! induced on them by splittings of the double `g ⊕ g`, and Poisson GIT
//! quotients built from invariant rings, all in exact rational arithmetic.

pub mod charvar;
pub mod error;
pub mod experiment;
pub mod geometry;
pub mod git;
pub mod invariants;
pub mod lie;
pub mod models;
pub mod poisson;
pub mod sampling;

pub use error::{Result, WonderError};
pub use wonderland_exact as exact;
pub use wonderland_exact::{int, rat, Bivector, Matrix, Poly, RatFn, Rational};
