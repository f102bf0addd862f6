//! Bivector fields and the exact identities they satisfy.

pub mod actions;
pub mod field;
pub mod structures;

pub use actions::{diagonal_action_residual, multiplicativity_residual, poisson_action_residual, GbarPoint};
pub use field::{gradient, tangency_check, BivectorField, FieldDerivatives, IdentityResidual};
pub use structures::{
    bd_pi_at, bd_pi_field, evens_lu_at, evens_lu_field, mixed_product_at, mixed_product_field, CrossTerm,
    Translation,
};
