//! Points, charts and the `G × G` action on the wonderful compactification.

pub mod action;
pub mod chart;
pub mod lagrangian;
pub mod proj;

pub use chart::{grassmann_chart_at, proj_chart_at, Chart, ChartPiece, PolyMat};
pub use lagrangian::{
    diagonal_point, orbit_dimension, orbit_dimension_sweep, pgl2_point_to_lagrangian, GroupPair, LagrangianPoint,
};
pub use proj::{boundary_detect, normalize_projective, segre, segre_factor, ProjMatrixPoint};
pub use action::{factor_field, field_at, infinitesimal_field};
