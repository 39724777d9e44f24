//! Differential-operator algebra and the operator catalog for the classical
//! beta ensembles.

pub mod catalog;
pub mod ensemble;
pub mod op;
pub mod systems;

pub use catalog::{catalog_density_op, catalog_resolvent_rhs};
pub use ensemble::{EnsembleSpec, Family, GaussianCoupling};
pub use op::{op_apply_to_weighted_poly, DiffOp, RatOp, WeightTag, WeightedOut};
pub use systems::{
    build_gaussian_system, build_jacobi_system, eliminate_scalar, eliminate_scalar_gaussian,
    MatrixODE,
};
