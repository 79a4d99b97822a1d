//! Metric Lie algebras given by structure constants.
//!
//! Vectors are coordinate columns in the algebra's basis `e_1, …, e_n`.
//! Quotients `𝔤/𝔫` are realized on the metric complement `𝔫⊥` with the
//! projected bracket, which is how the differential of a Riemannian
//! submersion `G → G/N` identifies horizontal vectors.

mod algebra;
mod classify;
mod connection;
mod subspace;

pub use algebra::{Covector, MetricLieAlgebra, ValidationReport};
pub use classify::{classify, AmenabilityPath, ClassificationReport};
pub use connection::{
    koszul_connection, mean_curvature, mean_curvature_identity_residual, quotient_trace,
};
pub use subspace::{derived_subalgebra, quotient_algebra, restrict_to, Ideal};
