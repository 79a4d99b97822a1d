//! Spectral invariants of metric Lie algebras and numerical checks of
//! bottom-of-spectrum estimates for Riemannian submersions.
//!
//! The crate has three computational layers:
//!
//! * [`lie`]: structure constants, adjoint maps, the Levi-Civita connection
//!   of a left-invariant metric, structural classification and the mean
//!   curvature of ideals.
//! * [`group`]: closed-form bottom of spectrum and Cheeger constant of
//!   connected Lie groups, and the quotient lower bound for a normal subgroup.
//! * [`warped`]: finite-difference discretizations on warped products
//!   `M₁ ×_ψ S¹`, a lowest-eigenvalue solver, and the inequality checks built
//!   on top of them.
//!
//! [`fixtures`] holds the built-in catalog and the text fixture formats, and
//! [`report`] the CSV and text emitters shared by the CLI and the demo.

pub mod error;
pub mod fixtures;
pub mod group;
pub mod lie;
pub mod report;
pub mod tolerances;
pub mod warped;

pub use error::{Error, Result};
pub use tolerances::Tolerances;
