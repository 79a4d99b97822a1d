//! Warped products `M₁ ×_ψ S¹` over a one-dimensional base.
//!
//! The Laplacian of `dt² + ψ(t)² dθ²` splits over Fourier modes `e^{imθ}`
//! into `L_m f = −ψ⁻¹(ψ f′)′ + m²ψ⁻² f` on `L²(ψ dt)`. The fibers have mean
//! curvature `−k ∇ln ψ`, and the associated Schrödinger operator on the base
//! is `S f = −f″ + V f` with `V = (ψ^{k/2})″ / ψ^{k/2}`.
//!
//! All operators use the geometer's sign convention `Δ = −div ∘ grad`.

mod eigen;
mod geometry;
mod operator;
mod spec;
mod verify;

pub use eigen::{dense_eigenvalues, lowest_eigenvalue, SpectrumEstimate};
pub use geometry::{Grid, WarpGeometry};
pub use operator::{build_base_laplacian, build_schrodinger, build_warped_mode, CyclicTridiag, DiscreteOperator};
pub use spec::{Base, Boundary, Warp, WarpedProductSpec};
pub use verify::{
    base_lambda0, bound_lambda0_s, lambda0_ess_tail, pushdown, pushdown_check, pushdown_slack, rayleigh_2d,
    verify_corollary_closed, verify_theorem_1, EqualityReport, InequalityReport, PushdownReport, TailPoint,
};
