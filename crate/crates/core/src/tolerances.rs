/// Every numerical threshold used by the crate, in one place.
///
/// Reports carry the record they were computed with, so a run can be
/// reproduced from its output.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Max |c[i][j][k] + c[j][i][k]| accepted by `validate`.
    pub antisymmetry_tol: f64,
    /// Max Jacobi residual accepted by `validate`.
    pub jacobi_tol: f64,
    /// Smallest admissible eigenvalue of the metric.
    pub spd_tol: f64,
    /// Residual for subalgebra and ideal membership tests.
    pub ideal_tol: f64,
    /// Relative singular-value threshold for rank decisions.
    pub rank_tol: f64,
    /// Rank decisions with a singular value within this factor of the
    /// threshold (either side) are flagged as numerically marginal.
    pub marginal_band: f64,
    /// Sup-norm threshold on the trace covector for unimodularity.
    pub unimodular_tol: f64,
    /// Tolerance for algebraic identities (mean-curvature identity, the two
    /// λ₀ routes for groups).
    pub identity_tol: f64,
    /// Residual ‖(A − λ)v‖_w / ‖v‖_w at which the eigensolver stops.
    pub solver_tol: f64,
    pub max_iters: usize,
    /// Run the dense cross-check for operators up to this size.
    pub dense_check_max: usize,
    /// Allowed iterative/dense disagreement.
    pub dense_agreement_tol: f64,
    /// Allowed negative slack in inequality checks.
    pub ineq_tol: f64,
    /// Allowed |λ₀(L₀) − λ₀(S)| in the closed-fiber equality check.
    pub unitary_tol: f64,
    /// Allowed negative λ₀ for operators that are nonnegative in theory.
    pub eig_tol: f64,
    /// Highest Fourier mode scanned on warped products.
    pub m_max: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            antisymmetry_tol: 1e-12,
            jacobi_tol: 1e-10,
            spd_tol: 1e-12,
            ideal_tol: 1e-10,
            rank_tol: 1e-9,
            marginal_band: 100.0,
            unimodular_tol: 1e-10,
            identity_tol: 1e-9,
            solver_tol: 1e-8,
            max_iters: 200_000,
            dense_check_max: 512,
            dense_agreement_tol: 1e-9,
            ineq_tol: 1e-8,
            unitary_tol: 1e-6,
            eig_tol: 1e-8,
            m_max: 8,
        }
    }
}

impl Tolerances {
    /// Tighter thresholds for runs on exactly representable fixtures.
    pub fn strict() -> Self {
        Tolerances {
            jacobi_tol: 1e-12,
            ideal_tol: 1e-12,
            unimodular_tol: 1e-12,
            identity_tol: 1e-11,
            solver_tol: 1e-9,
            dense_agreement_tol: 1e-10,
            ineq_tol: 1e-9,
            unitary_tol: 1e-8,
            eig_tol: 1e-9,
            ..Tolerances::default()
        }
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "default" => Some(Self::default()),
            "strict" => Some(Self::strict()),
            _ => None,
        }
    }
}
