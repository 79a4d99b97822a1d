use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::eigen::{lowest_eigenvalue, SpectrumEstimate};
use super::geometry::WarpGeometry;
use super::operator::{
    build_base_laplacian, build_schrodinger, build_warped_mode, schrodinger_from_geometry, DiscreteOperator, NeumannEnd,
};
use super::spec::{Base, Boundary, WarpedProductSpec};
use crate::{Error, Result, Tolerances};

/// `λ₀(M₂) ≥ λ₀(S) + λ₀(F)·min ψ⁻²`, checked on the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityReport {
    pub grid_n: usize,
    pub lambda0_s: f64,
    pub residual_s: f64,
    /// `λ₀(L_m)` for `m = 0..=m_max`.
    pub modes: Vec<SpectrumEstimate>,
    /// `min_m λ₀(L_m)`.
    pub lambda0_total: f64,
    pub argmin_mode: usize,
    pub fiber_term: f64,
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
}

/// `λ₀(M₂) = λ₀(S)` for closed fibers, via the similarity `f ↦ √ψ f`.
#[derive(Debug, Clone, PartialEq)]
pub struct EqualityReport {
    pub grid_n: usize,
    pub lambda0_l0: f64,
    pub lambda0_s: f64,
    pub difference: f64,
    /// `‖S(√ψ v) − λ₀(L₀)√ψ v‖ / ‖√ψ v‖` for the `L₀` ground state `v`.
    pub conjugation_residual: f64,
    pub lambda0_total: f64,
    pub argmin_mode: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PushdownReport {
    pub samples: usize,
    pub min_slack: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailPoint {
    pub cutoff: f64,
    pub lambda0: f64,
    pub residual: f64,
    pub nodes: usize,
}

fn check_tail_grid(n: usize) -> Result<()> {
    if n < 16 {
        return Err(Error::Precondition(format!("grid_n must be at least 16, got {n}")));
    }
    Ok(())
}

fn require_circle_fiber(spec: &WarpedProductSpec) -> Result<()> {
    if spec.fiber_dim != 1 {
        return Err(Error::Unsupported(format!(
            "two-dimensional checks need fiber dimension 1, got {}",
            spec.fiber_dim
        )));
    }
    Ok(())
}

fn scan_modes(spec: &WarpedProductSpec, grid_n: usize, tols: &Tolerances) -> Result<(Vec<SpectrumEstimate>, f64, usize)> {
    let mut modes = Vec::with_capacity(tols.m_max + 1);
    for m in 0..=tols.m_max {
        modes.push(lowest_eigenvalue(&build_warped_mode(spec, m, grid_n)?, tols)?);
    }
    let (argmin, best) = modes
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.lambda0.partial_cmp(&b.1.lambda0).unwrap())
        .map(|(i, e)| (i, e.lambda0))
        .unwrap();
    Ok((modes, best, argmin))
}

pub fn verify_theorem_1(spec: &WarpedProductSpec, grid_n: usize, tols: &Tolerances) -> Result<InequalityReport> {
    require_circle_fiber(spec)?;
    let s = lowest_eigenvalue(&build_schrodinger(spec, grid_n)?, tols)?;
    let (modes, lambda0_total, argmin_mode) = scan_modes(spec, grid_n, tols)?;
    let geo = WarpGeometry::new(spec, grid_n)?;
    let fiber_term = spec.fiber_lambda0 * geo.min_inverse_square();
    let rhs = s.lambda0 + fiber_term;
    let slack = lambda0_total - rhs;
    Ok(InequalityReport {
        grid_n,
        lambda0_s: s.lambda0,
        residual_s: s.residual,
        modes,
        lambda0_total,
        argmin_mode,
        fiber_term,
        rhs,
        slack,
        holds: slack >= -tols.ineq_tol,
    })
}

pub fn verify_corollary_closed(spec: &WarpedProductSpec, grid_n: usize, tols: &Tolerances) -> Result<EqualityReport> {
    require_circle_fiber(spec)?;
    let s_op = build_schrodinger(spec, grid_n)?;
    let s = lowest_eigenvalue(&s_op, tols)?;
    let (modes, lambda0_total, argmin_mode) = scan_modes(spec, grid_n, tols)?;
    let l0 = &modes[0];

    let geo = WarpGeometry::new(spec, grid_n)?;
    let u: Vec<f64> = l0.eigvec.iter().zip(&geo.psi).map(|(v, p)| v * p.sqrt()).collect();
    let su = s_op.apply(&u);
    let num: f64 = su.iter().zip(&u).map(|(a, b)| (a - l0.lambda0 * b).powi(2)).sum();
    let den: f64 = u.iter().map(|v| v * v).sum();
    let conjugation_residual = (num / den).sqrt();

    let difference = (l0.lambda0 - s.lambda0).abs();
    let holds = difference <= tols.unitary_tol && (lambda0_total - l0.lambda0).abs() <= tols.unitary_tol;
    Ok(EqualityReport {
        grid_n,
        lambda0_l0: l0.lambda0,
        lambda0_s: s.lambda0,
        difference,
        conjugation_residual,
        lambda0_total,
        argmin_mode,
        holds,
    })
}

/// `h(x_i) = (Σ_j f(x_i, θ_j)² ψ(x_i) h_θ)^{1/2}` for `f2d` stored row-major
/// with `n_theta` fiber samples per base node.
pub fn pushdown(spec: &WarpedProductSpec, n_theta: usize, f2d: &[f64]) -> Result<Vec<f64>> {
    let geo = geometry_for(spec, n_theta, f2d)?;
    Ok(pushdown_on(&geo, n_theta, f2d))
}

fn geometry_for(spec: &WarpedProductSpec, n_theta: usize, f2d: &[f64]) -> Result<WarpGeometry> {
    if n_theta == 0 || f2d.len() % n_theta != 0 {
        return Err(Error::DimensionMismatch {
            expected: n_theta,
            got: f2d.len(),
        });
    }
    WarpGeometry::new(spec, f2d.len() / n_theta)
}

fn pushdown_on(geo: &WarpGeometry, n_theta: usize, f2d: &[f64]) -> Vec<f64> {
    let h_theta = 2.0 * std::f64::consts::PI / n_theta as f64;
    f2d.chunks(n_theta)
        .zip(&geo.psi)
        .map(|(row, p)| (row.iter().map(|v| v * v).sum::<f64>() * p * h_theta).sqrt())
        .collect()
}

/// Rayleigh quotient of a grid function on `M₁ ×_ψ S¹`, with the same
/// half-node face weights as the mode operators.
pub fn rayleigh_2d(geo: &WarpGeometry, n_theta: usize, f2d: &[f64]) -> f64 {
    let n = geo.len();
    let h = geo.grid.h;
    let h_theta = 2.0 * std::f64::consts::PI / n_theta as f64;
    let at = |i: usize, j: usize| f2d[i * n_theta + j];
    let mut radial = 0.0;
    for j in 0..n_theta {
        for i in 1..n {
            radial += geo.faces[i] * (at(i, j) - at(i - 1, j)).powi(2);
        }
        if geo.grid.periodic {
            radial += geo.faces[0] * (at(0, j) - at(n - 1, j)).powi(2);
        } else {
            if geo.grid.left == Boundary::Dirichlet {
                radial += geo.faces[0] * at(0, j).powi(2);
            }
            if geo.grid.right == Boundary::Dirichlet {
                radial += geo.faces[n] * at(n - 1, j).powi(2);
            }
        }
    }
    radial *= h_theta / h;
    let mut angular = 0.0;
    let mut mass = 0.0;
    for i in 0..n {
        let mut s = 0.0;
        for j in 0..n_theta {
            let next = at(i, (j + 1) % n_theta);
            s += (next - at(i, j)).powi(2);
            mass += at(i, j).powi(2) * geo.psi[i];
        }
        angular += s / geo.psi[i];
    }
    angular *= h / h_theta;
    mass *= h * h_theta;
    (radial + angular) / mass
}

/// `R(f) − R_S(h) − λ₀(F)·Σ h²ψ⁻²w / Σ h²w` with `h` the pushdown of `f`.
pub fn pushdown_slack(spec: &WarpedProductSpec, s_op: &DiscreteOperator, n_theta: usize, f2d: &[f64]) -> Result<f64> {
    let geo = geometry_for(spec, n_theta, f2d)?;
    let h = pushdown_on(&geo, n_theta, f2d);
    let r_total = rayleigh_2d(&geo, n_theta, f2d);
    let r_s = s_op.rayleigh(&h);
    let num: f64 = h.iter().zip(&geo.psi).zip(&s_op.weights).map(|((v, p), w)| v * v * w / (p * p)).sum();
    let den: f64 = h.iter().zip(&s_op.weights).map(|(v, w)| v * v * w).sum();
    Ok(r_total - r_s - spec.fiber_lambda0 * num / den)
}

/// Pushdown inequality over `samples` random grid functions.
pub fn pushdown_check(
    spec: &WarpedProductSpec,
    grid_n: usize,
    n_theta: usize,
    samples: usize,
    seed: u64,
    tols: &Tolerances,
) -> Result<PushdownReport> {
    require_circle_fiber(spec)?;
    let s_op = build_schrodinger(spec, grid_n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_slack = f64::INFINITY;
    let mut f = vec![0.0; grid_n * n_theta];
    for k in 0..samples {
        if k % 2 == 0 {
            f.iter_mut().for_each(|v| *v = rng.gen_range(-1.0..1.0));
        } else {
            // Smooth profile times a few fiber harmonics.
            let (a, b, c) = (rng.gen_range(0.5..4.0), rng.gen_range(-1.0..1.0), rng.gen_range(0.0..6.3));
            let harmonics: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect();
            for i in 0..grid_n {
                let t = i as f64 / grid_n as f64;
                let radial = (a * t * std::f64::consts::PI + c).sin() + b;
                for j in 0..n_theta {
                    let th = 2.0 * std::f64::consts::PI * j as f64 / n_theta as f64;
                    let fib: f64 = harmonics.iter().enumerate().map(|(m, w)| w * (m as f64 * th).cos()).sum();
                    f[i * n_theta + j] = radial * (1.0 + fib);
                }
            }
        }
        min_slack = min_slack.min(pushdown_slack(spec, &s_op, n_theta, &f)?);
    }
    Ok(PushdownReport {
        samples,
        min_slack,
        holds: min_slack >= -tols.ineq_tol,
    })
}

/// `λ₀` of `S` restricted to `(c, b]` for each cutoff `c`, with a Dirichlet
/// condition at the cut. The far end `b` stands in for infinity: it keeps a
/// Dirichlet condition, or is a free end `u′ = 0` when the base is Neumann.
pub fn lambda0_ess_tail(spec: &WarpedProductSpec, grid_n: usize, cutoffs: &[f64], tols: &Tolerances) -> Result<Vec<TailPoint>> {
    let (a, b) = match spec.base {
        Base::Interval { a, b, .. } => (a, b),
        Base::Circle { .. } => {
            return Err(Error::Precondition("tail estimates need an interval base".into()));
        }
    };
    if cutoffs.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Precondition("cutoffs must be strictly increasing".into()));
    }
    if let Some(c) = cutoffs.iter().find(|&&c| !(c > a && c < b)) {
        return Err(Error::Precondition(format!("cutoff {c} outside ({a}, {b})")));
    }
    let geo = WarpGeometry::new(spec, grid_n)?;
    check_tail_grid(grid_n)?;
    let s_op = schrodinger_from_geometry(&geo, spec, format!("S[{}]", spec.warp.name()), false, NeumannEnd::Free);
    let n = s_op.len();
    cutoffs
        .iter()
        .map(|&c| {
            let start = s_op.nodes.partition_point(|&x| x <= c);
            if n - start < 3 {
                return Err(Error::Precondition(format!("cutoff {c} leaves fewer than 3 nodes")));
            }
            let est = lowest_eigenvalue(&s_op.restrict(start, n), tols)?;
            Ok(TailPoint {
                cutoff: c,
                lambda0: est.lambda0,
                residual: est.residual,
                nodes: n - start,
            })
        })
        .collect()
}

/// `λ₀` of the discretized base Laplacian.
pub fn base_lambda0(spec: &WarpedProductSpec, grid_n: usize, tols: &Tolerances) -> Result<f64> {
    Ok(lowest_eigenvalue(&build_base_laplacian(spec, grid_n)?, tols)?.lambda0)
}

/// `(√λ₀(M₁) − C/2)²`, a lower bound for `λ₀(S)` when the fibers' mean
/// curvature `k|ψ′/ψ|` is at most `C ≤ 2√λ₀(M₁)`. The caller compares it
/// with `λ₀(S)`.
pub fn bound_lambda0_s(spec: &WarpedProductSpec, grid_n: usize, c: f64, tols: &Tolerances) -> Result<f64> {
    let geo = WarpGeometry::new(spec, grid_n)?;
    let (max_d, node) = geo.max_log_derivative();
    let mean_curv = spec.fiber_dim as f64 * max_d;
    if mean_curv > c * (1.0 + 1e-12) + 1e-14 {
        return Err(Error::Precondition(format!(
            "mean curvature {mean_curv} exceeds C = {c} at node {node} (x = {})",
            geo.grid.nodes[node]
        )));
    }
    let lambda0 = base_lambda0(spec, grid_n, tols)?;
    let root = lambda0.max(0.0).sqrt();
    if c > 2.0 * root * (1.0 + 1e-12) {
        return Err(Error::Precondition(format!("C = {c} exceeds 2√λ₀(M₁) = {}", 2.0 * root)));
    }
    Ok((root - c / 2.0).max(0.0).powi(2))
}
