use nalgebra::SymmetricEigen;

use super::operator::{CyclicTridiag, DiscreteOperator};
use crate::{Error, Result, Tolerances};

/// Lowest eigenpair of a discretized operator.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEstimate {
    pub lambda0: f64,
    /// Eigenvector in the operator's own variables, `‖v‖_w = 1`, positive sum.
    pub eigvec: Vec<f64>,
    /// `‖(A − λ₀)v‖_w / ‖v‖_w`.
    pub residual: f64,
    pub grid_n: usize,
    pub mode: Option<usize>,
    pub iterations: usize,
    /// Dense-solver value when the operator was small enough to check.
    pub dense_lambda0: Option<f64>,
}

/// LU of a diagonally dominant cyclic tridiagonal matrix, with the corner
/// handled by Sherman–Morrison.
struct CyclicSolver {
    // Thomas factors of the modified tridiagonal part.
    sub: Vec<f64>,
    diag: Vec<f64>,
    sup: Vec<f64>,
    // Sherman–Morrison data, absent without a corner term.
    corner: Option<(Vec<f64>, Vec<f64>, f64)>,
}

impl CyclicSolver {
    fn new(a: &CyclicTridiag, shift: f64) -> Self {
        let n = a.len();
        let mut d: Vec<f64> = a.diag.iter().map(|v| v - shift).collect();
        let off = a.off.clone();
        let wrap = if n > 2 { a.wrap } else { 0.0 };
        let mut sm = None;
        if wrap != 0.0 {
            let gamma = -d[0];
            d[0] -= gamma;
            d[n - 1] -= wrap * wrap / gamma;
            let mut u = vec![0.0; n];
            u[0] = gamma;
            u[n - 1] = wrap;
            let mut v = vec![0.0; n];
            v[0] = 1.0;
            v[n - 1] = wrap / gamma;
            sm = Some((u, v));
        }
        // Thomas: forward elimination factors.
        let mut diag = d;
        let sub = off.clone();
        let sup = off;
        for i in 1..n {
            let l = sub[i - 1] / diag[i - 1];
            diag[i] -= l * sup[i - 1];
        }
        let mut solver = CyclicSolver {
            sub,
            diag,
            sup,
            corner: None,
        };
        if let Some((u, v)) = sm {
            let z = solver.solve_tridiag(&u);
            let denom = 1.0 + v.iter().zip(&z).map(|(a, b)| a * b).sum::<f64>();
            solver.corner = Some((z, v, denom));
        }
        solver
    }

    fn solve_tridiag(&self, b: &[f64]) -> Vec<f64> {
        let n = b.len();
        let mut y = b.to_vec();
        for i in 1..n {
            let l = self.sub[i - 1] / self.diag[i - 1];
            y[i] -= l * y[i - 1];
        }
        y[n - 1] /= self.diag[n - 1];
        for i in (0..n - 1).rev() {
            y[i] = (y[i] - self.sup[i] * y[i + 1]) / self.diag[i];
        }
        y
    }

    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let mut y = self.solve_tridiag(b);
        if let Some((z, v, denom)) = &self.corner {
            let coef = v.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>() / denom;
            for (yi, zi) in y.iter_mut().zip(z) {
                *yi -= coef * zi;
            }
        }
        y
    }
}

/// All `LDLᵀ` pivots of `a − σ` positive, i.e. `σ` lies below the spectrum
/// (Sylvester's law of inertia). Only for matrices without a corner term.
fn below_spectrum(a: &CyclicTridiag, sigma: f64) -> bool {
    let mut d = a.diag[0] - sigma;
    if !(d > 0.0) {
        return false;
    }
    for i in 1..a.len() {
        d = a.diag[i] - sigma - a.off[i - 1] * a.off[i - 1] / d;
        if !(d > 0.0) {
            return false;
        }
    }
    true
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Smallest eigenvalue of the symmetric matrix behind `op`, densely.
fn dense_lambda0(sym: &CyclicTridiag) -> f64 {
    SymmetricEigen::new(sym.to_dense()).eigenvalues.min()
}

/// Full spectrum, ascending; for small operators only.
pub fn dense_eigenvalues(op: &DiscreteOperator) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(op.symmetric_form().to_dense())
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

/// Lowest eigenpair by shifted inverse iteration, starting from
/// `σ = (Gershgorin lower bound) − 1`, which keeps `A − σ` strictly
/// diagonally dominant. Without a corner term the shift is raised to
/// `θ − 2‖r‖` whenever an inertia count confirms it is still below the
/// spectrum. Operators with at most `dense_check_max` nodes are
/// cross-checked against a dense symmetric eigensolver.
pub fn lowest_eigenvalue(op: &DiscreteOperator, tols: &Tolerances) -> Result<SpectrumEstimate> {
    let sym = op.symmetric_form();
    let n = sym.len();
    if n == 0 {
        return Err(Error::Precondition("empty operator".into()));
    }
    let mut shift = sym.gershgorin_lower() - 1.0;
    let mut solver = CyclicSolver::new(&sym, shift);
    let can_reshift = sym.wrap == 0.0 || n <= 2;

    let mut y: Vec<f64> = (0..n).map(|i| 1.0 + 1e-3 * ((i as f64) * 0.618).sin()).collect();
    let nrm = norm(&y);
    y.iter_mut().for_each(|v| *v /= nrm);
    let mut ay = vec![0.0; n];
    let mut lambda = f64::NAN;
    let mut residual = f64::INFINITY;
    let mut iterations = 0;

    while iterations < tols.max_iters {
        iterations += 1;
        let mut x = solver.solve(&y);
        let nx = norm(&x);
        x.iter_mut().for_each(|v| *v /= nx);
        y = x;
        sym.matvec(&y, &mut ay);
        lambda = y.iter().zip(&ay).map(|(a, b)| a * b).sum();
        residual = ay
            .iter()
            .zip(&y)
            .map(|(a, b)| (a - lambda * b).powi(2))
            .sum::<f64>()
            .sqrt();
        if residual <= tols.solver_tol {
            break;
        }
        let candidate = lambda - 2.0 * residual;
        if can_reshift && residual < 0.1 * (lambda - shift) && candidate > shift && below_spectrum(&sym, candidate) {
            shift = candidate;
            solver = CyclicSolver::new(&sym, shift);
        }
    }

    let sum: f64 = y.iter().sum();
    let sign = if sum < 0.0 { -1.0 } else { 1.0 };
    let eigvec: Vec<f64> = y
        .iter()
        .zip(&op.weights)
        .map(|(v, w)| sign * v / w.sqrt())
        .collect();

    if residual > tols.solver_tol {
        return Err(Error::NoConvergence {
            iterations,
            residual,
            lambda0: lambda,
            eigvec,
        });
    }

    let dense = if n <= tols.dense_check_max {
        let d = dense_lambda0(&sym);
        if (d - lambda).abs() > tols.dense_agreement_tol {
            return Err(Error::SolverDisagreement {
                iterative: lambda,
                dense: d,
            });
        }
        Some(d)
    } else {
        None
    };

    Ok(SpectrumEstimate {
        lambda0: lambda,
        eigvec,
        residual,
        grid_n: n,
        mode: op.mode,
        iterations,
        dense_lambda0: dense,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::warped::{build_warped_mode, Base, Boundary, Warp, WarpedProductSpec};

    fn laplacian_op(n: usize, h: f64, wrap: bool) -> DiscreteOperator {
        let h2 = h * h;
        DiscreteOperator {
            stiffness: CyclicTridiag {
                diag: vec![2.0 / h2 * h; n],
                off: vec![-1.0 / h2 * h; n - 1],
                wrap: if wrap { -1.0 / h2 * h } else { 0.0 },
            },
            weights: vec![h; n],
            nodes: (0..n).map(|i| (i + 1) as f64 * h).collect(),
            label: "test".into(),
            self_adjoint_residual: 0.0,
            mode: None,
        }
    }

    #[test]
    fn dirichlet_toeplitz_closed_form() {
        for &n in &[16usize, 100, 511, 2000] {
            let h = 1.0 / (n + 1) as f64;
            let est = lowest_eigenvalue(&laplacian_op(n, h, false), &Tolerances::default()).unwrap();
            // (2 − 2cos πh)/h², written without the cancellation.
            let exact = 4.0 * (std::f64::consts::PI * h / 2.0).sin().powi(2) / (h * h);
            assert!((est.lambda0 - exact).abs() < 1e-12 * exact.max(1.0), "n={n}: {} vs {exact}", est.lambda0);
            assert!(est.residual <= 1e-8);
        }
    }

    #[test]
    fn inertia_count() {
        let op = laplacian_op(50, 1.0, false);
        let exact = 4.0 * (std::f64::consts::PI / 102.0).sin().powi(2);
        assert!(below_spectrum(&op.stiffness, exact - 1e-9));
        assert!(!below_spectrum(&op.stiffness, exact + 1e-9));
    }

    #[test]
    fn long_interval_converges_quickly() {
        let spec = WarpedProductSpec::circle_fiber(
            Base::Interval { a: 0.0, b: 120.0, boundary: Boundary::Dirichlet },
            Warp::Exp(0.5),
        );
        let op = crate::warped::build_schrodinger(&spec, 4096).unwrap();
        let est = lowest_eigenvalue(&op, &Tolerances::default()).unwrap();
        assert!(est.iterations < 200, "{}", est.iterations);
        let boxed = 0.0625 + (std::f64::consts::PI / 120.0).powi(2);
        assert!((est.lambda0 - boxed).abs() < 1e-5, "{}", est.lambda0);
    }

    #[test]
    fn zero_matrix() {
        let op = DiscreteOperator {
            stiffness: CyclicTridiag { diag: vec![0.0; 20], off: vec![0.0; 19], wrap: 0.0 },
            weights: vec![1.0; 20],
            nodes: (0..20).map(|i| i as f64).collect(),
            label: "zero".into(),
            self_adjoint_residual: 0.0,
            mode: None,
        };
        let est = lowest_eigenvalue(&op, &Tolerances::default()).unwrap();
        assert_eq!(est.lambda0, 0.0);
        assert_eq!(est.residual, 0.0);
    }

    #[test]
    fn periodic_laplacian_has_zero_ground_state() {
        let est = lowest_eigenvalue(&laplacian_op(64, 0.1, true), &Tolerances::default()).unwrap();
        assert!(est.lambda0.abs() < 1e-10);
        let first = est.eigvec[0];
        assert!(est.eigvec.iter().all(|v| (v - first).abs() < 1e-8));
    }

    #[test]
    fn cyclic_solver_matches_dense() {
        let a = CyclicTridiag {
            diag: (0..10).map(|i| 4.0 + i as f64 * 0.1).collect(),
            off: (0..9).map(|i| -1.0 - 0.05 * i as f64).collect(),
            wrap: -0.7,
        };
        let b: Vec<f64> = (0..10).map(|i| (i as f64).cos()).collect();
        let x = CyclicSolver::new(&a, 0.5).solve(&b);
        let mut shifted = a.to_dense();
        for i in 0..10 {
            shifted[(i, i)] -= 0.5;
        }
        let x_dense = shifted.lu().solve(&nalgebra::DVector::from_vec(b)).unwrap();
        for i in 0..10 {
            assert!((x[i] - x_dense[i]).abs() < 1e-13);
        }
    }

    #[test]
    fn non_convergence_returns_best_iterate() {
        let spec = WarpedProductSpec::circle_fiber(
            Base::Interval { a: 0.0, b: 50.0, boundary: Boundary::Dirichlet },
            Warp::Const(1.0),
        );
        let op = build_warped_mode(&spec, 0, 256).unwrap();
        let tols = Tolerances { max_iters: 3, ..Tolerances::default() };
        match lowest_eigenvalue(&op, &tols) {
            Err(Error::NoConvergence { iterations, eigvec, .. }) => {
                assert_eq!(iterations, 3);
                assert_eq!(eigvec.len(), 256);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }
}
