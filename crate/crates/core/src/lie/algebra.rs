use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::{Error, Result, Tolerances};

/// A finite-dimensional real Lie algebra with a positive-definite inner
/// product, i.e. the data of a left-invariant metric on a Lie group.
///
/// `[e_i, e_j] = Σ_k c[i][j][k] e_k` and `⟨e_i, e_j⟩ = g[i][j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricLieAlgebra {
    dim: usize,
    structure: Vec<f64>,
    metric: DMatrix<f64>,
    labels: Option<Vec<String>>,
}

/// Outcome of [`MetricLieAlgebra::validate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    pub antisymmetry_residual: f64,
    pub jacobi_residual: f64,
    pub metric_symmetry_residual: f64,
    pub min_metric_eigenvalue: f64,
    pub valid: bool,
}

/// A linear functional on the algebra, stored by its values on the basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Covector {
    pub components: DVector<f64>,
}

impl Covector {
    pub fn eval(&self, x: &DVector<f64>) -> f64 {
        self.components.dot(x)
    }

    /// The metric dual `T` with `⟨T, x⟩ = self(x)` for all `x`.
    pub fn dual(&self, alg: &MetricLieAlgebra) -> DVector<f64> {
        alg.solve_metric(&self.components)
    }

    /// Operator norm with respect to the metric, `max_{‖x‖=1} self(x)`.
    pub fn norm(&self, alg: &MetricLieAlgebra) -> f64 {
        self.components.dot(&self.dual(alg)).max(0.0).sqrt()
    }

    pub fn sup_norm(&self) -> f64 {
        self.components.amax()
    }
}

impl MetricLieAlgebra {
    /// Builds an algebra from a flat `n³` array (`c[(i·n + j)·n + k]`) and an
    /// `n×n` metric. Only shapes are checked; use [`validate`](Self::validate)
    /// or [`new`](Self::new) for the algebraic invariants.
    pub fn from_raw(dim: usize, structure: Vec<f64>, metric: DMatrix<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        if structure.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim * dim,
                got: structure.len(),
            });
        }
        if metric.nrows() != dim || metric.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: metric.nrows().max(metric.ncols()),
            });
        }
        Ok(MetricLieAlgebra {
            dim,
            structure,
            metric,
            labels: None,
        })
    }

    /// Like [`from_raw`](Self::from_raw) but rejects input that fails
    /// validation under `tols`.
    pub fn new(
        dim: usize,
        structure: Vec<f64>,
        metric: DMatrix<f64>,
        tols: &Tolerances,
    ) -> Result<Self> {
        let alg = Self::from_raw(dim, structure, metric)?;
        let report = alg.validate(tols);
        if !report.valid {
            return Err(Error::InvalidAlgebra(format!(
                "antisymmetry {:.3e}, jacobi {:.3e}, metric asymmetry {:.3e}, min metric eigenvalue {:.3e}",
                report.antisymmetry_residual,
                report.jacobi_residual,
                report.metric_symmetry_residual,
                report.min_metric_eigenvalue
            )));
        }
        Ok(alg)
    }

    /// Builds an algebra from its nonzero brackets `(i, j, k, v)` meaning
    /// `[e_i, e_j] ∋ v·e_k` (0-based), completing antisymmetrically.
    pub fn from_brackets(
        dim: usize,
        brackets: &[(usize, usize, usize, f64)],
        metric: DMatrix<f64>,
        tols: &Tolerances,
    ) -> Result<Self> {
        let mut c = vec![0.0; dim * dim * dim];
        for &(i, j, k, v) in brackets {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidAlgebra(format!(
                    "bracket index ({i}, {j}, {k}) out of range for dimension {dim}"
                )));
            }
            c[(i * dim + j) * dim + k] += v;
            c[(j * dim + i) * dim + k] -= v;
        }
        Self::new(dim, c, metric, tols)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        if labels.len() == self.dim {
            self.labels = Some(labels);
        }
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn metric(&self) -> &DMatrix<f64> {
        &self.metric
    }

    pub fn structure(&self) -> &[f64] {
        &self.structure
    }

    #[inline]
    pub fn c(&self, i: usize, j: usize, k: usize) -> f64 {
        self.structure[(i * self.dim + j) * self.dim + k]
    }

    /// Largest |c[i][j][k]|; the scale used for rank thresholds.
    pub fn structure_scale(&self) -> f64 {
        self.structure.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().all(|&v| v == 0.0)
    }

    pub fn validate(&self, tols: &Tolerances) -> ValidationReport {
        let n = self.dim;
        let mut antisymmetry: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    antisymmetry = antisymmetry.max((self.c(i, j, k) + self.c(j, i, k)).abs());
                }
            }
        }

        let mut jacobi: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    for k in 0..n {
                        let mut s = 0.0;
                        for m in 0..n {
                            s += self.c(i, j, m) * self.c(m, l, k)
                                + self.c(j, l, m) * self.c(m, i, k)
                                + self.c(l, i, m) * self.c(m, j, k);
                        }
                        jacobi = jacobi.max(s.abs());
                    }
                }
            }
        }

        let asym = (&self.metric - self.metric.transpose()).amax();
        let sym = (&self.metric + self.metric.transpose()) * 0.5;
        let min_eig = SymmetricEigen::new(sym).eigenvalues.min();

        let valid = antisymmetry <= tols.antisymmetry_tol
            && jacobi <= tols.jacobi_tol
            && asym <= tols.spd_tol
            && min_eig > tols.spd_tol;
        ValidationReport {
            antisymmetry_residual: antisymmetry,
            jacobi_residual: jacobi,
            metric_symmetry_residual: asym,
            min_metric_eigenvalue: min_eig,
            valid,
        }
    }

    pub(crate) fn check_len(&self, v: &DVector<f64>) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok(())
    }

    pub fn bracket(&self, x: &DVector<f64>, y: &DVector<f64>) -> Result<DVector<f64>> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        let n = self.dim;
        let mut out = DVector::zeros(n);
        for i in 0..n {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                let w = x[i] * y[j];
                if w == 0.0 {
                    continue;
                }
                for k in 0..n {
                    out[k] += w * self.c(i, j, k);
                }
            }
        }
        out
    }

    /// Matrix of `y ↦ [x, y]`: column `j` is `[x, e_j]`.
    pub fn ad_matrix(&self, x: &DVector<f64>) -> Result<DMatrix<f64>> {
        self.check_len(x)?;
        Ok(self.ad_unchecked(x))
    }

    pub(crate) fn ad_unchecked(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let n = self.dim;
        DMatrix::from_fn(n, n, |k, j| (0..n).map(|i| x[i] * self.c(i, j, k)).sum())
    }

    pub(crate) fn ad_basis(&self, i: usize) -> DMatrix<f64> {
        let n = self.dim;
        DMatrix::from_fn(n, n, |k, j| self.c(i, j, k))
    }

    /// `τ(X) = tr(ad X)`, the obstruction to unimodularity.
    pub fn trace_covector(&self) -> Covector {
        let n = self.dim;
        let components = DVector::from_fn(n, |i, _| (0..n).map(|j| self.c(i, j, j)).sum());
        Covector { components }
    }

    pub fn is_unimodular(&self, tol: f64) -> bool {
        self.trace_covector().sup_norm() < tol
    }

    /// `B[i][j] = tr(ad e_i ∘ ad e_j)`.
    pub fn killing_form(&self) -> DMatrix<f64> {
        let n = self.dim;
        let ads: Vec<DMatrix<f64>> = (0..n).map(|i| self.ad_basis(i)).collect();
        let mut b = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = (&ads[i] * &ads[j]).trace();
                b[(i, j)] = v;
                b[(j, i)] = v;
            }
        }
        b
    }

    pub fn inner(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        (x.transpose() * &self.metric * y)[(0, 0)]
    }

    pub fn norm(&self, x: &DVector<f64>) -> f64 {
        self.inner(x, x).max(0.0).sqrt()
    }

    pub(crate) fn solve_metric(&self, rhs: &DVector<f64>) -> DVector<f64> {
        match self.metric.clone().cholesky() {
            Some(ch) => ch.solve(rhs),
            None => self
                .metric
                .clone()
                .lu()
                .solve(rhs)
                .unwrap_or_else(|| DVector::from_element(rhs.len(), f64::NAN)),
        }
    }

    pub fn basis_vector(&self, i: usize) -> DVector<f64> {
        let mut e = DVector::zeros(self.dim);
        e[i] = 1.0;
        e
    }

    /// Re-expresses the algebra in the basis `e'_i = Σ_a p[a][i] e_a`.
    pub fn change_basis(&self, p: &DMatrix<f64>) -> Result<Self> {
        let n = self.dim;
        if p.nrows() != n || p.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: p.nrows(),
            });
        }
        let p_inv = p
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::InvalidAlgebra("change of basis is singular".into()))?;
        let mut c = vec![0.0; n * n * n];
        for i in 0..n {
            for j in 0..n {
                let bracket = self.bracket_unchecked(&p.column(i).into(), &p.column(j).into());
                let coords = &p_inv * bracket;
                for k in 0..n {
                    c[(i * n + j) * n + k] = coords[k];
                }
            }
        }
        let metric = p.transpose() * &self.metric * p;
        let metric = (&metric + metric.transpose()) * 0.5;
        Ok(MetricLieAlgebra {
            dim: n,
            structure: c,
            metric,
            labels: None,
        })
    }

    /// The same bracket with the metric multiplied by `t`.
    pub fn scaled_metric(&self, t: f64) -> Self {
        MetricLieAlgebra {
            metric: &self.metric * t,
            ..self.clone()
        }
    }
}
