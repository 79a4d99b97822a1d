use nalgebra::DMatrix;

use super::geometry::WarpGeometry;
use super::spec::{Boundary, WarpedProductSpec};
use crate::{Error, Result};

/// Symmetric tridiagonal matrix with an optional corner entry
/// `a[0][n−1] = a[n−1][0] = wrap` (periodic grids).
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicTridiag {
    pub diag: Vec<f64>,
    /// `off[i] = a[i][i+1]`.
    pub off: Vec<f64>,
    pub wrap: f64,
}

impl CyclicTridiag {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn matvec(&self, x: &[f64], out: &mut [f64]) {
        let n = self.len();
        for i in 0..n {
            let mut s = self.diag[i] * x[i];
            if i > 0 {
                s += self.off[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                s += self.off[i] * x[i + 1];
            }
            out[i] = s;
        }
        if self.wrap != 0.0 && n > 1 {
            out[0] += self.wrap * x[n - 1];
            out[n - 1] += self.wrap * x[0];
        }
    }

    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        let mut y = vec![0.0; x.len()];
        self.matvec(x, &mut y);
        x.iter().zip(&y).map(|(a, b)| a * b).sum()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.len();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = self.diag[i];
            if i + 1 < n {
                m[(i, i + 1)] = self.off[i];
                m[(i + 1, i)] = self.off[i];
            }
        }
        if n > 1 {
            m[(0, n - 1)] += self.wrap;
            m[(n - 1, 0)] += self.wrap;
        }
        m
    }

    /// `min_i (a_ii − Σ_{j≠i} |a_ij|)`.
    pub fn gershgorin_lower(&self) -> f64 {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut r = 0.0;
                if i > 0 {
                    r += self.off[i - 1].abs();
                }
                if i + 1 < n {
                    r += self.off[i].abs();
                }
                if i == 0 || i + 1 == n {
                    r += self.wrap.abs();
                }
                self.diag[i] - r
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// `D^{-1/2} A D^{-1/2}` for a positive diagonal `D`.
    pub fn congruence(&self, weights: &[f64]) -> CyclicTridiag {
        let n = self.len();
        let s: Vec<f64> = weights.iter().map(|w| 1.0 / w.sqrt()).collect();
        CyclicTridiag {
            diag: (0..n).map(|i| self.diag[i] * s[i] * s[i]).collect(),
            off: (0..n.saturating_sub(1)).map(|i| self.off[i] * s[i] * s[i + 1]).collect(),
            wrap: if n > 1 { self.wrap * s[0] * s[n - 1] } else { 0.0 },
        }
    }

    /// Principal submatrix on `start..end` (the wrap entry is dropped).
    pub fn principal(&self, start: usize, end: usize) -> CyclicTridiag {
        CyclicTridiag {
            diag: self.diag[start..end].to_vec(),
            off: self.off[start..end - 1].to_vec(),
            wrap: 0.0,
        }
    }
}

/// A discretized operator `A = W⁻¹K` with symmetric stiffness `K` and
/// positive quadrature weights `W`; `A` is self-adjoint for `⟨f, g⟩_w`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteOperator {
    pub stiffness: CyclicTridiag,
    pub weights: Vec<f64>,
    pub nodes: Vec<f64>,
    pub label: String,
    /// `max |(WA)ᵀ − WA|` of the assembled stencil before symmetrization.
    pub self_adjoint_residual: f64,
    pub mode: Option<usize>,
}

/// Row stencils `(lower, diag, upper)` of `A`; `lower[0]` and `upper[n−1]`
/// are the wrap couplings on a periodic grid and zero otherwise.
struct Stencil {
    lower: Vec<f64>,
    diag: Vec<f64>,
    upper: Vec<f64>,
}

impl DiscreteOperator {
    fn assemble(stencil: Stencil, weights: Vec<f64>, nodes: Vec<f64>, label: String, mode: Option<usize>) -> Self {
        let n = weights.len();
        let mut residual: f64 = 0.0;
        let mut off = Vec::with_capacity(n - 1);
        for i in 0..n - 1 {
            let up = weights[i] * stencil.upper[i];
            let lo = weights[i + 1] * stencil.lower[i + 1];
            residual = residual.max((up - lo).abs());
            off.push(0.5 * (up + lo));
        }
        let a = weights[0] * stencil.lower[0];
        let b = weights[n - 1] * stencil.upper[n - 1];
        residual = residual.max((a - b).abs());
        let stiffness = CyclicTridiag {
            diag: (0..n).map(|i| weights[i] * stencil.diag[i]).collect(),
            off,
            wrap: 0.5 * (a + b),
        };
        DiscreteOperator {
            stiffness,
            weights,
            nodes,
            label,
            self_adjoint_residual: residual,
            mode,
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `A f = W⁻¹ K f`.
    pub fn apply(&self, f: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; f.len()];
        self.stiffness.matvec(f, &mut out);
        for (o, w) in out.iter_mut().zip(&self.weights) {
            *o /= w;
        }
        out
    }

    /// `⟨f, A f⟩_w / ⟨f, f⟩_w`.
    pub fn rayleigh(&self, f: &[f64]) -> f64 {
        let num = self.stiffness.quadratic_form(f);
        let den: f64 = f.iter().zip(&self.weights).map(|(v, w)| v * v * w).sum();
        num / den
    }

    /// The symmetric matrix `W^{-1/2} K W^{-1/2}` with the same spectrum.
    pub fn symmetric_form(&self) -> CyclicTridiag {
        self.stiffness.congruence(&self.weights)
    }

    /// Restriction to nodes `start..end` with zero (Dirichlet) values
    /// imposed on the rest.
    pub fn restrict(&self, start: usize, end: usize) -> DiscreteOperator {
        DiscreteOperator {
            stiffness: self.stiffness.principal(start, end),
            weights: self.weights[start..end].to_vec(),
            nodes: self.nodes[start..end].to_vec(),
            label: format!("{}[{}..{}]", self.label, start, end),
            self_adjoint_residual: self.self_adjoint_residual,
            mode: self.mode,
        }
    }
}

fn check_grid(n: usize) -> Result<()> {
    if n < 16 {
        return Err(Error::Precondition(format!("grid_n must be at least 16, got {n}")));
    }
    Ok(())
}

/// How a Neumann end of the base enters `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum NeumannEnd {
    /// The image of `f′ = 0` under `f ↦ φ f`: the potential sees a mirrored
    /// `φ` ghost, which makes `S` exactly similar to `L₀`.
    Conjugate,
    /// `u′ = 0` for `S` itself, with the potential from the true ghost.
    Free,
}

/// Schrödinger operator with potential from centered second differences
/// of `φ = ψ^{k/2}`.
pub(crate) fn schrodinger_from_geometry(
    geo: &WarpGeometry,
    spec: &WarpedProductSpec,
    label: String,
    zero_potential: bool,
    neumann: NeumannEnd,
) -> DiscreteOperator {
    let n = geo.len();
    let h = geo.grid.h;
    let h2 = h * h;
    let half_k = spec.fiber_dim as f64 / 2.0;
    let phi: Vec<f64> = geo.psi.iter().map(|v| v.powf(half_k)).collect();
    let mut ghost = (geo.ghost_left.powf(half_k), geo.ghost_right.powf(half_k));
    if neumann == NeumannEnd::Conjugate && !geo.grid.periodic {
        if geo.grid.left == Boundary::Neumann {
            ghost.0 = phi[0];
        }
        if geo.grid.right == Boundary::Neumann {
            ghost.1 = phi[n - 1];
        }
    }

    let mut st = Stencil {
        lower: vec![-1.0 / h2; n],
        diag: vec![2.0 / h2; n],
        upper: vec![-1.0 / h2; n],
    };
    if !geo.grid.periodic {
        st.lower[0] = 0.0;
        st.upper[n - 1] = 0.0;
        if geo.grid.left == Boundary::Neumann {
            st.diag[0] -= 1.0 / h2;
        }
        if geo.grid.right == Boundary::Neumann {
            st.diag[n - 1] -= 1.0 / h2;
        }
    }
    if !zero_potential {
        for i in 0..n {
            let (l, r) = geo.neighbours(&phi, ghost, i);
            st.diag[i] += (l - 2.0 * phi[i] + r) / (h2 * phi[i]);
        }
    }
    DiscreteOperator::assemble(st, vec![h; n], geo.grid.nodes.clone(), label, None)
}

/// `S f = −f″ + V f`, `V = (ψ^{k/2})″/ψ^{k/2}`, on `L²(dt)`.
///
/// At a Neumann end of the base the condition is the one inherited from
/// `f′ = 0` on the warped product, `u′ = (φ′/φ) u` for `u = φ f`, so that
/// `S` and `L₀` stay similar.
pub fn build_schrodinger(spec: &WarpedProductSpec, grid_n: usize) -> Result<DiscreteOperator> {
    check_grid(grid_n)?;
    let geo = WarpGeometry::new(spec, grid_n)?;
    Ok(schrodinger_from_geometry(&geo, spec, format!("S[{}]", spec.warp.name()), false, NeumannEnd::Conjugate))
}

/// Laplacian of the base alone, with the same boundary conditions.
pub fn build_base_laplacian(spec: &WarpedProductSpec, grid_n: usize) -> Result<DiscreteOperator> {
    check_grid(grid_n)?;
    let geo = WarpGeometry::new(spec, grid_n)?;
    Ok(schrodinger_from_geometry(&geo, spec, "base".into(), true, NeumannEnd::Free))
}

/// Fourier block `L_m f = −ψ⁻¹(ψ f′)′ + m²ψ⁻² f` on `L²(ψ dt)`, in
/// divergence form with fluxes at half nodes.
pub fn build_warped_mode(spec: &WarpedProductSpec, m: usize, grid_n: usize) -> Result<DiscreteOperator> {
    if spec.fiber_dim != 1 {
        return Err(Error::Unsupported(format!(
            "mode operators need fiber dimension 1, got {}",
            spec.fiber_dim
        )));
    }
    check_grid(grid_n)?;
    let geo = WarpGeometry::new(spec, grid_n)?;
    Ok(mode_from_geometry(&geo, m, format!("L{m}[{}]", spec.warp.name())))
}

pub(crate) fn mode_from_geometry(geo: &WarpGeometry, m: usize, label: String) -> DiscreteOperator {
    let n = geo.len();
    let h = geo.grid.h;
    let h2 = h * h;
    let m2 = (m * m) as f64;
    let mut st = Stencil {
        lower: vec![0.0; n],
        diag: vec![0.0; n],
        upper: vec![0.0; n],
    };
    for i in 0..n {
        let p = geo.psi[i];
        let mut left = geo.faces[i];
        let mut right = geo.faces[i + 1];
        if !geo.grid.periodic {
            if i == 0 && geo.grid.left == Boundary::Neumann {
                left = 0.0;
            }
            if i + 1 == n && geo.grid.right == Boundary::Neumann {
                right = 0.0;
            }
        }
        st.diag[i] = (left + right) / (p * h2) + m2 / (p * p);
        let couple_left = i > 0 || geo.grid.periodic;
        let couple_right = i + 1 < n || geo.grid.periodic;
        if couple_left {
            st.lower[i] = -left / (p * h2);
        }
        if couple_right {
            st.upper[i] = -right / (p * h2);
        }
    }
    let weights = geo.psi.iter().map(|p| p * h).collect();
    DiscreteOperator::assemble(st, weights, geo.grid.nodes.clone(), label, Some(m))
}
