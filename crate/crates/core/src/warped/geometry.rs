use super::spec::{Base, Boundary, Warp, WarpedProductSpec};
use crate::{Error, Result};

/// Uniform 1D grid.
///
/// Dirichlet ends are node-centered (first unknown one step `h` inside the
/// end point, which is the ghost node); Neumann ends are cell-centered
/// (first unknown `h/2` inside, zero flux through the end face). Circles are
/// periodic with `x_i = i h`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub nodes: Vec<f64>,
    pub h: f64,
    pub periodic: bool,
    pub left: Boundary,
    pub right: Boundary,
}

impl Grid {
    pub fn new(base: &Base, n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Precondition(format!("grid needs at least 3 nodes, got {n}")));
        }
        match *base {
            Base::Circle { length } => {
                let h = length / n as f64;
                Ok(Grid {
                    nodes: (0..n).map(|i| i as f64 * h).collect(),
                    h,
                    periodic: true,
                    left: Boundary::Dirichlet,
                    right: Boundary::Dirichlet,
                })
            }
            Base::Interval { a, b, boundary } => Self::interval(a, b, boundary, boundary, n),
        }
    }

    pub fn interval(a: f64, b: f64, left: Boundary, right: Boundary, n: usize) -> Result<Self> {
        let offset = |bc: Boundary| match bc {
            Boundary::Dirichlet => 1.0,
            Boundary::Neumann => 0.5,
        };
        let (ol, or) = (offset(left), offset(right));
        let h = (b - a) / ((n - 1) as f64 + ol + or);
        Ok(Grid {
            nodes: (0..n).map(|i| a + (i as f64 + ol) * h).collect(),
            h,
            periodic: false,
            left,
            right,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Positions one step outside the first and last node.
    fn ghost_positions(&self) -> (f64, f64) {
        (self.nodes[0] - self.h, self.nodes[self.len() - 1] + self.h)
    }
}

/// Warp sampled on a grid: node values, ghost values one step outside each
/// end, and face values `ψ_{i−½}` as geometric means of the neighbours.
///
/// Geometric-mean faces make the weighted mode operator `L₀` and the
/// Schrödinger operator `S` exactly similar on the grid via `f ↦ √ψ f`.
#[derive(Debug, Clone, PartialEq)]
pub struct WarpGeometry {
    pub grid: Grid,
    pub psi: Vec<f64>,
    pub ghost_left: f64,
    pub ghost_right: f64,
    /// `faces[i]` sits between node `i−1` and node `i`; `faces[0]` and
    /// `faces[n]` are the end faces (equal on a circle).
    pub faces: Vec<f64>,
}

impl WarpGeometry {
    pub fn new(spec: &WarpedProductSpec, n: usize) -> Result<Self> {
        spec.check()?;
        if let Some(count) = spec.sample_count() {
            if count != n {
                return Err(Error::InvalidWarp(format!(
                    "warp has {count} samples but the grid has {n} nodes"
                )));
            }
        }
        let grid = Grid::new(&spec.base, n)?;
        let psi: Vec<f64> = match &spec.warp {
            Warp::Samples(v) => v.clone(),
            w => grid.nodes.iter().map(|&x| w.eval(x).unwrap()).collect(),
        };
        if let Some((i, &v)) = psi.iter().enumerate().find(|(_, &v)| !(v > 0.0 && v.is_finite())) {
            return Err(Error::InvalidWarp(format!(
                "ψ must be positive: ψ({}) = {v} at node {i}",
                grid.nodes[i]
            )));
        }
        let (ghost_left, ghost_right) = if grid.periodic {
            (psi[n - 1], psi[0])
        } else {
            let (gl, gr) = grid.ghost_positions();
            match spec.warp.eval(gl).zip(spec.warp.eval(gr)) {
                Some((l, r)) => (l, r),
                None => (extrapolate(psi[0], psi[1]), extrapolate(psi[n - 1], psi[n - 2])),
            }
        };
        if !(ghost_left > 0.0 && ghost_right > 0.0 && ghost_left.is_finite() && ghost_right.is_finite()) {
            return Err(Error::InvalidWarp("ψ must be positive at the boundary".into()));
        }
        let mut faces = Vec::with_capacity(n + 1);
        faces.push((ghost_left * psi[0]).sqrt());
        for i in 1..n {
            faces.push((psi[i - 1] * psi[i]).sqrt());
        }
        faces.push((psi[n - 1] * ghost_right).sqrt());
        if grid.periodic {
            faces[0] = (psi[n - 1] * psi[0]).sqrt();
            faces[n] = faces[0];
        }
        Ok(WarpGeometry {
            grid,
            psi,
            ghost_left,
            ghost_right,
            faces,
        })
    }

    pub fn len(&self) -> usize {
        self.psi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.psi.is_empty()
    }

    /// `ψ` at node `i − 1` and `i + 1`, using ghosts or wrap-around at ends.
    pub(crate) fn neighbours(&self, values: &[f64], ghost: (f64, f64), i: usize) -> (f64, f64) {
        let n = values.len();
        let left = if i > 0 {
            values[i - 1]
        } else if self.grid.periodic {
            values[n - 1]
        } else {
            ghost.0
        };
        let right = if i + 1 < n {
            values[i + 1]
        } else if self.grid.periodic {
            values[0]
        } else {
            ghost.1
        };
        (left, right)
    }

    /// `max_i |ψ′/ψ|` by centered differences of `ln ψ`, with its node.
    pub fn max_log_derivative(&self) -> (f64, usize) {
        let logs: Vec<f64> = self.psi.iter().map(|v| v.ln()).collect();
        let ghost = (self.ghost_left.ln(), self.ghost_right.ln());
        let mut best = (0.0, 0);
        for i in 0..self.len() {
            let (l, r) = self.neighbours(&logs, ghost, i);
            let d = ((r - l) / (2.0 * self.grid.h)).abs();
            if d > best.0 {
                best = (d, i);
            }
        }
        best
    }

    pub fn min_inverse_square(&self) -> f64 {
        self.psi.iter().map(|v| 1.0 / (v * v)).fold(f64::INFINITY, f64::min)
    }
}

fn extrapolate(edge: f64, inner: f64) -> f64 {
    let v = 2.0 * edge - inner;
    if v > 0.0 {
        v
    } else {
        edge
    }
}
