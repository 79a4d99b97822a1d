use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Dirichlet,
    Neumann,
}

impl Boundary {
    pub fn as_str(&self) -> &'static str {
        match self {
            Boundary::Dirichlet => "dirichlet",
            Boundary::Neumann => "neumann",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Base {
    Circle { length: f64 },
    Interval { a: f64, b: f64, boundary: Boundary },
}

/// Warp function `ψ > 0` on the base.
#[derive(Debug, Clone, PartialEq)]
pub enum Warp {
    /// `ψ ≡ c`.
    Const(f64),
    /// `ψ = e^{a t}`.
    Exp(f64),
    /// `ψ = 2 + A sin t`.
    SinShift(f64),
    /// `ψ = e^{s t²}`.
    Gauss(f64),
    /// Values at the grid nodes; fixes the grid size.
    Samples(Vec<f64>),
}

impl Warp {
    /// `ψ(t)` for closed-form warps; `None` for sampled warps.
    pub fn eval(&self, t: f64) -> Option<f64> {
        match *self {
            Warp::Const(c) => Some(c),
            Warp::Exp(a) => Some((a * t).exp()),
            Warp::SinShift(amp) => Some(2.0 + amp * t.sin()),
            Warp::Gauss(s) => Some((s * t * t).exp()),
            Warp::Samples(_) => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Warp::Const(_) => "const",
            Warp::Exp(_) => "exp",
            Warp::SinShift(_) => "sinshift",
            Warp::Gauss(_) => "gauss",
            Warp::Samples(_) => "samples",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WarpedProductSpec {
    pub base: Base,
    pub warp: Warp,
    /// Fiber dimension `k`.
    pub fiber_dim: usize,
    /// `λ₀` of the unit fiber (0 for `S¹`).
    pub fiber_lambda0: f64,
}

impl WarpedProductSpec {
    /// Warped product over `base` with fiber `S¹`.
    pub fn circle_fiber(base: Base, warp: Warp) -> Self {
        WarpedProductSpec {
            base,
            warp,
            fiber_dim: 1,
            fiber_lambda0: 0.0,
        }
    }

    pub fn check(&self) -> Result<()> {
        match self.base {
            Base::Circle { length } if !(length > 0.0 && length.is_finite()) => {
                return Err(Error::InvalidWarp(format!("circle length must be positive, got {length}")));
            }
            Base::Interval { a, b, .. } if !(b > a && a.is_finite() && b.is_finite()) => {
                return Err(Error::InvalidWarp(format!("interval needs a < b, got [{a}, {b}]")));
            }
            _ => {}
        }
        if self.fiber_dim == 0 {
            return Err(Error::InvalidWarp("fiber dimension must be positive".into()));
        }
        if !(self.fiber_lambda0 >= 0.0) {
            return Err(Error::InvalidWarp("fiber λ₀ must be nonnegative".into()));
        }
        Ok(())
    }

    /// Grid size implied by sampled warps.
    pub fn sample_count(&self) -> Option<usize> {
        match &self.warp {
            Warp::Samples(v) => Some(v.len()),
            _ => None,
        }
    }
}
