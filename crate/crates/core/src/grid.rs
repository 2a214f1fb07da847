//! Sampling grids over a parameter domain.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::solvers::Domain;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Layout {
    /// `w = u + iv` over a rectangle.
    Cartesian { u: [f64; 2], v: [f64; 2] },
    /// `w = r e^{iθ}`, `r ∈ [0, R]`, `θ ∈ [0, 2π]`.
    Polar { radius: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub layout: Layout,
    pub nu: usize,
    pub nv: usize,
}

impl GridSpec {
    pub fn new(layout: Layout, nu: usize, nv: usize) -> Result<Self, String> {
        let g = GridSpec { layout, nu, nv };
        g.validate()?;
        Ok(g)
    }

    pub fn cartesian(u: [f64; 2], v: [f64; 2], nu: usize, nv: usize) -> Result<Self, String> {
        GridSpec::new(Layout::Cartesian { u, v }, nu, nv)
    }

    /// The natural grid of a domain: polar on discs, Cartesian on rectangles.
    pub fn for_domain(domain: &Domain, nu: usize, nv: usize) -> Result<Self, String> {
        let layout = match *domain {
            Domain::Disc { radius } => Layout::Polar { radius },
            Domain::Rect { u, v } => Layout::Cartesian { u, v },
        };
        GridSpec::new(layout, nu, nv)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.nu < 2 || self.nv < 2 {
            return Err(format!("grid needs at least 2x2 samples, got {}x{}", self.nu, self.nv));
        }
        match self.layout {
            Layout::Cartesian { u, v } => {
                if !(u[0] < u[1] && v[0] < v[1]) || ![u[0], u[1], v[0], v[1]].iter().all(|x| x.is_finite()) {
                    return Err(format!("empty grid range {u:?} x {v:?}"));
                }
            }
            Layout::Polar { radius } => {
                if !(radius > 0.0 && radius.is_finite()) {
                    return Err(format!("grid radius must be positive, got {radius}"));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.nu * self.nv
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Sample `(i, j)`, `0 ≤ i < nu`, `0 ≤ j < nv`.
    pub fn point(&self, i: usize, j: usize) -> Complex64 {
        let s = i as f64 / (self.nu - 1) as f64;
        let t = j as f64 / (self.nv - 1) as f64;
        match self.layout {
            Layout::Cartesian { u, v } => Complex64::new(u[0] + (u[1] - u[0]) * s, v[0] + (v[1] - v[0]) * t),
            Layout::Polar { radius } => Complex64::from_polar(radius * s, std::f64::consts::TAU * t),
        }
    }

    /// All samples, row `i` major.
    pub fn points(&self) -> Vec<Complex64> {
        (0..self.nu).flat_map(|i| (0..self.nv).map(move |j| self.point(i, j))).collect()
    }
}
