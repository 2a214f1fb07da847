//! Composite Gauss–Legendre quadrature along the straight segment `[a, b]`
//! of the complex plane.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::expr::EvalError;
use crate::quadric::CVec4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadConfig {
    /// Panels of the first pass.
    pub panels: usize,
    /// Gauss–Legendre order per panel.
    pub nodes: usize,
    /// Panel multiplier between successive passes.
    pub refinement: usize,
    /// Target for the difference between successive passes, relative to
    /// `max(1, |result|)`.
    pub tolerance: f64,
    pub max_refinements: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { panels: 4, nodes: 16, refinement: 2, tolerance: 1e-10, max_refinements: 8 }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("invalid quadrature settings: {0}")]
    InvalidConfig(String),
    #[error("quadrature estimate {estimate:.3e} above tolerance {tolerance:.1e} with {panels} panels")]
    ToleranceNotMet { estimate: f64, tolerance: f64, panels: usize },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

impl QuadConfig {
    pub fn validate(&self) -> Result<(), QuadError> {
        let bad = |m: &str| Err(QuadError::InvalidConfig(m.to_string()));
        if self.panels == 0 {
            return bad("panels must be at least 1");
        }
        if !(1..=256).contains(&self.nodes) {
            return bad("nodes must be between 1 and 256");
        }
        if self.refinement < 2 {
            return bad("refinement factor must be at least 2");
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return bad("tolerance must be positive");
        }
        Ok(())
    }
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`,
/// by Newton iteration on the three-term recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut wts = vec![0.0; n];
    let nf = n as f64;
    for k in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (k as f64 + 0.75) / (nf + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre(n, z);
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let dp = legendre(n, z).1;
        x[k] = -z;
        x[n - 1 - k] = z;
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        wts[k] = w;
        wts[n - 1 - k] = w;
    }
    (x, wts)
}

/// `(P_n(z), P_n'(z))`.
fn legendre(n: usize, z: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, z);
    if n == 0 {
        return (1.0, 0.0);
    }
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * z * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (z * p1 - p0) / (z * z - 1.0))
}

struct Rule {
    x: Vec<f64>,
    w: Vec<f64>,
}

impl Rule {
    fn new(n: usize) -> Self {
        let (x, w) = gauss_legendre(n);
        Rule { x, w }
    }

    fn composite<G>(&self, g: &G, a: Complex64, b: Complex64, panels: usize) -> Result<CVec4, EvalError>
    where
        G: Fn(Complex64) -> Result<CVec4, EvalError>,
    {
        let step = (b - a) / panels as f64;
        let half = step * 0.5;
        let mut acc = CVec4::ZERO;
        for p in 0..panels {
            let mid = a + step * (p as f64 + 0.5);
            for (xk, wk) in self.x.iter().zip(&self.w) {
                let v = g(mid + half * *xk)?;
                acc = acc + v.scale(half * *wk);
            }
        }
        Ok(acc)
    }
}

/// `∫₀ʷ g(ξ) dξ` along the straight segment, with the estimate from the
/// last two passes.
pub fn path_integral<G>(g: G, w: Complex64, q: &QuadConfig) -> Result<(CVec4, f64), QuadError>
where
    G: Fn(Complex64) -> Result<CVec4, EvalError>,
{
    segment_integral(g, Complex64::new(0.0, 0.0), w, q)
}

/// `∫ₐᵇ g(ξ) dξ` along the straight segment.
pub fn segment_integral<G>(g: G, a: Complex64, b: Complex64, q: &QuadConfig) -> Result<(CVec4, f64), QuadError>
where
    G: Fn(Complex64) -> Result<CVec4, EvalError>,
{
    q.validate()?;
    if a == b {
        return Ok((CVec4::ZERO, 0.0));
    }
    let rule = Rule::new(q.nodes);
    let mut panels = q.panels;
    let mut coarse = rule.composite(&g, a, b, panels)?;
    let mut estimate = f64::INFINITY;
    for _ in 0..=q.max_refinements {
        panels *= q.refinement;
        let fine = rule.composite(&g, a, b, panels)?;
        estimate = (fine - coarse).max_abs();
        if estimate <= q.tolerance * fine.max_abs().max(1.0) {
            return Ok((fine, estimate));
        }
        coarse = fine;
    }
    Err(QuadError::ToleranceNotMet { estimate, tolerance: q.tolerance, panels })
}

/// A single pass with a fixed panel count and no refinement.
pub fn fixed_rule<G>(g: G, a: Complex64, b: Complex64, panels: usize, nodes: usize) -> Result<CVec4, EvalError>
where
    G: Fn(Complex64) -> Result<CVec4, EvalError>,
{
    Rule::new(nodes).composite(&g, a, b, panels)
}
