use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{PlaneSign, Vec4};
use crate::analytic::curve::{differentiate_all, eval_complex_all, Components};
use crate::analytic::quadrature::{path_integral, QuadConfig, QuadError};
use crate::analytic::EvalError;
use crate::quadric::CVec4;

/// Parameter domain. Both shapes are star-shaped about 0, so the integral
/// along the straight segment `[0, w]` is the surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum Domain {
    Disc { radius: f64 },
    Rect { u: [f64; 2], v: [f64; 2] },
}

impl Domain {
    pub fn validate(&self) -> Result<(), String> {
        match *self {
            Domain::Disc { radius } if radius > 0.0 && radius.is_finite() => Ok(()),
            Domain::Disc { radius } => Err(format!("disc radius must be positive, got {radius}")),
            Domain::Rect { u, v } => {
                let ok = |r: [f64; 2]| r[0].is_finite() && r[1].is_finite() && r[0] < r[1] && r[0] <= 0.0 && 0.0 <= r[1];
                if ok(u) && ok(v) {
                    Ok(())
                } else {
                    Err(format!("rectangle {u:?} x {v:?} must be nonempty and contain 0"))
                }
            }
        }
    }

    pub fn contains(&self, w: Complex64) -> bool {
        match *self {
            Domain::Disc { radius } => w.norm() <= radius,
            Domain::Rect { u, v } => u[0] <= w.re && w.re <= u[1] && v[0] <= w.im && w.im <= v[1],
        }
    }

    /// A coarse `n × n` sample set covering the closed domain.
    pub fn samples(&self, n: usize) -> Vec<Complex64> {
        let n = n.max(2);
        let lerp = |r: [f64; 2], k: usize| r[0] + (r[1] - r[0]) * k as f64 / (n - 1) as f64;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                out.push(match *self {
                    Domain::Disc { radius } => {
                        Complex64::from_polar(lerp([0.0, radius], i), lerp([0.0, std::f64::consts::TAU], j))
                    }
                    Domain::Rect { u, v } => Complex64::new(lerp(u, i), lerp(v, j)),
                });
            }
        }
        out
    }

    /// Largest `|w|` in the domain.
    pub fn extent(&self) -> f64 {
        match *self {
            Domain::Disc { radius } => radius,
            Domain::Rect { u, v } => u[0].abs().max(u[1].abs()).hypot(v[0].abs().max(v[1].abs())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Cauchy,
    Bjorling,
    SchwarzDirect,
    Weierstrass,
    GraphPair,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Cauchy => "cauchy",
            Provenance::Bjorling => "bjorling",
            Provenance::SchwarzDirect => "schwarz-direct",
            Provenance::Weierstrass => "weierstrass",
            Provenance::GraphPair => "graph-pair",
        }
    }

    /// Constructions whose tangent planes are isoclinic by design.
    pub fn is_isoclinic(self) -> bool {
        matches!(self, Provenance::Cauchy | Provenance::GraphPair)
    }
}

/// `f(w) = base + Re ∫₀ʷ g(ξ) dξ` with `g` holomorphic.
///
/// First derivatives come from `g` directly (`f_u = Re g`, `f_v = −Im g`),
/// second ones from the symbolic `g′`. When a primitive `P` with `P′ = g`
/// is known, `f = base + Re(P(w) − P(0))` and no quadrature is done.
#[derive(Debug, Clone)]
pub struct Surface {
    pub base: Vec4,
    pub integrand: Components,
    pub derivative: Components,
    pub primitive: Option<Components>,
    pub quad: QuadConfig,
    pub domain: Domain,
    pub provenance: Provenance,
    pub sign: PlaneSign,
    primitive_at_zero: Vec4,
}

impl Surface {
    pub fn new(
        base: Vec4,
        integrand: Components,
        primitive: Option<Components>,
        quad: QuadConfig,
        domain: Domain,
        provenance: Provenance,
        sign: PlaneSign,
    ) -> Result<Self, EvalError> {
        let derivative = differentiate_all(&integrand);
        let primitive_at_zero = match &primitive {
            Some(p) => eval_complex_all(p, Complex64::new(0.0, 0.0))?.re(),
            None => Vec4::ZERO,
        };
        Ok(Surface { base, integrand, derivative, primitive, quad, domain, provenance, sign, primitive_at_zero })
    }

    pub fn g(&self, w: Complex64) -> Result<CVec4, EvalError> {
        eval_complex_all(&self.integrand, w)
    }

    pub fn g_prime(&self, w: Complex64) -> Result<CVec4, EvalError> {
        eval_complex_all(&self.derivative, w)
    }

    /// `Re ∫ₐᵇ g`, the increment of `f` between two points.
    pub fn increment(&self, a: Complex64, b: Complex64) -> Result<Vec4, QuadError> {
        if let Some(p) = &self.primitive {
            return Ok(eval_complex_all(p, b)?.re() - eval_complex_all(p, a)?.re());
        }
        let (v, _) = crate::analytic::quadrature::segment_integral(|z| self.g(z), a, b, &self.quad)?;
        Ok(v.re())
    }

    /// `f(w)` and the quadrature error estimate (0 for closed forms).
    pub fn eval_with_estimate(&self, w: Complex64) -> Result<(Vec4, f64), QuadError> {
        if let Some(p) = &self.primitive {
            let v = eval_complex_all(p, w)?.re();
            return Ok((self.base + (v - self.primitive_at_zero), 0.0));
        }
        let (v, est) = path_integral(|z| self.g(z), w, &self.quad)?;
        Ok((self.base + v.re(), est))
    }

    pub fn eval(&self, w: Complex64) -> Result<Vec4, QuadError> {
        Ok(self.eval_with_estimate(w)?.0)
    }

    /// `(f_u, f_v)`.
    pub fn tangents(&self, w: Complex64) -> Result<(Vec4, Vec4), EvalError> {
        let g = self.g(w)?;
        Ok((g.re(), -g.im()))
    }
}
