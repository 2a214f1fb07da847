//! Real-analytic curves in R⁴₂ and Björling triads along them.

use num_complex::Complex64;
use thiserror::Error;

use super::expr::{EvalError, Expr};
use super::parse::{parse, ParseError};
use crate::algebra::Vec4;
use crate::quadric::CVec4;

/// Samples used to check conditions "on I".
pub const AXIS_SAMPLES: usize = 41;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    /// `component` is 0-based; messages print it 1-based.
    #[error("component {}: {source}", component + 1)]
    Parse { component: usize, source: ParseError },
    #[error("interval radius must be positive and finite, got {0}")]
    BadRadius(f64),
    #[error("component {} at t = {t}: {source}", component + 1)]
    Eval { component: usize, t: f64, source: EvalError },
}

pub type Components = [Expr; 4];

pub fn parse_components(src: &[impl AsRef<str>; 4]) -> Result<Components, CurveError> {
    let mut out: [Expr; 4] = Default::default();
    for (k, s) in src.iter().enumerate() {
        out[k] = parse(s.as_ref()).map_err(|source| CurveError::Parse { component: k, source })?;
    }
    Ok(out)
}

pub fn differentiate_all(c: &Components) -> Components {
    std::array::from_fn(|k| c[k].differentiate())
}

pub fn eval_real_all(c: &Components, t: f64) -> Result<Vec4, (usize, EvalError)> {
    let mut v = [0.0; 4];
    for k in 0..4 {
        v[k] = c[k].eval_real(t).map_err(|e| (k, e))?;
    }
    Ok(Vec4(v))
}

pub fn eval_complex_all(c: &Components, w: Complex64) -> Result<CVec4, EvalError> {
    let mut v = [Complex64::new(0.0, 0.0); 4];
    for k in 0..4 {
        v[k] = c[k].eval_complex(w)?;
    }
    Ok(CVec4(v))
}

/// Sample points of the open interval `(−r, r)`; an odd count includes 0.
pub fn axis_samples(radius: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| radius * (-1.0 + 2.0 * (k + 1) as f64 / (n + 1) as f64))
}

/// A curve `c: (−r, r) → R⁴₂` with its first three derivatives.
#[derive(Debug, Clone)]
pub struct CurveR4 {
    pub components: Components,
    pub radius: f64,
    pub label: Option<String>,
    d1: Components,
    d2: Components,
    d3: Components,
}

impl CurveR4 {
    pub fn new(components: Components, radius: f64) -> Result<Self, CurveError> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(CurveError::BadRadius(radius));
        }
        let d1 = differentiate_all(&components);
        let d2 = differentiate_all(&d1);
        let d3 = differentiate_all(&d2);
        let c = CurveR4 { components, radius, label: None, d1, d2, d3 };
        for t in axis_samples(radius, AXIS_SAMPLES) {
            c.point(t)?;
            c.velocity(t)?;
        }
        Ok(c)
    }

    pub fn parse(src: &[impl AsRef<str>; 4], radius: f64) -> Result<Self, CurveError> {
        CurveR4::new(parse_components(src)?, radius)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// `c`, `c′`, `c″`, `c‴` as expressions.
    pub fn derivative_exprs(&self, order: usize) -> &Components {
        match order {
            0 => &self.components,
            1 => &self.d1,
            2 => &self.d2,
            3 => &self.d3,
            _ => panic!("derivative order {order} not kept"),
        }
    }

    fn at(&self, order: usize, t: f64) -> Result<Vec4, CurveError> {
        eval_real_all(self.derivative_exprs(order), t).map_err(|(component, source)| CurveError::Eval { component, t, source })
    }

    pub fn point(&self, t: f64) -> Result<Vec4, CurveError> {
        self.at(0, t)
    }

    pub fn velocity(&self, t: f64) -> Result<Vec4, CurveError> {
        self.at(1, t)
    }

    pub fn acceleration(&self, t: f64) -> Result<Vec4, CurveError> {
        self.at(2, t)
    }

    pub fn jerk(&self, t: f64) -> Result<Vec4, CurveError> {
        self.at(3, t)
    }

    /// Holomorphic extension `C(w)`.
    pub fn extend(&self, w: Complex64) -> Result<CVec4, EvalError> {
        eval_complex_all(&self.components, w)
    }

    pub fn samples(&self) -> impl Iterator<Item = f64> {
        axis_samples(self.radius, AXIS_SAMPLES)
    }
}

/// Björling data: a curve and an orthonormal frame `A, B` of its normal
/// plane.
#[derive(Debug, Clone)]
pub struct Triad {
    pub curve: CurveR4,
    pub a: Components,
    pub b: Components,
}

impl Triad {
    pub fn new(curve: CurveR4, a: Components, b: Components) -> Result<Self, CurveError> {
        let tr = Triad { curve, a, b };
        for t in tr.curve.samples() {
            tr.frame(t)?;
        }
        Ok(tr)
    }

    /// `(A(t), B(t))`.
    pub fn frame(&self, t: f64) -> Result<(Vec4, Vec4), CurveError> {
        let err = |(component, source)| CurveError::Eval { component, t, source };
        Ok((eval_real_all(&self.a, t).map_err(err)?, eval_real_all(&self.b, t).map_err(err)?))
    }
}
