//! Geometric verification of a surface: fundamental forms, curvature by
//! two independent formulas, isoclinicity, hyperbolic angles, geodesic and
//! asymptotic tests along curves, minimality residuals and singular sets.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{apply_l, causal, inner, plane_hyperbolic_angle, AlgebraError, Causal, PlaneAngleReport, PlaneSign, Vec4};
use crate::analytic::curve::eval_complex_all;
use crate::analytic::quadrature::{fixed_rule, QuadError};
use crate::analytic::{CurveR4, CurveError, EvalError};
use crate::grid::GridSpec;
use crate::quadric::{cbilinear, normal_j, ProjPoint, QuadricError};
use crate::solvers::Surface;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DiagConfig {
    /// Finite-difference step.
    pub fd_h: f64,
    /// `|λ²|` below which a point counts as singular.
    pub tau_sing: f64,
    /// Relative quadric band for normal-plane construction.
    pub tau_q: f64,
    /// Isothermicity tolerance of tangent bases for the angle report.
    pub tau_iso: f64,
    /// Relative distance allowed between `c(t)` and `f(t, 0)`.
    pub tau_on_surface: f64,
    /// Combine the conformal curvature at steps `h` and `h/2`.
    pub richardson: bool,
}

impl Default for DiagConfig {
    fn default() -> Self {
        DiagConfig { fd_h: 1e-3, tau_sing: 1e-6, tau_q: 1e-9, tau_iso: 1e-8, tau_on_surface: 1e-7, richardson: true }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiagError {
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Quadric(#[from] QuadricError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("metric nearly singular at w = {w}: λ² = {lambda2:.3e}")]
    NearSingular { w: Complex64, lambda2: f64 },
    #[error("tangent plane at w = {w} is not spacelike (E = {e:.3e})")]
    NotSpacelike { w: Complex64, e: f64 },
    #[error("curve leaves the surface at t = {t}: |f(t,0) − c(t)| = {distance:.3e}")]
    CurveOffSurface { t: f64, distance: f64 },
}

/// Position and partial derivatives up to order two at `w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub w: Complex64,
    pub f: Vec4,
    pub fu: Vec4,
    pub fv: Vec4,
    pub fuu: Vec4,
    pub fuv: Vec4,
    pub fvv: Vec4,
}

fn local_jet(s: &Surface, w: Complex64, f: Vec4) -> Result<Jet2, EvalError> {
    let g = s.g(w)?;
    let gp = s.g_prime(w)?;
    Ok(Jet2 { w, f, fu: g.re(), fv: -g.im(), fuu: gp.re(), fuv: -gp.im(), fvv: -gp.re() })
}

pub fn jet(s: &Surface, w: Complex64) -> Result<Jet2, DiagError> {
    let f = s.eval(w)?;
    Ok(local_jet(s, w, f)?)
}

/// Jet without the position (no quadrature).
pub fn jet_derivatives(s: &Surface, w: Complex64) -> Result<Jet2, DiagError> {
    Ok(local_jet(s, w, Vec4::ZERO)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FirstForm {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub lambda2: f64,
    pub class: Causal,
}

pub fn first_form(j: &Jet2) -> FirstForm {
    let e = inner(&j.fu, &j.fu);
    let f = inner(&j.fu, &j.fv);
    let g = inner(&j.fv, &j.fv);
    FirstForm { e, f, g, lambda2: e.abs(), class: causal(&j.fu, 0.0).class }
}

/// Signed `E = ⟨f_u, f_u⟩` straight from the integrand.
pub fn signed_e(s: &Surface, w: Complex64) -> Result<f64, EvalError> {
    let fu = s.g(w)?.re();
    Ok(inner(&fu, &fu))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurvatureMethod {
    /// `K = −Δ ln|E| / (2E)` by finite differences.
    Conformal,
    /// Gauss equation with the second fundamental form in an orthonormal
    /// normal frame.
    SecondForm,
}

/// Orthonormal frame `{N₁, N₂}` of the normal plane at `w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalFrame {
    pub n1: Vec4,
    pub n2: Vec4,
    /// `⟨N₁,N₁⟩`, `⟨N₂,N₂⟩`.
    pub eps: [f64; 2],
}

pub fn normal_frame(s: &Surface, w: Complex64, cfg: &DiagConfig) -> Result<NormalFrame, DiagError> {
    let g = s.g(w)?;
    let e = inner(&g.re(), &g.re());
    if e.abs() <= cfg.tau_sing {
        return Err(DiagError::NearSingular { w, lambda2: e.abs() });
    }
    let z = *normal_j(&ProjPoint::new(g)?, cfg.tau_q)?.representative();
    let unit = |v: Vec4| {
        let q = inner(&v, &v);
        (v.scale(1.0 / q.abs().sqrt()), q.signum())
    };
    let (n1, e1) = unit(z.re());
    let im = z.im();
    let (n2, e2) = unit(im - n1.scale(e1 * inner(&im, &n1)));
    Ok(NormalFrame { n1, n2, eps: [e1, e2] })
}

/// Largest deviation of the Gram matrix of `{f_u/λ, f_v/λ, N₁, N₂}` from
/// its diagonal sign pattern.
pub fn frame_orthonormality_residual(j: &Jet2, nf: &NormalFrame) -> f64 {
    let lambda = inner(&j.fu, &j.fu).abs().sqrt();
    let v = [j.fu.scale(1.0 / lambda), j.fv.scale(1.0 / lambda), nf.n1, nf.n2];
    let mut worst: f64 = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            let q = inner(&v[a], &v[b]);
            let target = if a == b { q.signum() } else { 0.0 };
            worst = worst.max((q - target).abs());
        }
    }
    worst
}

pub fn gauss_curvature(s: &Surface, w: Complex64, method: CurvatureMethod, cfg: &DiagConfig) -> Result<f64, DiagError> {
    let e0 = signed_e(s, w)?;
    if e0.abs() <= cfg.tau_sing {
        return Err(DiagError::NearSingular { w, lambda2: e0.abs() });
    }
    match method {
        CurvatureMethod::Conformal => {
            let l = |d: Complex64| -> Result<f64, DiagError> {
                let e = signed_e(s, w + d)?;
                if e.abs() <= cfg.tau_sing || e.signum() != e0.signum() {
                    return Err(DiagError::NearSingular { w: w + d, lambda2: e.abs() });
                }
                Ok(e.abs().ln())
            };
            let lap = |h: f64| -> Result<f64, DiagError> {
                let sum = l(Complex64::new(h, 0.0))? + l(Complex64::new(-h, 0.0))? + l(Complex64::new(0.0, h))?
                    + l(Complex64::new(0.0, -h))?;
                Ok((sum - 4.0 * e0.abs().ln()) / (h * h))
            };
            let h = cfg.fd_h;
            let d = if cfg.richardson { (4.0 * lap(h / 2.0)? - lap(h)?) / 3.0 } else { lap(h)? };
            Ok(-d / (2.0 * e0))
        }
        CurvatureMethod::SecondForm => {
            let j = jet_derivatives(s, w)?;
            let nf = normal_frame(s, w, cfg)?;
            let ff = first_form(&j);
            let det_g = ff.e * ff.g - ff.f * ff.f;
            let mut num = 0.0;
            for (n, eps) in [(nf.n1, nf.eps[0]), (nf.n2, nf.eps[1])] {
                let b11 = inner(&j.fuu, &n);
                let b12 = inner(&j.fuv, &n);
                let b22 = inner(&j.fvv, &n);
                num += eps * (b11 * b22 - b12 * b12);
            }
            Ok(num / det_g)
        }
    }
}

/// `min over ± of ‖f_v ∓ L f_u‖ / λ`.
pub fn isoclinic_residual(j: &Jet2) -> f64 {
    let lambda = inner(&j.fu, &j.fu).abs().sqrt();
    let lf = apply_l(&j.fu);
    let a = (j.fv - lf).norm();
    let b = (j.fv + lf).norm();
    a.min(b) / lambda
}

fn plane_sign(j: &Jet2) -> Result<PlaneSign, DiagError> {
    let e = inner(&j.fu, &j.fu);
    PlaneSign::of(e).ok_or(DiagError::NotSpacelike { w: j.w, e })
}

/// Hyperbolic angle of the tangent plane against π₁₂ or π₃₄.
pub fn hyperbolic_angle_at(j: &Jet2, cfg: &DiagConfig) -> Result<PlaneAngleReport, DiagError> {
    let sign = plane_sign(j)?;
    Ok(plane_hyperbolic_angle(&j.fu, &j.fv, sign, cfg.tau_iso)?)
}

/// Hyperbolic angle of the normal plane against its reference plane.
pub fn normal_angle_at(s: &Surface, j: &Jet2, cfg: &DiagConfig) -> Result<PlaneAngleReport, DiagError> {
    let sign = plane_sign(j)?;
    let nf = normal_frame(s, j.w, cfg)?;
    Ok(plane_hyperbolic_angle(&nf.n1, &nf.n2, sign.opposite(), cfg.tau_iso)?)
}

/// Tangential and normal parts of `x` at a tangent basis, via the inverse
/// of the first fundamental form.
fn split(j: &Jet2, x: &Vec4) -> (Vec4, Vec4) {
    let ff = first_form(j);
    let det = ff.e * ff.g - ff.f * ff.f;
    let (p, q) = (inner(x, &j.fu), inner(x, &j.fv));
    let a = (ff.g * p - ff.f * q) / det;
    let b = (ff.e * q - ff.f * p) / det;
    let tan = j.fu.scale(a) + j.fv.scale(b);
    (tan, *x - tan)
}

fn curve_acceleration_split(s: &Surface, c: &CurveR4, t: f64, cfg: &DiagConfig) -> Result<(f64, f64, f64), DiagError> {
    let w = Complex64::new(t, 0.0);
    let p = c.point(t)?;
    let j = jet(s, w)?;
    let distance = (j.f - p).norm();
    if distance > cfg.tau_on_surface * p.norm().max(1.0) {
        return Err(DiagError::CurveOffSurface { t, distance });
    }
    let e = inner(&j.fu, &j.fu);
    if e.abs() <= cfg.tau_sing {
        return Err(DiagError::NearSingular { w, lambda2: e.abs() });
    }
    let acc = c.acceleration(t)?;
    let (tan, nor) = split(&j, &acc);
    Ok((tan.norm(), nor.norm(), acc.norm()))
}

/// Relative size of the tangential part of `c″(t)`; zero for geodesics.
pub fn geodesic_check(s: &Surface, c: &CurveR4, t: f64, cfg: &DiagConfig) -> Result<f64, DiagError> {
    let (tan, _, n) = curve_acceleration_split(s, c, t, cfg)?;
    Ok(if n > 0.0 { tan / n } else { 0.0 })
}

/// Relative size of the normal part of `c″(t)`; zero for asymptotic lines.
pub fn asymptotic_check(s: &Surface, c: &CurveR4, t: f64, cfg: &DiagConfig) -> Result<f64, DiagError> {
    let (_, nor, n) = curve_acceleration_split(s, c, t, cfg)?;
    Ok(if n > 0.0 { nor / n } else { 0.0 })
}

/// `‖Δf(w)‖` by the 9-point isotropic stencil. Neighbour values are
/// obtained as `f(w) + Re ∫_w^{w+δ} g` along the short segments.
pub fn minimality_residual(s: &Surface, w: Complex64, h: f64) -> Result<f64, DiagError> {
    let inc = |du: f64, dv: f64| -> Result<Vec4, DiagError> {
        let b = w + Complex64::new(du * h, dv * h);
        Ok(match &s.primitive {
            Some(p) => eval_complex_all(p, b)?.re() - eval_complex_all(p, w)?.re(),
            None => fixed_rule(|z| s.g(z), w, b, 1, s.quad.nodes)?.re(),
        })
    };
    let edges = inc(1.0, 0.0)? + inc(-1.0, 0.0)? + inc(0.0, 1.0)? + inc(0.0, -1.0)?;
    let corners = inc(1.0, 1.0)? + inc(-1.0, 1.0)? + inc(1.0, -1.0)? + inc(-1.0, -1.0)?;
    Ok((edges.scale(4.0) + corners).scale(1.0 / (6.0 * h * h)).norm())
}

/// `|⟪g, g⟫| / ‖g‖²`.
pub fn conformality_residual(s: &Surface, w: Complex64) -> Result<f64, DiagError> {
    let g = s.g(w)?;
    Ok(cbilinear(&g, &g).norm() / g.norm_sqr().max(f64::MIN_POSITIVE))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingularCell {
    pub i: usize,
    pub j: usize,
    pub center_u: f64,
    pub center_v: f64,
    pub min_abs_lambda2: f64,
    pub sign_change: bool,
}

/// Grid cells whose corners straddle a sign change of `λ²` or come within
/// `tau_sing` of zero.
pub fn singular_scan(s: &Surface, grid: &GridSpec, tau_sing: f64) -> Result<Vec<SingularCell>, DiagError> {
    let e: Vec<Vec<f64>> = (0..grid.nu)
        .into_par_iter()
        .map(|i| (0..grid.nv).map(|j| signed_e(s, grid.point(i, j))).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    let mut cells = Vec::new();
    for i in 0..grid.nu - 1 {
        for j in 0..grid.nv - 1 {
            let c = [e[i][j], e[i + 1][j], e[i][j + 1], e[i + 1][j + 1]];
            let pos = c.iter().any(|x| *x > 0.0);
            let neg = c.iter().any(|x| *x < 0.0);
            let min_abs = c.iter().fold(f64::INFINITY, |m, x| m.min(x.abs()));
            if (pos && neg) || min_abs < tau_sing {
                let center = (grid.point(i, j) + grid.point(i + 1, j) + grid.point(i, j + 1) + grid.point(i + 1, j + 1)) / 4.0;
                cells.push(SingularCell {
                    i,
                    j,
                    center_u: center.re,
                    center_v: center.im,
                    min_abs_lambda2: min_abs,
                    sign_change: pos && neg,
                });
            }
        }
    }
    Ok(cells)
}

/// Everything known about the surface at one sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PointReport {
    pub u: f64,
    pub v: f64,
    pub x: Vec4,
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub lambda2: f64,
    pub class: Causal,
    pub conformal_gap: f64,
    pub conformal_cross: f64,
    pub conformality: f64,
    pub isoclinic_residual: f64,
    pub coshsq_min: Option<f64>,
    pub coshsq_max: Option<f64>,
    pub k_conformal: Option<f64>,
    pub k_secondform: Option<f64>,
    pub minimality_residual: f64,
    pub quad_estimate: f64,
}

impl PointReport {
    pub fn curvature(&self) -> Option<f64> {
        self.k_secondform.or(self.k_conformal)
    }
}

pub fn point_report(s: &Surface, w: Complex64, cfg: &DiagConfig) -> Result<PointReport, DiagError> {
    let (x, quad_estimate) = s.eval_with_estimate(w)?;
    let j = local_jet(s, w, x)?;
    let ff = first_form(&j);
    let singular = ff.lambda2 <= cfg.tau_sing;
    let angle = if singular { None } else { hyperbolic_angle_at(&j, cfg).ok() };
    let curvature = |m| match gauss_curvature(s, w, m, cfg) {
        Ok(k) => Ok(Some(k)),
        Err(DiagError::NearSingular { .. }) => Ok(None),
        Err(e) => Err(e),
    };
    Ok(PointReport {
        u: w.re,
        v: w.im,
        x,
        e: ff.e,
        f: ff.f,
        g: ff.g,
        lambda2: ff.lambda2,
        class: if singular { Causal::Null } else { ff.class },
        conformal_gap: (ff.e - ff.g).abs(),
        conformal_cross: ff.f.abs(),
        conformality: conformality_residual(s, w)?,
        isoclinic_residual: if singular { f64::NAN } else { isoclinic_residual(&j) },
        coshsq_min: angle.map(|a| a.coshsq_min),
        coshsq_max: angle.map(|a| a.coshsq_max),
        k_conformal: curvature(CurvatureMethod::Conformal)?,
        k_secondform: curvature(CurvatureMethod::SecondForm)?,
        minimality_residual: minimality_residual(s, w, cfg.fd_h)?,
        quad_estimate,
    })
}

/// Point reports over a grid, row-major, rows computed in parallel.
pub fn sample_grid(s: &Surface, grid: &GridSpec, cfg: &DiagConfig) -> Result<Vec<PointReport>, DiagError> {
    let rows: Vec<Vec<PointReport>> = (0..grid.nu)
        .into_par_iter()
        .map(|i| (0..grid.nv).map(|j| point_report(s, grid.point(i, j), cfg)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    Ok(rows.into_iter().flatten().collect())
}
