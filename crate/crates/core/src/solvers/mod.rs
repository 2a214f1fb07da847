//! Constructions of minimal spacelike surfaces from analytic data.
//!
//! Every solver produces a [`Surface`] whose integrand `g` is a null
//! holomorphic curve in C⁴, so `f = base + Re ∫ g` is conformal and harmonic.

pub mod frenet;
pub mod surface;

use num_complex::Complex64;
use thiserror::Error;

use crate::algebra::{apply_l_generic, cross_generic, inner, PlaneSign, Vec4};
use crate::analytic::curve::{eval_complex_all, Components, CurveError};
use crate::analytic::quadrature::{QuadConfig, QuadError};
use crate::analytic::{CurveR4, EvalError, Expr, Triad};
use crate::quadric::{sign_from_chart, ExtComplex, QuadricKind};

pub use frenet::{frenet_good_frame, FrameStage, GoodFrame};
pub use surface::{Domain, Provenance, Surface};

/// Relative band around zero for `⟨c′,c′⟩` on the axis.
pub const TAU_AXIS: f64 = 1e-9;
/// Relative tolerance of the orthonormality conditions on triads and `d′`.
pub const TAU_TRIAD: f64 = 1e-9;
/// Relative band for the chart sign and the `|Ψ′|` vs `|Φ′|` comparison.
pub const TAU_SIGN: f64 = 1e-9;
/// Sample resolution (per side) for conditions checked on the domain.
pub const DOMAIN_SAMPLES: usize = 21;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("invalid domain: {0}")]
    Domain(String),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("evaluation failed: {0}")]
    Eval(#[from] EvalError),
    #[error("⟨c′,c′⟩ = {value:.3e} at t = {t} but the declared sign is {expected}")]
    WrongCausalSign { expected: &'static str, t: f64, value: f64 },
    #[error("⟨c′,c′⟩ vanishes or changes sign on the interval (value {value:.3e} at t = {t})")]
    SingularOnAxis { t: f64, value: f64 },
    #[error("triad condition {condition} fails at t = {t} (residual {residual:.3e})")]
    TriadInvalid { condition: &'static str, t: f64, residual: f64 },
    #[error("d′ condition {condition} fails at t = {t} (residual {residual:.3e})")]
    IncompatibleDPrime { condition: &'static str, t: f64, residual: f64 },
    #[error("chart class {found} at w = {w} disagrees with declared sign {expected}")]
    SignMismatch { expected: &'static str, found: QuadricKind, w: Complex64 },
    #[error("conformal factor μ vanishes at every sample")]
    DegenerateMu,
    #[error("|Ψ′| vs |Φ′| violates the declared sign at {count} samples, e.g. {examples:?}")]
    SingularDomain { count: usize, examples: Vec<Complex64> },
    #[error("curve is not good at t = {t}: degenerate {stage}")]
    NotGoodCurve { t: f64, stage: FrameStage },
}

fn check_setup(q: &QuadConfig, domain: &Domain) -> Result<(), SolverError> {
    q.validate()?;
    domain.validate().map_err(SolverError::Domain)
}

/// Check the causal character of `c′` along the axis.
fn check_axis_sign(c: &CurveR4, sign: PlaneSign) -> Result<(), SolverError> {
    let mut wrong = None;
    let mut right = false;
    for t in c.samples() {
        let v = c.velocity(t)?;
        let q = inner(&v, &v);
        if q.abs() <= TAU_AXIS * v.norm().powi(2) || v.norm() == 0.0 {
            return Err(SolverError::SingularOnAxis { t, value: q });
        }
        if PlaneSign::of(q) == Some(sign) {
            right = true;
        } else if wrong.is_none() {
            wrong = Some((t, q));
        }
    }
    match wrong {
        // both signs occur, so ⟨c′,c′⟩ crosses zero between samples
        Some((t, value)) if right => Err(SolverError::SingularOnAxis { t, value }),
        Some((t, value)) => Err(SolverError::WrongCausalSign { expected: sign.as_str(), t, value }),
        None => Ok(()),
    }
}

fn sub_scaled(a: &Components, s: Expr, b: &Components) -> Components {
    std::array::from_fn(|k| a[k].clone() - s.clone() * b[k].clone())
}

/// Cauchy problem for isoclinic surfaces: the minimal surface through `c`
/// whose tangent plane along `c` is `span(c′, L c′)`.
///
/// `g = C′ − i L(C′)`.
pub fn solve_cauchy_isoclinic(
    c: &CurveR4,
    sign: PlaneSign,
    q: &QuadConfig,
    domain: Domain,
) -> Result<Surface, SolverError> {
    check_setup(q, &domain)?;
    check_axis_sign(c, sign)?;
    let d1 = c.derivative_exprs(1);
    let g = sub_scaled(d1, Expr::imag(), &apply_l_generic(d1));
    Ok(Surface::new(c.point(0.0)?, g, None, *q, domain, Provenance::Cauchy, sign)?)
}

/// Validate a Björling triad for a surface of the given sign: `A, B` are
/// unit vectors of the opposite sign, orthogonal to each other and to `c′`.
pub fn validate_triad(tr: &Triad, sign: PlaneSign) -> Result<(), SolverError> {
    let eps = -sign.epsilon();
    for t in tr.curve.samples() {
        let v = tr.curve.velocity(t)?;
        let (a, b) = tr.frame(t)?;
        let scale_v = v.norm().max(f64::MIN_POSITIVE);
        let checks: [(&'static str, f64); 5] = [
            ("<A,A> = ±1", (inner(&a, &a) - eps).abs()),
            ("<B,B> = ±1", (inner(&b, &b) - eps).abs()),
            ("<A,B> = 0", inner(&a, &b).abs() / (a.norm() * b.norm()).max(1.0)),
            ("<A,c'> = 0", inner(&a, &v).abs() / (a.norm() * scale_v)),
            ("<B,c'> = 0", inner(&b, &v).abs() / (b.norm() * scale_v)),
        ];
        for (condition, residual) in checks {
            if !(residual <= TAU_TRIAD) {
                return Err(SolverError::TriadInvalid { condition, t, residual });
            }
        }
    }
    Ok(())
}

/// Björling problem: the minimal surface through `c` whose normal bundle
/// along `c` is spanned by `A, B`.
///
/// `g = C′ − i 𝔛(C′, A, B)`, the cross product extended complex-trilinearly.
pub fn solve_bjorling(tr: &Triad, sign: PlaneSign, q: &QuadConfig, domain: Domain) -> Result<Surface, SolverError> {
    check_setup(q, &domain)?;
    check_axis_sign(&tr.curve, sign)?;
    validate_triad(tr, sign)?;
    let d1 = tr.curve.derivative_exprs(1);
    let dprime = cross_generic(d1, &tr.a, &tr.b);
    let g = sub_scaled(d1, Expr::imag(), &dprime);
    Ok(Surface::new(tr.curve.point(0.0)?, g, None, *q, domain, Provenance::Bjorling, sign)?)
}

/// Schwarz form of the Björling problem with `d′ = f_v` along the axis
/// supplied directly.
///
/// `g = C′ − i D′`.
pub fn solve_schwarz_direct(
    c: &CurveR4,
    dprime: &Components,
    sign: PlaneSign,
    q: &QuadConfig,
    domain: Domain,
) -> Result<Surface, SolverError> {
    check_setup(q, &domain)?;
    check_axis_sign(c, sign)?;
    for t in c.samples() {
        let v = c.velocity(t)?;
        let d = crate::analytic::curve::eval_real_all(dprime, t)
            .map_err(|(component, source)| CurveError::Eval { component, t, source })?;
        let scale = v.norm() * d.norm().max(v.norm());
        let checks: [(&'static str, f64); 2] = [
            ("<c',d'> = 0", inner(&v, &d).abs() / scale),
            ("<d',d'> = <c',c'>", (inner(&d, &d) - inner(&v, &v)).abs() / scale),
        ];
        for (condition, residual) in checks {
            if !(residual <= TAU_TRIAD) {
                return Err(SolverError::IncompatibleDPrime { condition, t, residual });
            }
        }
    }
    let g = sub_scaled(c.derivative_exprs(1), Expr::imag(), dprime);
    Ok(Surface::new(c.point(0.0)?, g, None, *q, domain, Provenance::SchwarzDirect, sign)?)
}

/// `W(x, y) = (x + y, −i(x − y), 1 + xy, i(1 − xy))` over expressions.
pub fn w_exprs(x: &Expr, y: &Expr) -> Components {
    let i = Expr::imag;
    let xy = x.clone() * y.clone();
    [
        x.clone() + y.clone(),
        -(i() * (x.clone() - y.clone())),
        Expr::one() + xy.clone(),
        i() * (Expr::one() - xy),
    ]
}

/// Weierstrass data: `g = 2 μ W(x, y)`.
pub fn weierstrass_surface(
    mu: &Expr,
    x: &Expr,
    y: &Expr,
    base: Vec4,
    sign: PlaneSign,
    q: &QuadConfig,
    domain: Domain,
) -> Result<Surface, SolverError> {
    check_setup(q, &domain)?;
    let expected = match sign {
        PlaneSign::Positive => QuadricKind::Pos,
        PlaneSign::Negative => QuadricKind::Neg,
    };
    let mut mu_nonzero = false;
    for w in domain.samples(DOMAIN_SAMPLES) {
        mu_nonzero |= mu.eval_complex(w)? != Complex64::new(0.0, 0.0);
        let xv = ExtComplex::Finite(x.eval_complex(w)?);
        let yv = ExtComplex::Finite(y.eval_complex(w)?);
        match sign_from_chart(xv, yv, TAU_SIGN) {
            QuadricKind::Null => {}
            found if found != expected => {
                return Err(SolverError::SignMismatch { expected: sign.as_str(), found, w });
            }
            _ => {}
        }
    }
    if !mu_nonzero {
        return Err(SolverError::DegenerateMu);
    }
    let two_mu = Expr::constant(2.0) * mu.clone();
    let g = w_exprs(x, y).map(|e| two_mu.clone() * e);
    Ok(Surface::new(base, g, None, *q, domain, Provenance::Weierstrass, sign)?)
}

/// Isoclinic surface from a pair of holomorphic functions:
/// `f = (Re Ψ, Im Ψ, Re Φ, Im Φ)`, `g = (Ψ′, −iΨ′, Φ′, −iΦ′)`.
pub fn graph_pair(psi: &Expr, phi: &Expr, sign: PlaneSign, domain: Domain) -> Result<Surface, SolverError> {
    domain.validate().map_err(SolverError::Domain)?;
    let dpsi = psi.differentiate();
    let dphi = phi.differentiate();
    let mut bad = Vec::new();
    for w in domain.samples(DOMAIN_SAMPLES) {
        let a = dpsi.eval_complex(w)?.norm_sqr();
        let b = dphi.eval_complex(w)?.norm_sqr();
        // positive planes need |Ψ′| < |Φ′|
        let gap = (b - a) * sign.epsilon();
        if !(gap > TAU_SIGN * (a + b)) {
            bad.push(w);
        }
    }
    if !bad.is_empty() {
        let count = bad.len();
        bad.truncate(5);
        return Err(SolverError::SingularDomain { count, examples: bad });
    }
    let mi = || -Expr::imag();
    let g = [dpsi.clone(), mi() * dpsi, dphi.clone(), mi() * dphi];
    let p = [psi.clone(), mi() * psi.clone(), phi.clone(), mi() * phi.clone()];
    let base = eval_complex_all(&p, Complex64::new(0.0, 0.0))?.re();
    Ok(Surface::new(base, g, Some(p), QuadConfig::default(), domain, Provenance::GraphPair, sign)?)
}
