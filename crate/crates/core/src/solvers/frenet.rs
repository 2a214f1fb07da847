//! Frenet-type frames `{T, N₁, N₂, N₃}` of good curves in R⁴₂.

use std::fmt;

use serde::Serialize;

use super::SolverError;
use crate::algebra::{cross, inner, volume, Vec4};
use crate::analytic::CurveR4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrameStage {
    Tangent,
    FirstNormal,
    SecondNormal,
    ThirdNormal,
}

impl fmt::Display for FrameStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FrameStage::Tangent => "tangent (c′ is null)",
            FrameStage::FirstNormal => "first normal (c″ ⊥ T is null)",
            FrameStage::SecondNormal => "second normal (c‴ ⊥ T, N₁ is null)",
            FrameStage::ThirdNormal => "third normal",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GoodFrame {
    pub t_vec: Vec4,
    pub n1: Vec4,
    pub n2: Vec4,
    pub n3: Vec4,
    /// `⟨X, X⟩` for `T, N₁, N₂, N₃`.
    pub eps: [f64; 4],
    /// `√|⟨c′,c′⟩|`.
    pub speed: f64,
    /// `N₃ = cross_sign · 𝔛(T, N₁, N₂)`.
    pub cross_sign: f64,
}

impl GoodFrame {
    pub fn vectors(&self) -> [Vec4; 4] {
        [self.t_vec, self.n1, self.n2, self.n3]
    }
}

/// Default relative threshold for `|⟨X,X⟩|` at each stage.
pub const TAU_FRAME: f64 = 1e-9;

fn unit(v: Vec4, stage: FrameStage, t: f64, tau: f64) -> Result<(Vec4, f64), SolverError> {
    let q = inner(&v, &v);
    if !(q.abs() > tau * v.norm().powi(2)) || v.norm() == 0.0 {
        return Err(SolverError::NotGoodCurve { t, stage });
    }
    Ok((v.scale(1.0 / q.abs().sqrt()), q.signum()))
}

/// Remove the components of `v` along an orthonormal family.
fn reject(mut v: Vec4, basis: &[(Vec4, f64)]) -> Vec4 {
    for (e, eps) in basis {
        v = v - e.scale(eps * inner(&v, e));
    }
    v
}

/// Metric Gram–Schmidt on `c′, c″, c‴`, closed by the cross product and
/// oriented so that `{T, N₁, N₂, N₃}` is a positive basis.
pub fn frenet_good_frame(c: &CurveR4, t: f64, tau: f64) -> Result<GoodFrame, SolverError> {
    let d1 = c.velocity(t)?;
    let d2 = c.acceleration(t)?;
    let d3 = c.jerk(t)?;
    let (tv, et) = unit(d1, FrameStage::Tangent, t, tau)?;
    let (n1, e1) = unit(reject(d2, &[(tv, et)]), FrameStage::FirstNormal, t, tau)?;
    let (n2, e2) = unit(reject(d3, &[(tv, et), (n1, e1)]), FrameStage::SecondNormal, t, tau)?;
    let x = cross(&tv, &n1, &n2);
    let (x, e3) = unit(x, FrameStage::ThirdNormal, t, tau)?;
    // volume(T, N₁, N₂, 𝔛) = ⟨𝔛, 𝔛⟩
    let cross_sign = if volume(&tv, &n1, &n2, &x) > 0.0 { 1.0 } else { -1.0 };
    Ok(GoodFrame {
        t_vec: tv,
        n1,
        n2,
        n3: x.scale(cross_sign),
        eps: [et, e1, e2, e3],
        speed: inner(&d1, &d1).abs().sqrt(),
        cross_sign,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gram_residual(f: &GoodFrame) -> f64 {
        let v = f.vectors();
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                let target = if i == j { f.eps[i] } else { 0.0 };
                worst = worst.max((inner(&v[i], &v[j]) - target).abs());
            }
        }
        worst
    }

    #[test]
    fn helix_frame() {
        let (a, b) = (0.92_f64, 0.9_f64);
        let k = (a * a - b * b).sqrt();
        let src = [
            format!("{b}*cos(s/{k})"),
            format!("{b}*sin(s/{k})"),
            format!("cos({a}*s/{k})"),
            format!("sin({a}*s/{k})"),
        ];
        let c = CurveR4::parse(&src, 3.0).unwrap();
        for s in [-1.0, 0.0, 0.7] {
            let f = frenet_good_frame(&c, s, TAU_FRAME).unwrap();
            assert!(gram_residual(&f) < 1e-12);
            assert!(volume(&f.t_vec, &f.n1, &f.n2, &f.n3) > 0.0);
            assert!((f.speed - 1.0).abs() < 1e-12);
            let t = s / k;
            let m = (b * b - a.powi(4)).sqrt();
            let n_ref = Vec4::new(b * t.cos(), b * t.sin(), a * a * (a * t).cos(), a * a * (a * t).sin()).scale(1.0 / m);
            assert!((f.n1 - n_ref).max_abs() < 1e-10 || (f.n1 + n_ref).max_abs() < 1e-10);
            let n3_ref = Vec4::new(a * a * t.cos(), a * a * t.sin(), b * (a * t).cos(), b * (a * t).sin()).scale(1.0 / m);
            assert!((f.n3 - n3_ref).max_abs() < 1e-10 || (f.n3 + n3_ref).max_abs() < 1e-10);
        }
    }

    #[test]
    fn torus_third_normal_direction() {
        for n in [2.0_f64, 3.0] {
            let src = ["cos(t)".to_string(), "sin(t)".into(), format!("cos({n}*t)"), format!("sin({n}*t)")];
            let c = CurveR4::parse(&src, 7.0).unwrap();
            for t in [0.3_f64, 1.1, 2.5] {
                let f = frenet_good_frame(&c, t, TAU_FRAME).unwrap();
                assert!(gram_residual(&f) < 1e-12);
                let v = Vec4::new(n * n * t.cos(), n * n * t.sin(), (n * t).cos(), (n * t).sin());
                let v = v.scale(1.0 / v.norm());
                let u = f.n3.scale(1.0 / f.n3.norm());
                assert!((u - v).max_abs() < 1e-10 || (u + v).max_abs() < 1e-10, "n={n} t={t}");
            }
        }
    }

    #[test]
    fn null_acceleration_is_rejected() {
        let c = CurveR4::parse(&["cos(t)", "sin(t)", "2*cos(t/sqrt(2))", "2*sin(t/sqrt(2))"], 3.0).unwrap();
        for t in [0.0, 0.4, -2.0] {
            assert!(matches!(
                frenet_good_frame(&c, t, TAU_FRAME),
                Err(SolverError::NotGoodCurve { stage: FrameStage::FirstNormal, .. })
            ));
        }
    }

    #[test]
    fn null_tangent_is_rejected() {
        let c = CurveR4::parse(&["t", "0", "t", "0"], 1.0).unwrap();
        assert!(matches!(
            frenet_good_frame(&c, 0.2, TAU_FRAME),
            Err(SolverError::NotGoodCurve { stage: FrameStage::Tangent, .. })
        ));
    }
}
