//! Linear algebra of R⁴₂, the real 4-space with signature (−,−,+,+).
//!
//! Everything here is exact up to floating-point rounding: the metric, the
//! projections onto the coordinate planes π₁₂ and π₃₄, the two isometries
//! `L` and `N`, the ternary cross product dual to the volume form, the unit
//! spheres, and the hyperbolic angle between a spacelike plane and its
//! reference coordinate plane.

use std::ops::{Add, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Metric signature, as the diagonal of the Gram matrix of the canonical basis.
pub const SIGNATURE: [f64; 4] = [-1.0, -1.0, 1.0, 1.0];

/// A real vector of R⁴₂ in the canonical basis.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec4(pub [f64; 4]);

impl Vec4 {
    pub const ZERO: Vec4 = Vec4([0.0; 4]);

    pub const fn new(v1: f64, v2: f64, v3: f64, v4: f64) -> Self {
        Vec4([v1, v2, v3, v4])
    }

    /// Canonical basis vector `e_{k+1}` (zero-based index).
    pub fn basis(k: usize) -> Self {
        let mut v = [0.0; 4];
        v[k] = 1.0;
        Vec4(v)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    pub fn scale(self, s: f64) -> Self {
        Vec4(self.0.map(|x| x * s))
    }

    /// Euclidean (not metric) norm, used for residuals.
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    /// `pr₁₂(v)`, written v̂.
    pub fn pr12(&self) -> Vec4 {
        Vec4([self.0[0], self.0[1], 0.0, 0.0])
    }

    /// `pr₃₄(v)`, written ṽ.
    pub fn pr34(&self) -> Vec4 {
        Vec4([0.0, 0.0, self.0[2], self.0[3]])
    }

    /// Index-lowered vector `(−v¹, −v², v³, v⁴)`, so that `⟨v, w⟩ = v♭ · w`.
    pub fn flat(&self) -> Vec4 {
        Vec4(std::array::from_fn(|k| SIGNATURE[k] * self.0[k]))
    }
}

impl Index<usize> for Vec4 {
    type Output = f64;
    fn index(&self, k: usize) -> &f64 {
        &self.0[k]
    }
}

impl Add for Vec4 {
    type Output = Vec4;
    fn add(self, o: Vec4) -> Vec4 {
        Vec4(std::array::from_fn(|k| self.0[k] + o.0[k]))
    }
}

impl Sub for Vec4 {
    type Output = Vec4;
    fn sub(self, o: Vec4) -> Vec4 {
        Vec4(std::array::from_fn(|k| self.0[k] - o.0[k]))
    }
}

impl Neg for Vec4 {
    type Output = Vec4;
    fn neg(self) -> Vec4 {
        Vec4(self.0.map(|x| -x))
    }
}

impl Mul<Vec4> for f64 {
    type Output = Vec4;
    fn mul(self, v: Vec4) -> Vec4 {
        v.scale(self)
    }
}

/// `⟨v, w⟩ = −v¹w¹ − v²w² + v³w³ + v⁴w⁴`.
pub fn inner(v: &Vec4, w: &Vec4) -> f64 {
    -v.0[0] * w.0[0] - v.0[1] * w.0[1] + v.0[2] * w.0[2] + v.0[3] * w.0[3]
}

/// The signed-metric bilinear form over any ring, so the same formula serves
/// real vectors, complex vectors and symbolic vectors.
pub fn inner_generic<T>(v: &[T; 4], w: &[T; 4]) -> T
where
    T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    let p = |k: usize| v[k].clone() * w[k].clone();
    p(2) + p(3) - p(0) - p(1)
}

/// `L(v) = (−v², v¹, −v⁴, v³)`.
pub fn apply_l_generic<T: Clone + Neg<Output = T>>(v: &[T; 4]) -> [T; 4] {
    [-v[1].clone(), v[0].clone(), -v[3].clone(), v[2].clone()]
}

/// `N(v) = (−v³, v⁴, −v¹, v²)`. It exchanges π₁₂ and π₃₄ and therefore
/// reverses the metric: `⟨Nv, Nw⟩ = −⟨v, w⟩`.
pub fn apply_n_generic<T: Clone + Neg<Output = T>>(v: &[T; 4]) -> [T; 4] {
    [-v[2].clone(), v[3].clone(), -v[0].clone(), v[1].clone()]
}

pub fn apply_l(v: &Vec4) -> Vec4 {
    Vec4(apply_l_generic(&v.0))
}

pub fn apply_n(v: &Vec4) -> Vec4 {
    Vec4(apply_n_generic(&v.0))
}

/// Minor `Δ_ijk` of the 3×4 matrix with rows x, y, z on columns i < j < k.
fn minor3<T>(x: &[T; 4], y: &[T; 4], z: &[T; 4], c: [usize; 3]) -> T
where
    T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    let [i, j, k] = c;
    let m = |a: &T, b: &T, c: &T, d: &T| a.clone() * d.clone() - b.clone() * c.clone();
    x[i].clone() * m(&y[j], &y[k], &z[j], &z[k]) - x[j].clone() * m(&y[i], &y[k], &z[i], &z[k])
        + x[k].clone() * m(&y[i], &y[j], &z[i], &z[j])
}

/// Ternary cross product `(Δ₂₃₄, −Δ₁₃₄, −Δ₁₂₄, Δ₁₂₃)`, the unique vector with
/// `ω(x, y, z, v) = ⟨𝔛(x, y, z), v⟩`.
///
/// Generic over the scalar ring: it is trilinear, and its complex extension
/// (used by the Björling solver) is exactly this formula evaluated on
/// complex components.
pub fn cross_generic<T>(x: &[T; 4], y: &[T; 4], z: &[T; 4]) -> [T; 4]
where
    T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    [
        minor3(x, y, z, [1, 2, 3]),
        -minor3(x, y, z, [0, 2, 3]),
        -minor3(x, y, z, [0, 1, 3]),
        minor3(x, y, z, [0, 1, 2]),
    ]
}

pub fn cross(x: &Vec4, y: &Vec4, z: &Vec4) -> Vec4 {
    Vec4(cross_generic(&x.0, &y.0, &z.0))
}

/// The minors `Δ_ijk` in lexicographic order (123, 124, 134, 234).
pub fn minors(x: &Vec4, y: &Vec4, z: &Vec4) -> [f64; 4] {
    [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]].map(|c| minor3(&x.0, &y.0, &z.0, c))
}

/// Volume form `ω(a, b, c, d) = det[a; b; c; d]`.
pub fn volume(a: &Vec4, b: &Vec4, c: &Vec4, d: &Vec4) -> f64 {
    // cofactor expansion along the last row
    let [d123, d124, d134, d234] = minors(a, b, c);
    -d.0[0] * d234 + d.0[1] * d134 - d.0[2] * d124 + d.0[3] * d123
}

/// Causal character of a vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Causal {
    Positive,
    Negative,
    Null,
}

impl Causal {
    /// ε ∈ {1, −1, 0}.
    pub fn epsilon(self) -> f64 {
        match self {
            Causal::Positive => 1.0,
            Causal::Negative => -1.0,
            Causal::Null => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CausalClass {
    pub class: Causal,
    /// `⟨v, v⟩`
    pub value: f64,
}

/// Classify `v` by the sign of `⟨v, v⟩` with an absolute null band `tau_null`.
pub fn causal(v: &Vec4, tau_null: f64) -> CausalClass {
    let value = inner(v, v);
    let class = if value > tau_null {
        Causal::Positive
    } else if value < -tau_null {
        Causal::Negative
    } else {
        Causal::Null
    };
    CausalClass { class, value }
}

/// Sign of a spacelike plane or a surface: positive or negative definite
/// induced metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlaneSign {
    Positive,
    Negative,
}

impl PlaneSign {
    pub fn epsilon(self) -> f64 {
        match self {
            PlaneSign::Positive => 1.0,
            PlaneSign::Negative => -1.0,
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            PlaneSign::Positive => PlaneSign::Negative,
            PlaneSign::Negative => PlaneSign::Positive,
        }
    }

    pub fn of(value: f64) -> Option<Self> {
        if value > 0.0 {
            Some(PlaneSign::Positive)
        } else if value < 0.0 {
            Some(PlaneSign::Negative)
        } else {
            None
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PlaneSign::Positive => "positive",
            PlaneSign::Negative => "negative",
        }
    }
}

/// Which unit sphere `S³₂(ε)` to parametrize.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SphereKind {
    /// `F(φ, θ, η)` onto `S³₂(−1)`.
    Negative,
    /// `G(φ, θ, η)` onto `S³₂(1)`.
    Positive,
    /// `H(φ, θ, η)` onto the null cone `S³₂(0)`.
    Null,
}

impl SphereKind {
    pub fn epsilon(self) -> f64 {
        match self {
            SphereKind::Negative => -1.0,
            SphereKind::Positive => 1.0,
            SphereKind::Null => 0.0,
        }
    }
}

pub fn sphere_param(kind: SphereKind, phi: f64, theta: f64, eta: f64) -> Vec4 {
    let (ct, st, ce, se) = (theta.cos(), theta.sin(), eta.cos(), eta.sin());
    match kind {
        SphereKind::Negative => {
            let (c, s) = (phi.cosh(), phi.sinh());
            Vec4([c * ct, c * st, s * ce, s * se])
        }
        SphereKind::Positive => {
            let (c, s) = (phi.cosh(), phi.sinh());
            Vec4([s * ct, s * st, c * ce, c * se])
        }
        SphereKind::Null => {
            let r = phi.exp();
            Vec4([r * ct, r * st, r * ce, r * se])
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("basis is not isothermic: |⟨v1,v1⟩−⟨v2,v2⟩| = {norm_gap:e}, |⟨v1,v2⟩| = {cross_term:e} (relative)")]
    NotIsothermic { norm_gap: f64, cross_term: f64 },
    #[error("vector is not {expected} (⟨v,v⟩ = {value:e})")]
    NotSpacelike { expected: &'static str, value: f64 },
}

/// Projected metric coefficients of a plane against its reference
/// coordinate plane, and the extremes of `cosh² φ(θ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlaneAngleReport {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub coshsq_min: f64,
    pub coshsq_max: f64,
    pub isoclinic: bool,
}

/// Hyperbolic angle between the spacelike plane spanned by `v1, v2` and
/// π₁₂ (negative planes) or π₃₄ (positive planes).
///
/// The basis is rescaled to a (±1)-isothermic one first. With `a, b` the
/// rescaled basis, `E = ∓⟨p(a), p(a)⟩`, `F = ∓⟨p(a), p(b)⟩`,
/// `G = ∓⟨p(b), p(b)⟩` where `p` is pr₁₂ (upper sign) or pr₃₄ (lower sign),
/// and `cosh² φ(θ) = E cos²θ + 2F cosθ sinθ + G sin²θ`.
pub fn plane_hyperbolic_angle(
    v1: &Vec4,
    v2: &Vec4,
    sign: PlaneSign,
    tau_iso: f64,
) -> Result<PlaneAngleReport, AlgebraError> {
    let eps = sign.epsilon();
    for v in [v1, v2] {
        let value = inner(v, v);
        if value * eps <= 0.0 || !value.is_finite() {
            return Err(AlgebraError::NotSpacelike { expected: sign.as_str(), value });
        }
    }
    let (n1, n2) = (inner(v1, v1), inner(v2, v2));
    let scale = n1.abs().max(n2.abs());
    let norm_gap = (n1 - n2).abs() / scale;
    let cross_term = inner(v1, v2).abs() / scale;
    if norm_gap > tau_iso.max(1e-12) || cross_term > tau_iso.max(1e-12) {
        return Err(AlgebraError::NotIsothermic { norm_gap, cross_term });
    }
    let a = v1.scale(1.0 / n1.abs().sqrt());
    let b = v2.scale(1.0 / n2.abs().sqrt());
    let (pa, pb) = match sign {
        PlaneSign::Negative => (a.pr12(), b.pr12()),
        PlaneSign::Positive => (a.pr34(), b.pr34()),
    };
    let e = eps * inner(&pa, &pa);
    let f = eps * inner(&pa, &pb);
    let g = eps * inner(&pb, &pb);
    let mean = 0.5 * (e + g);
    let radius = (0.25 * (e - g) * (e - g) + f * f).sqrt();
    let (coshsq_min, coshsq_max) = (mean - radius, mean + radius);
    Ok(PlaneAngleReport {
        e,
        f,
        g,
        coshsq_min,
        coshsq_max,
        isoclinic: coshsq_max - coshsq_min <= tau_iso && f.abs() <= tau_iso,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const E1: Vec4 = Vec4::new(1.0, 0.0, 0.0, 0.0);
    const E2: Vec4 = Vec4::new(0.0, 1.0, 0.0, 0.0);
    const E3: Vec4 = Vec4::new(0.0, 0.0, 1.0, 0.0);
    const E4: Vec4 = Vec4::new(0.0, 0.0, 0.0, 1.0);

    #[test]
    fn metric_on_basis_and_null_vectors() {
        assert_eq!(inner(&E1, &E1), -1.0);
        assert_eq!(inner(&E3, &E3), 1.0);
        let x = Vec4::new(1.0, 0.0, 1.0, 0.0);
        assert_eq!(inner(&x, &x), 0.0);
        assert_eq!(inner(&Vec4::new(1.0, 2.0, 3.0, 4.0), &Vec4::new(4.0, 3.0, 2.0, 1.0)), 0.0);
    }

    #[test]
    fn l_and_n_examples() {
        let v = Vec4::new(1.0, 2.0, 3.0, 4.0);
        assert_eq!(apply_l(&v), Vec4::new(-2.0, 1.0, -4.0, 3.0));
        assert_eq!(apply_l(&apply_l(&v)), -v);
        assert_eq!(apply_n(&E1), -E3);
        assert_eq!(apply_n(&apply_n(&v)), v);
        let w = Vec4::new(0.5, -1.0, 2.0, 0.25);
        assert_eq!(inner(&apply_l(&v), &apply_l(&w)), inner(&v, &w));
        assert_eq!(inner(&apply_n(&v), &apply_n(&w)), -inner(&v, &w));
    }

    #[test]
    fn cross_examples() {
        assert_eq!(cross(&E2, &E3, &E4), E1);
        let x = Vec4::new(0.3, -1.0, 2.0, 0.5);
        let z = Vec4::new(1.0, 1.0, -1.0, 4.0);
        assert!(cross(&x, &x, &z).max_abs() < 1e-15);
        // Björling parabola triad: 𝔛(c′, A, B) = (0, 1, 0, t)
        for t in [-0.7_f64, 0.0, 0.25, 0.6] {
            let s = (1.0 - t * t).sqrt();
            let c1 = Vec4::new(1.0, 0.0, t, 0.0);
            let a = Vec4::new(t, 0.0, 1.0, 0.0).scale(1.0 / s);
            let b = Vec4::new(0.0, t, 0.0, 1.0).scale(-1.0 / s);
            let d = cross(&c1, &a, &b);
            assert!((d - Vec4::new(0.0, 1.0, 0.0, t)).max_abs() < 1e-14, "{d:?}");
        }
    }

    #[test]
    fn volume_of_basis_permutation() {
        assert_eq!(volume(&E1, &E2, &E3, &E4), 1.0);
        // ω(e2, e3, e4, e1) is a 4-cycle, hence odd
        assert_eq!(volume(&E2, &E3, &E4, &E1), -1.0);
    }

    #[test]
    fn causal_examples() {
        let c = causal(&E1, 1e-9);
        assert_eq!((c.class, c.value), (Causal::Negative, -1.0));
        assert_eq!(causal(&Vec4::new(1.0, 0.0, 1.0, 0.0), 1e-9).class, Causal::Null);
        let c = causal(&Vec4::new(0.0, 0.0, 3.0, 4.0), 1e-9);
        assert_eq!((c.class, c.value), (Causal::Positive, 25.0));
    }

    #[test]
    fn sphere_base_points() {
        assert_eq!(sphere_param(SphereKind::Negative, 0.0, 0.0, 0.0), E1);
        assert_eq!(sphere_param(SphereKind::Positive, 0.0, 0.0, 0.0), E3);
        assert_eq!(sphere_param(SphereKind::Null, 0.0, 0.0, 0.0), Vec4::new(1.0, 0.0, 1.0, 0.0));
    }

    #[test]
    fn sphere_membership_on_grid() {
        for kind in [SphereKind::Negative, SphereKind::Positive, SphereKind::Null] {
            for i in 0..9 {
                for j in 0..7 {
                    for k in 0..7 {
                        let phi = -2.0 + 0.5 * i as f64;
                        let (th, et) = (0.9 * j as f64, 0.9 * k as f64);
                        let p = sphere_param(kind, phi, th, et);
                        let scale = p.norm().powi(2).max(1.0);
                        assert!((inner(&p, &p) - kind.epsilon()).abs() <= 1e-12 * scale);
                    }
                }
            }
        }
    }

    #[test]
    fn projection_identity_on_unit_spheres() {
        // ⟨ŵ, w⟩ = −cosh²φ on S³₂(−1) and ⟨w̃, w⟩ = cosh²φ on S³₂(1)
        let w = sphere_param(SphereKind::Negative, 0.8, 1.1, -0.4);
        assert!((inner(&w.pr12(), &w) + 0.8_f64.cosh().powi(2)).abs() < 1e-12);
        let w = sphere_param(SphereKind::Positive, 0.8, 1.1, -0.4);
        assert!((inner(&w.pr34(), &w) - 0.8_f64.cosh().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn angle_of_reference_plane() {
        let r = plane_hyperbolic_angle(&E1, &E2, PlaneSign::Negative, 1e-9).unwrap();
        assert_eq!((r.e, r.f, r.g), (1.0, 0.0, 1.0));
        assert!(r.isoclinic);
        assert_eq!(r.coshsq_min, 1.0);
        let r = plane_hyperbolic_angle(&E3, &E4, PlaneSign::Positive, 1e-9).unwrap();
        assert!(r.isoclinic && (r.coshsq_max - 1.0).abs() < 1e-15);
    }

    #[test]
    fn angle_of_tilted_plane_is_not_isoclinic() {
        let v2 = Vec4::new(0.0, 1.0_f64.cosh(), 1.0_f64.sinh(), 0.0);
        let r = plane_hyperbolic_angle(&E1, &v2, PlaneSign::Negative, 1e-9).unwrap();
        assert!((r.coshsq_min - 1.0).abs() < 1e-14);
        assert!((r.coshsq_max - 1.0_f64.cosh().powi(2)).abs() < 1e-14);
        assert!(!r.isoclinic);
    }

    #[test]
    fn angle_of_exa_tangent_plane() {
        let (u, v) = (0.3, -0.45);
        let fu = Vec4::new(1.0, 0.0, u, v);
        let fv = Vec4::new(0.0, 1.0, -v, u);
        let r = plane_hyperbolic_angle(&fu, &fv, PlaneSign::Negative, 1e-9).unwrap();
        let expected = 1.0 / (1.0 - u * u - v * v);
        assert!(r.isoclinic);
        assert!((r.coshsq_min - expected).abs() < 1e-13 && (r.coshsq_max - expected).abs() < 1e-13);
        // outside the unit disc the plane is positive and pr₃₄ gives r²/(r²−1)
        let (u, v) = (1.2, 0.5);
        let fu = Vec4::new(1.0, 0.0, u, v);
        let fv = Vec4::new(0.0, 1.0, -v, u);
        let r = plane_hyperbolic_angle(&fu, &fv, PlaneSign::Positive, 1e-9).unwrap();
        let rr = u * u + v * v;
        assert!((r.coshsq_max - rr / (rr - 1.0)).abs() < 1e-13);
    }

    #[test]
    fn angle_preconditions() {
        let err = plane_hyperbolic_angle(&E1, &E3, PlaneSign::Negative, 1e-9).unwrap_err();
        assert!(matches!(err, AlgebraError::NotSpacelike { .. }));
        let err = plane_hyperbolic_angle(&E1, &E2.scale(2.0), PlaneSign::Negative, 1e-9).unwrap_err();
        assert!(matches!(err, AlgebraError::NotIsothermic { .. }));
        let skew = Vec4::new(0.5, 1.0, 0.0, 0.0);
        let err = plane_hyperbolic_angle(&E1, &skew, PlaneSign::Negative, 1e-9).unwrap_err();
        assert!(matches!(err, AlgebraError::NotIsothermic { .. }));
    }

    #[test]
    fn l_preserves_causal_class() {
        for v in [E1, E3, Vec4::new(1.0, 2.0, 0.5, 0.1), Vec4::new(0.2, 0.1, 3.0, -1.0)] {
            assert_eq!(causal(&apply_l(&v), 1e-9).class, causal(&v, 1e-9).class);
        }
    }
}
