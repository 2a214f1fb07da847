//! The complexified metric on C⁴, points of CP³ and the quadric Q² that
//! parametrizes oriented spacelike planes of R⁴₂.
//!
//! A point `[z]` with `⟪z, z⟫ = 0` encodes the plane spanned by `Re z`,
//! `Im z`; the sign of the real number `⟪z, z̄⟫` tells whether that plane is
//! positive, negative or null. The chart `Φ` used throughout is the Segre
//! form of the quadric: writing
//!
//! ```text
//! P = z¹ + iz²,  Q = z¹ − iz²,  R = z³ + iz⁴,  S = z³ − iz⁴
//! ```
//!
//! the quadric equation is `PQ = RS`, and `[P : Q : R : S] = [x : y : xy : 1]`
//! for chart coordinates `(x, y)` on the product of two Riemann spheres.
//! Points at infinity fall out of the same formula in homogeneous form, so
//! no special cases leak to callers.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{inner_generic, Vec4};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Smallest max-modulus component accepted for a projective representative.
pub const RHO_MIN: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CVec4(pub [Complex64; 4]);

impl CVec4 {
    pub const ZERO: CVec4 = CVec4([Complex64::new(0.0, 0.0); 4]);

    pub fn new(z: [Complex64; 4]) -> Self {
        CVec4(z)
    }

    /// `re + i·im`.
    pub fn from_parts(re: &Vec4, im: &Vec4) -> Self {
        CVec4(std::array::from_fn(|k| Complex64::new(re.0[k], im.0[k])))
    }

    pub fn from_real(v: &Vec4) -> Self {
        CVec4::from_parts(v, &Vec4::ZERO)
    }

    pub fn re(&self) -> Vec4 {
        Vec4(self.0.map(|z| z.re))
    }

    pub fn im(&self) -> Vec4 {
        Vec4(self.0.map(|z| z.im))
    }

    pub fn conj(&self) -> CVec4 {
        CVec4(self.0.map(|z| z.conj()))
    }

    pub fn scale(&self, s: Complex64) -> CVec4 {
        CVec4(self.0.map(|z| z * s))
    }

    /// Hermitian squared norm `Σ |zᵢ|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, z| m.max(z.norm()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.is_finite())
    }
}

impl Index<usize> for CVec4 {
    type Output = Complex64;
    fn index(&self, k: usize) -> &Complex64 {
        &self.0[k]
    }
}

impl Add for CVec4 {
    type Output = CVec4;
    fn add(self, o: CVec4) -> CVec4 {
        CVec4(std::array::from_fn(|k| self.0[k] + o.0[k]))
    }
}

impl Sub for CVec4 {
    type Output = CVec4;
    fn sub(self, o: CVec4) -> CVec4 {
        CVec4(std::array::from_fn(|k| self.0[k] - o.0[k]))
    }
}

impl Neg for CVec4 {
    type Output = CVec4;
    fn neg(self) -> CVec4 {
        CVec4(self.0.map(|z| -z))
    }
}

impl Mul<CVec4> for Complex64 {
    type Output = CVec4;
    fn mul(self, v: CVec4) -> CVec4 {
        v.scale(self)
    }
}

/// Complex-bilinear (not Hermitian) extension of the metric:
/// `⟪x₁ + iy₁, x₂ + iy₂⟫ = (⟨x₁,x₂⟩ − ⟨y₁,y₂⟩) + i(⟨x₁,y₂⟩ + ⟨y₁,x₂⟩)`.
pub fn cbilinear(z: &CVec4, w: &CVec4) -> Complex64 {
    inner_generic(&z.0, &w.0)
}

/// A point of the extended complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtComplex {
    Finite(Complex64),
    Infinity,
}

impl ExtComplex {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtComplex::Infinity)
    }

    pub fn finite(self) -> Option<Complex64> {
        match self {
            ExtComplex::Finite(z) => Some(z),
            ExtComplex::Infinity => None,
        }
    }

    /// `1/z̄` on the Riemann sphere (`0 ↦ ∞`, `∞ ↦ 0`).
    pub fn inv_conj(self) -> Self {
        Proj1::from(self).inv_conj().into()
    }

    /// Whether two points are within `tol` in the chordal sense.
    pub fn approx_eq(&self, other: &ExtComplex, tol: f64) -> bool {
        match (self, other) {
            (ExtComplex::Infinity, ExtComplex::Infinity) => true,
            (ExtComplex::Finite(a), ExtComplex::Finite(b)) => (a - b).norm() <= tol * (1.0 + a.norm()),
            (ExtComplex::Finite(a), ExtComplex::Infinity) | (ExtComplex::Infinity, ExtComplex::Finite(a)) => {
                a.norm() > 1.0 / tol
            }
        }
    }
}

impl From<Complex64> for ExtComplex {
    fn from(z: Complex64) -> Self {
        ExtComplex::Finite(z)
    }
}

impl fmt::Display for ExtComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtComplex::Finite(z) => write!(f, "{z}"),
            ExtComplex::Infinity => f.write_str("∞"),
        }
    }
}

/// Homogeneous coordinates `[num : den]` on the Riemann sphere.
#[derive(Debug, Clone, Copy)]
struct Proj1 {
    num: Complex64,
    den: Complex64,
}

impl Proj1 {
    fn inv_conj(self) -> Self {
        Proj1 { num: self.den.conj(), den: self.num.conj() }
    }
}

impl From<ExtComplex> for Proj1 {
    fn from(x: ExtComplex) -> Self {
        match x {
            ExtComplex::Finite(z) => Proj1 { num: z, den: Complex64::new(1.0, 0.0) },
            ExtComplex::Infinity => Proj1 { num: Complex64::new(1.0, 0.0), den: Complex64::new(0.0, 0.0) },
        }
    }
}

impl From<Proj1> for ExtComplex {
    fn from(p: Proj1) -> Self {
        if p.den.norm() <= 1e-14 * p.num.norm() {
            ExtComplex::Infinity
        } else {
            ExtComplex::Finite(p.num / p.den)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadricError {
    #[error("representative is (numerically) zero: max modulus {0:e}")]
    ZeroRepresentative(f64),
    #[error("point is off the quadric: |⟪z,z⟫|/‖z‖² = {0:e}")]
    OffQuadric(f64),
    #[error("wrong quadric class: expected {expected}, found {found}")]
    WrongClass { expected: QuadricKind, found: QuadricKind },
}

/// `[z] ∈ CP³`, held by a nonzero representative.
#[derive(Debug, Clone, Copy)]
pub struct ProjPoint {
    rep: CVec4,
}

impl ProjPoint {
    pub fn new(rep: CVec4) -> Result<Self, QuadricError> {
        let m = rep.max_abs();
        if !(m >= RHO_MIN) || !rep.is_finite() {
            return Err(QuadricError::ZeroRepresentative(m));
        }
        Ok(ProjPoint { rep })
    }

    pub fn representative(&self) -> &CVec4 {
        &self.rep
    }

    /// Representative scaled so that its first component of maximal modulus is 1.
    pub fn normalized(&self) -> CVec4 {
        let k = max_index(&self.rep);
        self.rep.scale(self.rep[k].inv())
    }

    /// Projective equality within `tau` on normalized representatives.
    pub fn approx_eq(&self, other: &ProjPoint, tau: f64) -> bool {
        let k = max_index(&self.rep);
        if other.rep[k].norm() <= tau * other.rep.max_abs() {
            return false;
        }
        let a = self.rep.scale(self.rep[k].inv());
        let b = other.rep.scale(other.rep[k].inv());
        (a - b).max_abs() <= tau
    }

    fn segre(&self) -> [Complex64; 4] {
        let z = &self.rep.0;
        [z[0] + I * z[1], z[0] - I * z[1], z[2] + I * z[3], z[2] - I * z[3]]
    }
}

fn max_index(z: &CVec4) -> usize {
    let mut k = 0;
    for j in 1..4 {
        if z[j].norm() > z[k].norm() {
            k = j;
        }
    }
    k
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum QuadricKind {
    Pos,
    Neg,
    Null,
    OffQuadric,
}

impl fmt::Display for QuadricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuadricKind::Pos => "Q²_pos",
            QuadricKind::Neg => "Q²_neg",
            QuadricKind::Null => "Q²_null",
            QuadricKind::OffQuadric => "off-quadric",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadricClass {
    pub kind: QuadricKind,
    /// `⟪z, z⟫` for the held representative.
    pub zz: Complex64,
    /// `⟪z, z̄⟫`, real for every z.
    pub zzbar: f64,
}

/// Classify `[z]` against Q² and its three strata. Both tests are relative
/// to `‖z‖²`, so the result is invariant under rescaling the representative.
pub fn classify(p: &ProjPoint, tau_q: f64) -> QuadricClass {
    let z = &p.rep;
    let zz = cbilinear(z, z);
    let zzbar = cbilinear(z, &z.conj()).re;
    let band = tau_q * z.norm_sqr();
    let kind = if zz.norm() > band {
        QuadricKind::OffQuadric
    } else if zzbar > band {
        QuadricKind::Pos
    } else if zzbar < -band {
        QuadricKind::Neg
    } else {
        QuadricKind::Null
    };
    QuadricClass { kind, zz, zzbar }
}

fn require_on_quadric(p: &ProjPoint, tau_q: f64) -> Result<QuadricClass, QuadricError> {
    let c = classify(p, tau_q);
    if c.kind == QuadricKind::OffQuadric {
        return Err(QuadricError::OffQuadric(c.zz.norm() / p.rep.norm_sqr()));
    }
    Ok(c)
}

/// Chart coordinates as points of P¹, read off the Segre coordinates.
/// `x = [P : S] = [R : Q]` and `y = [Q : S] = [R : P]`; the better
/// conditioned pair is used.
fn chart_proj(p: &ProjPoint) -> (Proj1, Proj1) {
    let [pp, q, r, s] = p.segre();
    let pick = |a: Proj1, b: Proj1| {
        if a.num.norm().max(a.den.norm()) >= b.num.norm().max(b.den.norm()) {
            a
        } else {
            b
        }
    };
    let x = pick(Proj1 { num: pp, den: s }, Proj1 { num: r, den: q });
    let y = pick(Proj1 { num: q, den: s }, Proj1 { num: r, den: pp });
    (x, y)
}

fn from_chart_proj(x: Proj1, y: Proj1, mu: Complex64) -> CVec4 {
    let p = x.num * y.den;
    let q = x.den * y.num;
    let r = x.num * y.num;
    let s = x.den * y.den;
    CVec4([mu * (p + q), -I * mu * (p - q), mu * (r + s), -I * mu * (r - s)])
}

/// `Φ([z]) = ((z¹ + iz²)/(z³ − iz⁴), (z¹ − iz²)/(z³ − iz⁴))`, extended to the
/// points where `z³ − iz⁴ = 0`.
pub fn phi_chart(p: &ProjPoint, tau_q: f64) -> Result<(ExtComplex, ExtComplex), QuadricError> {
    require_on_quadric(p, tau_q)?;
    let (x, y) = chart_proj(p);
    Ok((x.into(), y.into()))
}

/// The representative `μ(x + y, −i(x − y), 1 + xy, i(1 − xy))` of
/// `[W(x, y)]`. When either coordinate is infinite the limit point is
/// returned (`W(x, ∞) ∼ [1, i, x, −ix]`, `W(∞, y) ∼ [1, −i, y, −iy]`,
/// `W(∞, ∞) ∼ [0, 0, 1, −i]`), scaled by μ.
pub fn w_point(x: ExtComplex, y: ExtComplex, mu: Complex64) -> Result<ProjPoint, QuadricError> {
    ProjPoint::new(from_chart_proj(x.into(), y.into(), mu))
}

/// `W(x, y)` as a plain vector for finite chart values.
pub fn w_vector(x: Complex64, y: Complex64) -> CVec4 {
    let one = Complex64::new(1.0, 0.0);
    CVec4([x + y, -I * (x - y), one + x * y, I * (one - x * y)])
}

/// Class predicted by the chart: the sign of `(1 − |x|²)(1 − |y|²)`,
/// which is `⟪z, z̄⟫ / (2|μ|²)` for `z = μW(x, y)`.
pub fn sign_from_chart(x: ExtComplex, y: ExtComplex, tau: f64) -> QuadricKind {
    let factor = |c: ExtComplex| -> f64 {
        match c {
            ExtComplex::Infinity => -1.0,
            ExtComplex::Finite(z) => {
                let s = 1.0 - z.norm_sqr();
                if s.abs() <= tau {
                    0.0
                } else {
                    s.signum()
                }
            }
        }
    };
    let s = factor(x) * factor(y);
    if s > 0.0 {
        QuadricKind::Pos
    } else if s < 0.0 {
        QuadricKind::Neg
    } else {
        QuadricKind::Null
    }
}

/// Normal operator `J̃`: `[W(x, y)] ↦ [W(x, 1/ȳ)]`, sending a plane's point
/// to the point of its orthogonal complement.
pub fn normal_j(p: &ProjPoint, tau_q: f64) -> Result<ProjPoint, QuadricError> {
    require_on_quadric(p, tau_q)?;
    let (x, y) = chart_proj(p);
    // rescale so neither pair is near over/underflow
    let nx = x.num.norm().max(x.den.norm());
    let ny = y.num.norm().max(y.den.norm());
    let x = Proj1 { num: x.num / nx, den: x.den / nx };
    let y = Proj1 { num: y.num / ny, den: y.den / ny };
    ProjPoint::new(from_chart_proj(x, y.inv_conj(), Complex64::new(1.0, 0.0)))
}

/// Whether `{Re zneg, Im zneg, Re zpos, Im zpos}` is an orthogonal basis,
/// tested as `⟪zneg, zpos⟫ = ⟪zneg, z̄pos⟫ = 0` (relative to the norms).
pub fn orthobasis_check(zneg: &CVec4, zpos: &CVec4, tau: f64) -> Result<bool, QuadricError> {
    let pn = ProjPoint::new(*zneg)?;
    let pp = ProjPoint::new(*zpos)?;
    let cn = classify(&pn, tau);
    if cn.kind != QuadricKind::Neg {
        return Err(QuadricError::WrongClass { expected: QuadricKind::Neg, found: cn.kind });
    }
    let cp = classify(&pp, tau);
    if cp.kind != QuadricKind::Pos {
        return Err(QuadricError::WrongClass { expected: QuadricKind::Pos, found: cp.kind });
    }
    let scale = (zneg.norm_sqr() * zpos.norm_sqr()).sqrt();
    let a = cbilinear(zneg, zpos).norm() / scale;
    let b = cbilinear(zneg, &zpos.conj()).norm() / scale;
    Ok(a <= tau && b <= tau)
}

/// Largest `|⟨p, q⟩|` between a real part of `z` and a real part of `w`,
/// relative to their Euclidean norms. Direct form of [`orthobasis_check`].
pub fn real_parts_cross_inner(z: &CVec4, w: &CVec4) -> f64 {
    let (a, b) = (z.re(), z.im());
    let (c, d) = (w.re(), w.im());
    let mut worst = 0.0_f64;
    for p in [&a, &b] {
        for q in [&c, &d] {
            let s = (p.norm() * q.norm()).max(f64::MIN_POSITIVE);
            worst = worst.max(crate::algebra::inner(p, q).abs() / s);
        }
    }
    worst
}
