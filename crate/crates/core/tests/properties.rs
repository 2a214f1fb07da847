use std::sync::LazyLock;

use isoclinic::algebra::{
    apply_l, apply_n, causal, cross, cross_generic, inner, sphere_param, volume, PlaneSign, SphereKind, Vec4,
};
use isoclinic::analytic::curve::{eval_complex_all, parse_components};
use isoclinic::analytic::{parse, CurveR4, Expr, QuadConfig, Triad};
use isoclinic::diagnostics::{
    frame_orthonormality_residual, hyperbolic_angle_at, isoclinic_residual, jet, jet_derivatives, normal_angle_at,
    normal_frame, DiagConfig,
};
use isoclinic::gallery;
use isoclinic::quadric::{classify, normal_j, phi_chart, w_point, CVec4, ExtComplex, ProjPoint};
use isoclinic::solvers::{solve_cauchy_isoclinic, solve_schwarz_direct, Domain, Surface};
use num_complex::Complex64;
use proptest::prelude::*;

fn vec4() -> impl Strategy<Value = Vec4> {
    prop::array::uniform4(-3.0..3.0f64).prop_map(Vec4)
}

fn complex(r: f64) -> impl Strategy<Value = Complex64> {
    (-r..r, -r..r).prop_map(|(a, b)| Complex64::new(a, b))
}

/// Real-analytic expressions in `t` with no poles on the real line.
fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        Just(Expr::var()),
        (-3.0..3.0f64).prop_map(|c| Expr::constant((c * 8.0).round() / 8.0)),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a - b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            inner.clone().prop_map(|a| -a),
            (inner.clone(), 0..4i32).prop_map(|(a, n)| a.pow(n)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a / (Expr::constant(2.0) + b.pow(2))),
            inner.clone().prop_map(Expr::sin),
            inner.clone().prop_map(Expr::cos),
            (inner.clone().prop_map(|a| (a / Expr::constant(4.0)).exp())),
            (inner.clone().prop_map(|a| (a / Expr::constant(4.0)).sinh())),
        ]
    })
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn l_is_an_isometry_and_n_reverses_the_metric(v in vec4(), w in vec4()) {
        let ip = inner(&v, &w);
        prop_assert!((inner(&apply_l(&v), &apply_l(&w)) - ip).abs() <= 1e-12);
        prop_assert!((inner(&apply_n(&v), &apply_n(&w)) + ip).abs() <= 1e-12);
        prop_assert!((apply_l(&apply_n(&v)) + apply_n(&apply_l(&v))).max_abs() <= 1e-15);
    }

    #[test]
    fn cross_is_dual_to_the_volume_form(x in vec4(), y in vec4(), z in vec4(), v in vec4()) {
        let k = cross(&x, &y, &z);
        let omega = volume(&x, &y, &z, &v);
        prop_assert!(close(omega, inner(&k, &v), 1e-9));
        for a in [&x, &y, &z] {
            prop_assert!(inner(&k, a).abs() <= 1e-11 * (1.0 + k.norm() * a.norm()));
        }
        let flat = Vec4::new(-k.0[0], -k.0[1], k.0[2], k.0[3]);
        let sq: f64 = k.0.iter().map(|d| d * d).sum();
        prop_assert!(close(volume(&x, &y, &z, &flat), sq, 1e-9));
        prop_assert!(close(volume(&x, &y, &z, &k), inner(&k, &k), 1e-9));
        // alternating and linear in the first slot
        prop_assert!((cross(&y, &x, &z) + k).max_abs() <= 1e-12 * (1.0 + k.max_abs()));
        let lin = cross(&(x + v.scale(2.0)), &y, &z) - k - cross(&v, &y, &z).scale(2.0);
        prop_assert!(lin.max_abs() <= 1e-11 * (1.0 + k.max_abs()));
    }

    #[test]
    fn l_preserves_the_causal_class(v in vec4()) {
        prop_assert_eq!(causal(&apply_l(&v), 1e-9).class, causal(&v, 1e-9).class);
    }

    #[test]
    fn sphere_parametrizations_stay_on_their_sphere(phi in -2.0..2.0f64, theta in -4.0..4.0f64, eta in -4.0..4.0f64) {
        prop_assert!((inner(&sphere_param(SphereKind::Negative, phi, theta, eta), &sphere_param(SphereKind::Negative, phi, theta, eta)) + 1.0).abs() <= 1e-12 * phi.cosh().powi(2));
        let p = sphere_param(SphereKind::Positive, phi, theta, eta);
        prop_assert!((inner(&p, &p) - 1.0).abs() <= 1e-12 * phi.cosh().powi(2));
    }

    #[test]
    fn quadric_maps_are_scale_invariant(x in complex(2.5), y in complex(2.5), lam in complex(3.0)) {
        prop_assume!((x.norm() - 1.0).abs() > 0.05 && (y.norm() - 1.0).abs() > 0.05 && lam.norm() > 0.05);
        let p = w_point(ExtComplex::Finite(x), ExtComplex::Finite(y), Complex64::new(1.0, 0.0)).unwrap();
        let q = ProjPoint::new(p.representative().scale(lam)).unwrap();
        prop_assert_eq!(classify(&p, 1e-9).kind, classify(&q, 1e-9).kind);
        let (a, b) = phi_chart(&p, 1e-9).unwrap();
        let (c, d) = phi_chart(&q, 1e-9).unwrap();
        prop_assert!(a.approx_eq(&c, 1e-10) && b.approx_eq(&d, 1e-10));
        prop_assert!(normal_j(&p, 1e-9).unwrap().approx_eq(&normal_j(&q, 1e-9).unwrap(), 1e-9));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn printing_then_parsing_is_a_fixed_point(e in expr()) {
        let printed = e.to_string();
        let reparsed = parse(&printed).unwrap();
        prop_assert_eq!(reparsed.to_string(), printed.clone());
        let t = 0.37;
        let (a, b) = (e.eval_real(t).unwrap(), reparsed.eval_real(t).unwrap());
        prop_assert!(close(a, b, 1e-12), "{} vs {} for {}", a, b, printed);
    }

    #[test]
    fn derivative_matches_central_differences(e in expr(), t in -1.5..1.5f64) {
        let h = 1e-5;
        let d = e.differentiate().eval_real(t).unwrap();
        let fd = (e.eval_real(t + h).unwrap() - e.eval_real(t - h).unwrap()) / (2.0 * h);
        let scale = e.eval_real(t).unwrap().abs().max(d.abs()).max(1.0);
        prop_assert!((d - fd).abs() <= 1e-5 * scale, "{}: {} vs {}", e, d, fd);
    }

    #[test]
    fn complex_evaluation_extends_real_evaluation(e in expr(), t in -2.0..2.0f64) {
        let r = e.eval_real(t).unwrap();
        let z = e.eval_complex(Complex64::new(t, 0.0)).unwrap();
        prop_assert!((z.re - r).abs() <= 1e-14 * (1.0 + r.abs()) && z.im.abs() <= 1e-14 * (1.0 + r.abs()));
    }

    #[test]
    fn extensions_satisfy_cauchy_riemann(e in expr(), w in complex(0.8)) {
        let h = 1e-5;
        let f = |z: Complex64| e.eval_complex(z).unwrap();
        let fu = (f(w + h) - f(w - h)) / (2.0 * h);
        let i = Complex64::new(0.0, 1.0);
        let fv = (f(w + i * h) - f(w - i * h)) / (2.0 * h);
        let dbar = (fu + i * fv) / 2.0;
        let scale = fu.norm().max(f(w).norm()).max(1.0);
        prop_assert!(dbar.norm() <= 1e-6 * scale, "{}: {}", e, dbar);
    }
}

fn random_curve(a: f64, b: f64, k: f64) -> CurveR4 {
    // ⟨c′, c′⟩ ≤ −1 + 4a²t² + b² < 0 on (−0.5, 0.5)
    let src = [
        "t".to_string(),
        format!("{k}*t^3"),
        format!("{a}*t^2"),
        format!("{b}*sin(t)"),
    ];
    CurveR4::parse(&src, 0.5).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cauchy_surfaces_extend_their_curve(a in -0.4..0.4f64, b in -0.4..0.4f64, k in -0.3..0.3f64) {
        let c = random_curve(a, b, k);
        let q = QuadConfig::default();
        let domain = Domain::Disc { radius: 0.5 };
        let s = solve_cauchy_isoclinic(&c, PlaneSign::Negative, &q, domain).unwrap();
        for t in c.samples() {
            let d = (s.eval(Complex64::new(t, 0.0)).unwrap() - c.point(t).unwrap()).max_abs();
            prop_assert!(d <= 10.0 * q.tolerance, "t = {}: {}", t, d);
        }
        // the Schwarz problem with d′ = L c′ is the same surface
        let d1 = c.derivative_exprs(1);
        let lc = [-d1[1].clone(), d1[0].clone(), -d1[3].clone(), d1[2].clone()];
        let sd = solve_schwarz_direct(&c, &lc, PlaneSign::Negative, &q, domain).unwrap();
        for w in [Complex64::new(0.2, 0.3), Complex64::new(-0.4, -0.1), Complex64::new(0.0, 0.45)] {
            prop_assert!((s.eval(w).unwrap() - sd.eval(w).unwrap()).max_abs() <= 1e-12);
            let j = jet_derivatives(&s, w).unwrap();
            prop_assert!(isoclinic_residual(&j) <= 1e-9);
            prop_assert_eq!(j.fuu + j.fvv, Vec4::ZERO);
        }
    }
}

struct BjorlingCase {
    triad: Triad,
    surface: Surface,
}

static BJORLING: LazyLock<Vec<BjorlingCase>> = LazyLock::new(|| {
    ["bjorling-parabola", "torus-n2", "torus-n3"]
        .iter()
        .map(|name| {
            let cfg = gallery::config(name).unwrap();
            let solved = cfg.solve().unwrap();
            let a = parse_components(cfg.a.as_ref().unwrap()).unwrap();
            let b = parse_components(cfg.b.as_ref().unwrap()).unwrap();
            BjorlingCase { triad: Triad::new(solved.curve.unwrap(), a, b).unwrap(), surface: solved.surface }
        })
        .collect()
});

static EXA: LazyLock<Surface> = LazyLock::new(|| gallery::config("example-exa").unwrap().solve().unwrap().surface);

static GALLERY: LazyLock<Vec<Surface>> =
    LazyLock::new(|| gallery::names().map(|n| gallery::config(n).unwrap().solve().unwrap().surface).collect());

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bjorling_normal_bundle_and_cross_identity(case in 0..3usize, s in -1.0..1.0f64) {
        let BjorlingCase { triad, surface } = &BJORLING[case];
        let t = 0.95 * s * triad.curve.radius.min(surface.domain.extent());
        let w = Complex64::new(t, 0.0);
        let (a, b) = triad.frame(t).unwrap();
        let (fu, fv) = surface.tangents(w).unwrap();
        for x in [&fu, &fv] {
            prop_assert!(inner(x, &a).abs() <= 1e-7 && inner(x, &b).abs() <= 1e-7);
        }
        let g = surface.g(w).unwrap();
        let ac = eval_complex_all(&triad.a, w).unwrap();
        let bc = eval_complex_all(&triad.b, w).unwrap();
        let k = CVec4(cross_generic(&g.0, &ac.0, &bc.0));
        let ig = g.scale(Complex64::new(0.0, 1.0));
        let diff = CVec4([k.0[0] - ig.0[0], k.0[1] - ig.0[1], k.0[2] - ig.0[2], k.0[3] - ig.0[3]]);
        prop_assert!(diff.max_abs() <= 1e-8, "t = {}: {:?}", t, diff);
    }

    #[test]
    fn normal_frames_are_orthonormal(case in 0..9usize, p in (0.0..1.0f64, 0.0..1.0f64)) {
        let s = &GALLERY[case];
        let w = match s.domain {
            Domain::Disc { radius } => Complex64::from_polar(0.95 * radius * p.0.sqrt(), std::f64::consts::TAU * p.1),
            Domain::Rect { u, v } => Complex64::new(u[0] + (u[1] - u[0]) * p.0, v[0] + (v[1] - v[0]) * p.1),
        };
        let cfg = DiagConfig::default();
        let j = jet_derivatives(s, w).unwrap();
        prop_assume!(inner(&j.fu, &j.fu).abs() > 1e-3 * j.fu.norm().powi(2));
        let nf = normal_frame(s, w, &cfg).unwrap();
        prop_assert!(frame_orthonormality_residual(&j, &nf) <= 1e-8);
    }

    #[test]
    fn tangent_and_normal_angles_agree_on_exa(w in complex(0.6)) {
        let cfg = DiagConfig::default();
        let j = jet(&EXA, w).unwrap();
        let t = hyperbolic_angle_at(&j, &cfg).unwrap();
        let n = normal_angle_at(&EXA, &j, &cfg).unwrap();
        prop_assert!((t.coshsq_min - n.coshsq_min).abs() <= 1e-8 && (t.coshsq_max - n.coshsq_max).abs() <= 1e-8);
    }
}
