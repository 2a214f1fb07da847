//! Declarative problem description, read from JSON.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{PlaneSign, Vec4};
use crate::analytic::curve::{parse_components, Components};
use crate::analytic::{parse, CurveR4, Expr, QuadConfig, Triad};
use crate::diagnostics::DiagConfig;
use crate::error::Error;
use crate::export::Projection;
use crate::grid::GridSpec;
use crate::solvers::{self, Domain, Surface};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Problem {
    Cauchy,
    Bjorling,
    SchwarzDirect,
    Weierstrass,
    GraphPair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSize {
    pub nu: usize,
    pub nv: usize,
}

impl Default for GridSize {
    fn default() -> Self {
        GridSize { nu: 41, nv: 41 }
    }
}

impl std::str::FromStr for GridSize {
    type Err = String;

    /// `NUxNV`, e.g. `41x41`.
    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once(['x', 'X']).ok_or_else(|| format!("grid `{s}` is not of the form NUxNV"))?;
        let n = |p: &str| p.trim().parse::<usize>().map_err(|_| format!("grid `{s}` is not of the form NUxNV"));
        Ok(GridSize { nu: n(a)?, nv: n(b)? })
    }
}

/// Pass thresholds for the invariant report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub conformality: f64,
    pub minimality: f64,
    pub isoclinic: f64,
    pub curvature_agreement: f64,
    pub geodesic: f64,
    pub asymptotic: f64,
    /// Relative threshold for the good-curve frame stages.
    pub frame: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            conformality: 1e-9,
            minimality: 1e-5,
            isoclinic: 1e-9,
            curvature_agreement: 1e-4,
            geodesic: 1e-6,
            asymptotic: 1e-6,
            frame: solvers::frenet::TAU_FRAME,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    /// `F` with `f = Re F`.
    pub primitive: [String; 4],
    #[serde(default = "default_expected_tolerance")]
    pub tolerance: f64,
}

fn default_expected_tolerance() -> f64 {
    1e-8
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Checks {
    /// The defining curve is a geodesic of the surface.
    pub geodesic: bool,
    /// The defining curve is an asymptotic line of the surface.
    pub asymptotic: bool,
    /// Require a full Frenet frame along the defining curve.
    pub good_curve: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Obj,
    Both,
}

impl Format {
    pub fn csv(self) -> bool {
        matches!(self, Format::Csv | Format::Both)
    }

    pub fn obj(self) -> bool {
        matches!(self, Format::Obj | Format::Both)
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Output {
    pub dir: Option<String>,
    pub format: Format,
    pub projection: Projection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    #[serde(default)]
    pub name: Option<String>,
    pub problem: Problem,
    pub sign: PlaneSign,
    /// `c(t)`, for cauchy, bjorling and schwarz-direct.
    #[serde(default)]
    pub curve: Option<[String; 4]>,
    /// Radius `r` of the interval `(−r, r)` carrying the curve.
    #[serde(default)]
    pub interval: Option<f64>,
    #[serde(default)]
    pub a: Option<[String; 4]>,
    #[serde(default)]
    pub b: Option<[String; 4]>,
    #[serde(default)]
    pub dprime: Option<[String; 4]>,
    #[serde(default)]
    pub mu: Option<String>,
    #[serde(default)]
    pub x: Option<String>,
    #[serde(default)]
    pub y: Option<String>,
    #[serde(default)]
    pub base: Option<[f64; 4]>,
    #[serde(default)]
    pub psi: Option<String>,
    #[serde(default)]
    pub phi: Option<String>,
    pub domain: Domain,
    #[serde(default)]
    pub grid: GridSize,
    #[serde(default)]
    pub quadrature: QuadConfig,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub diagnostics: DiagConfig,
    #[serde(default)]
    pub expected: Option<Expected>,
    #[serde(default)]
    pub checks: Checks,
    #[serde(default)]
    pub output: Output,
}

/// The constructed surface and the curve it was built from, if any.
#[derive(Debug, Clone)]
pub struct Solved {
    pub surface: Surface,
    pub curve: Option<CurveR4>,
}

fn require<'a, T>(v: &'a Option<T>, field: &str, problem: Problem) -> Result<&'a T, Error> {
    v.as_ref().ok_or_else(|| Error::config(format!("problem {problem:?} needs field `{field}`")))
}

fn expr(src: &str, field: &str) -> Result<Expr, Error> {
    parse(src).map_err(|e| Error::from(e).context(format_args!("field `{field}`")))
}

fn components(src: &[String; 4], field: &str) -> Result<Components, Error> {
    parse_components(src).map_err(|e| Error::from(e).context(format_args!("field `{field}`")))
}

impl ProblemConfig {
    pub fn from_json(text: &str) -> Result<Self, Error> {
        let cfg: ProblemConfig = serde_json::from_str(text).map_err(|e| Error::config(format!("invalid config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::from(e).context(path.display()))?;
        ProblemConfig::from_json(&text)
    }

    pub fn display_name(&self) -> String {
        self.name.clone().unwrap_or_else(|| "surface".to_string())
    }

    /// Shape checks that need no solving.
    pub fn validate(&self) -> Result<(), Error> {
        self.domain.validate().map_err(Error::config)?;
        self.grid_spec()?;
        self.quadrature.validate()?;
        if let Some(r) = self.interval {
            if !(r > 0.0 && r.is_finite()) {
                return Err(Error::config(format!("interval radius must be positive, got {r}")));
            }
        }
        let p = self.problem;
        match p {
            Problem::Cauchy => {
                require(&self.curve, "curve", p)?;
            }
            Problem::Bjorling => {
                require(&self.curve, "curve", p)?;
                require(&self.a, "a", p)?;
                require(&self.b, "b", p)?;
            }
            Problem::SchwarzDirect => {
                require(&self.curve, "curve", p)?;
                require(&self.dprime, "dprime", p)?;
            }
            Problem::Weierstrass => {
                require(&self.mu, "mu", p)?;
                require(&self.x, "x", p)?;
                require(&self.y, "y", p)?;
            }
            Problem::GraphPair => {
                require(&self.psi, "psi", p)?;
                require(&self.phi, "phi", p)?;
            }
        }
        if (self.checks.geodesic || self.checks.asymptotic || self.checks.good_curve) && self.curve.is_none() {
            return Err(Error::config("curve checks need a `curve`"));
        }
        if let Some(e) = &self.expected {
            components(&e.primitive, "expected.primitive")?;
        }
        Ok(())
    }

    pub fn grid_spec(&self) -> Result<GridSpec, Error> {
        GridSpec::for_domain(&self.domain, self.grid.nu, self.grid.nv).map_err(Error::config)
    }

    /// Interval radius, defaulting to the reach of the domain along the real axis.
    pub fn interval_radius(&self) -> f64 {
        self.interval.unwrap_or(match self.domain {
            Domain::Disc { radius } => radius,
            Domain::Rect { u, .. } => u[0].abs().max(u[1].abs()),
        })
    }

    pub fn build_curve(&self) -> Result<Option<CurveR4>, Error> {
        match &self.curve {
            None => Ok(None),
            Some(src) => {
                let comps = components(src, "curve")?;
                let c = CurveR4::new(comps, self.interval_radius())?;
                Ok(Some(match &self.name {
                    Some(n) => c.with_label(n.clone()),
                    None => c,
                }))
            }
        }
    }

    pub fn expected_primitive(&self) -> Result<Option<Components>, Error> {
        self.expected.as_ref().map(|e| components(&e.primitive, "expected.primitive")).transpose()
    }

    /// Run the configured solver.
    pub fn solve(&self) -> Result<Solved, Error> {
        self.validate()?;
        let curve = self.build_curve()?;
        if self.checks.good_curve {
            let c = curve.as_ref().expect("validated");
            for t in c.samples() {
                solvers::frenet_good_frame(c, t, self.tolerances.frame)?;
            }
        }
        let q = &self.quadrature;
        let p = self.problem;
        let surface = match p {
            Problem::Cauchy => solvers::solve_cauchy_isoclinic(curve.as_ref().expect("validated"), self.sign, q, self.domain)?,
            Problem::Bjorling => {
                let c = curve.clone().expect("validated");
                let a = components(require(&self.a, "a", p)?, "a")?;
                let b = components(require(&self.b, "b", p)?, "b")?;
                let tr = Triad::new(c, a, b)?;
                solvers::solve_bjorling(&tr, self.sign, q, self.domain)?
            }
            Problem::SchwarzDirect => {
                let d = components(require(&self.dprime, "dprime", p)?, "dprime")?;
                solvers::solve_schwarz_direct(curve.as_ref().expect("validated"), &d, self.sign, q, self.domain)?
            }
            Problem::Weierstrass => {
                let mu = expr(require(&self.mu, "mu", p)?, "mu")?;
                let x = expr(require(&self.x, "x", p)?, "x")?;
                let y = expr(require(&self.y, "y", p)?, "y")?;
                let base = Vec4(self.base.unwrap_or([0.0; 4]));
                solvers::weierstrass_surface(&mu, &x, &y, base, self.sign, q, self.domain)?
            }
            Problem::GraphPair => {
                let psi = expr(require(&self.psi, "psi", p)?, "psi")?;
                let phi = expr(require(&self.phi, "phi", p)?, "phi")?;
                solvers::graph_pair(&psi, &phi, self.sign, self.domain)?
            }
        };
        Ok(Solved { surface, curve })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXA: &str = r#"{
        "name": "t",
        "problem": "cauchy",
        "sign": "negative",
        "curve": ["t", "0", "t^2/2", "0"],
        "domain": {"disc": {"radius": 0.9}}
    }"#;

    #[test]
    fn minimal_config() {
        let cfg = ProblemConfig::from_json(EXA).unwrap();
        assert_eq!(cfg.grid, GridSize { nu: 41, nv: 41 });
        assert_eq!(cfg.interval_radius(), 0.9);
        let s = cfg.solve().unwrap();
        assert!(s.curve.is_some());
    }

    #[test]
    fn errors_are_config_errors() {
        let bad = EXA.replace("t^2/2", "t^2/");
        let e = ProblemConfig::from_json(&bad).unwrap().solve().unwrap_err();
        assert_eq!((e.class, e.exit_code()), ("SyntaxError", 1));
        assert!(e.message.contains("byte 4"), "{}", e.message);
        let e = ProblemConfig::from_json(&EXA.replace("\"cauchy\"", "\"bjorling\"")).unwrap_err();
        assert!(e.message.contains("`a`"));
        let e = ProblemConfig::from_json(&EXA.replace("\"name\"", "\"nmae\"")).unwrap_err();
        assert_eq!(e.exit_code(), 1);
        let e = ProblemConfig::from_json(&EXA.replace("0.9}}", "-1}}")).unwrap_err();
        assert_eq!(e.exit_code(), 1);
    }

    #[test]
    fn grid_size_parsing() {
        assert_eq!("41x21".parse::<GridSize>().unwrap(), GridSize { nu: 41, nv: 21 });
        assert!("41".parse::<GridSize>().is_err());
        assert!("ax3".parse::<GridSize>().is_err());
    }
}
