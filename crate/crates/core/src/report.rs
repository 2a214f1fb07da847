//! Solve, sample the grid, check invariants and write artifacts.

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Serialize;

use crate::analytic::curve::eval_complex_all;
use crate::config::{Format, GridSize, ProblemConfig, Solved};
use crate::diagnostics::{asymptotic_check, geodesic_check, sample_grid, singular_scan, PointReport, SingularCell};
use crate::error::{Error, ErrorKind};
use crate::export::{write_csv, write_obj, Projection};
use crate::grid::GridSpec;

/// Command-line overrides of a config.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub grid: Option<GridSize>,
    pub tol: Option<f64>,
    pub format: Option<Format>,
    pub projection: Option<Projection>,
    pub out_dir: Option<PathBuf>,
}

impl Overrides {
    pub fn apply(&self, cfg: &mut ProblemConfig) -> Result<(), Error> {
        if let Some(g) = self.grid {
            cfg.grid = g;
        }
        if let Some(t) = self.tol {
            cfg.quadrature.tolerance = t;
        }
        if let Some(f) = self.format {
            cfg.output.format = f;
        }
        if let Some(p) = &self.projection {
            cfg.output.projection = p.clone();
        }
        if let Some(d) = &self.out_dir {
            cfg.output.dir = Some(d.display().to_string());
        }
        cfg.validate()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Whether a failure fails the run.
    pub enforced: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub name: String,
    pub problem: String,
    pub sign: String,
    pub nu: usize,
    pub nv: usize,
    pub samples: usize,
    pub singular_cells: usize,
    pub max_quadrature_estimate: f64,
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
    pub pass: bool,
}

impl Report {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn table(&self) -> String {
        let mut s = format!("{} ({} {}, {}x{} grid)\n", self.name, self.problem, self.sign, self.nu, self.nv);
        s += &format!("  {:<26} {:>12}  {:>9}  status\n", "invariant", "max", "tolerance");
        for c in &self.checks {
            let status = match (c.pass, c.enforced) {
                (true, _) => "PASS",
                (false, true) => "FAIL",
                (false, false) => "WARN",
            };
            s += &format!("  {:<26} {:>12.3e}  {:>9.1e}  {status}\n", c.name, c.value, c.tolerance);
        }
        s += &format!("  {:<26} {:>12}\n", "singular cells", self.singular_cells);
        for w in &self.warnings {
            s += &format!("warning: {w}\n");
        }
        s += if self.pass { "result: PASS\n" } else { "result: FAIL\n" };
        s
    }
}

pub struct Outcome {
    pub solved: Solved,
    pub grid: GridSpec,
    pub samples: Vec<PointReport>,
    pub cells: Vec<SingularCell>,
    pub report: Report,
}

fn max_of(it: impl Iterator<Item = f64>) -> f64 {
    it.filter(|x| !x.is_nan()).fold(0.0, f64::max)
}

fn check(name: &str, value: f64, tolerance: f64, enforced: bool) -> Check {
    Check { name: name.to_string(), value, tolerance, pass: value <= tolerance, enforced }
}

/// Solve the configured problem, sample its grid and evaluate every
/// applicable invariant.
pub fn evaluate(cfg: &ProblemConfig) -> Result<Outcome, Error> {
    let solved = cfg.solve()?;
    let grid = cfg.grid_spec()?;
    let s = &solved.surface;
    let dc = &cfg.diagnostics;
    let tol = &cfg.tolerances;
    let samples = sample_grid(s, &grid, dc)?;
    let cells = singular_scan(s, &grid, dc.tau_sing)?;
    let mut warnings = Vec::new();
    let mut checks = vec![
        check("conformality", max_of(samples.iter().map(|p| p.conformality)), tol.conformality, true),
        check("minimality", max_of(samples.iter().map(|p| p.minimality_residual)), tol.minimality, true),
    ];
    if s.provenance.is_isoclinic() {
        checks.push(check("isoclinic", max_of(samples.iter().map(|p| p.isoclinic_residual)), tol.isoclinic, true));
    }
    let disagreement = max_of(samples.iter().filter_map(|p| match (p.k_conformal, p.k_secondform) {
        (Some(a), Some(b)) => Some((a - b).abs() / (1.0 + b.abs())),
        _ => None,
    }));
    checks.push(check("curvature agreement", disagreement, tol.curvature_agreement, cells.is_empty()));
    if !cells.is_empty() {
        warnings.push(format!(
            "{} grid cells touch the metric singular set; curvature agreement is not enforced",
            cells.len()
        ));
    }
    if let (Some(prim), Some(e)) = (cfg.expected_primitive()?, &cfg.expected) {
        let mut worst: f64 = 0.0;
        for p in &samples {
            let target = eval_complex_all(&prim, Complex64::new(p.u, p.v))?.re();
            worst = worst.max((p.x - target).max_abs());
        }
        checks.push(check("closed form", worst, e.tolerance, true));
    }
    if let Some(c) = &solved.curve {
        let axis: Vec<f64> = c.samples().filter(|t| s.domain.contains(Complex64::new(*t, 0.0))).collect();
        if cfg.checks.geodesic {
            let mut worst: f64 = 0.0;
            for t in &axis {
                worst = worst.max(geodesic_check(s, c, *t, dc)?);
            }
            checks.push(check("geodesic", worst, tol.geodesic, true));
        }
        if cfg.checks.asymptotic {
            let mut worst: f64 = 0.0;
            for t in &axis {
                worst = worst.max(asymptotic_check(s, c, *t, dc)?);
            }
            checks.push(check("asymptotic", worst, tol.asymptotic, true));
        }
    }
    let pass = checks.iter().all(|c| c.pass || !c.enforced);
    let report = Report {
        name: cfg.display_name(),
        problem: s.provenance.as_str().to_string(),
        sign: s.sign.as_str().to_string(),
        nu: grid.nu,
        nv: grid.nv,
        samples: samples.len(),
        singular_cells: cells.len(),
        max_quadrature_estimate: max_of(samples.iter().map(|p| p.quad_estimate)),
        checks,
        warnings,
        pass,
    };
    Ok(Outcome { solved, grid, samples, cells, report })
}

impl Outcome {
    /// `Err` with exit code 3 when an enforced invariant failed.
    pub fn verdict(&self) -> Result<(), Error> {
        if self.report.pass {
            return Ok(());
        }
        let failed: Vec<&str> =
            self.report.checks.iter().filter(|c| c.enforced && !c.pass).map(|c| c.name.as_str()).collect();
        Err(Error::new(ErrorKind::Tolerance, "CheckFailed", format!("invariants not met: {}", failed.join(", "))))
    }

    /// Write CSV and/or OBJ plus the JSON report into `dir`.
    pub fn write_artifacts(&self, cfg: &ProblemConfig, dir: &Path) -> Result<Vec<PathBuf>, Error> {
        std::fs::create_dir_all(dir).map_err(|e| Error::from(e).context(dir.display()))?;
        let name = cfg.display_name();
        let mut written = Vec::new();
        let open = |ext: &str| -> Result<(PathBuf, BufWriter<File>), Error> {
            let path = dir.join(format!("{name}.{ext}"));
            let f = File::create(&path).map_err(|e| Error::from(e).context(path.display()))?;
            Ok((path, BufWriter::new(f)))
        };
        if cfg.output.format.csv() {
            let (path, w) = open("csv")?;
            write_csv(w, &self.samples)?;
            written.push(path);
        }
        if cfg.output.format.obj() {
            let (path, w) = open("obj")?;
            write_obj(w, &name, &self.grid, &self.samples, &cfg.output.projection)?;
            written.push(path);
        }
        let (path, w) = open("report.json")?;
        serde_json::to_writer_pretty(w, &self.report).map_err(|e| Error::config(e.to_string()))?;
        written.push(path);
        Ok(written)
    }
}
