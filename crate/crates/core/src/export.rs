//! CSV and Wavefront OBJ output of sampled surfaces.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::algebra::Vec4;
use crate::diagnostics::PointReport;
use crate::grid::GridSpec;

pub const CSV_HEADER: &str = "u,v,x1,x2,x3,x4,E,F,G,lambda2,K,isoclinic_residual,minimality_residual";

/// Linear map R⁴ → R³ for mesh output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Projection {
    DropX1,
    #[default]
    DropX2,
    DropX3,
    DropX4,
    /// Rows of a 3×4 matrix.
    Matrix([[f64; 4]; 3]),
}

impl Projection {
    pub fn apply(&self, x: &Vec4) -> [f64; 3] {
        let drop = |k: usize| {
            let mut out = [0.0; 3];
            let mut n = 0;
            for (i, v) in x.0.iter().enumerate() {
                if i != k {
                    out[n] = *v;
                    n += 1;
                }
            }
            out
        };
        match self {
            Projection::DropX1 => drop(0),
            Projection::DropX2 => drop(1),
            Projection::DropX3 => drop(2),
            Projection::DropX4 => drop(3),
            Projection::Matrix(m) => m.map(|row| row.iter().zip(x.0.iter()).map(|(a, b)| a * b).sum()),
        }
    }
}

impl std::str::FromStr for Projection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "drop-x1" => Projection::DropX1,
            "drop-x2" => Projection::DropX2,
            "drop-x3" => Projection::DropX3,
            "drop-x4" => Projection::DropX4,
            _ => return Err(format!("unknown projection `{s}` (expected drop-x1..drop-x4)")),
        })
    }
}

/// 17 significant digits.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_csv<W: Write>(mut out: W, samples: &[PointReport]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for p in samples {
        let k = p.curvature().unwrap_or(f64::NAN);
        let cols = [
            p.u,
            p.v,
            p.x[0],
            p.x[1],
            p.x[2],
            p.x[3],
            p.e,
            p.f,
            p.g,
            p.lambda2,
            k,
            p.isoclinic_residual,
            p.minimality_residual,
        ];
        let line: Vec<String> = cols.iter().map(|x| num(*x)).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}

/// Grid vertices (row-major, as sampled) and two triangles per grid cell.
pub fn write_obj<W: Write>(mut out: W, name: &str, grid: &GridSpec, samples: &[PointReport], projection: &Projection) -> io::Result<()> {
    assert_eq!(samples.len(), grid.len(), "samples must cover the grid");
    writeln!(out, "# {name}: {}x{} grid", grid.nu, grid.nv)?;
    writeln!(out, "o {name}")?;
    for p in samples {
        let [a, b, c] = projection.apply(&p.x);
        writeln!(out, "v {} {} {}", num(a), num(b), num(c))?;
    }
    let idx = |i: usize, j: usize| i * grid.nv + j + 1;
    for i in 0..grid.nu - 1 {
        for j in 0..grid.nv - 1 {
            writeln!(out, "f {} {} {}", idx(i, j), idx(i + 1, j), idx(i + 1, j + 1))?;
            writeln!(out, "f {} {} {}", idx(i, j), idx(i + 1, j + 1), idx(i, j + 1))?;
        }
    }
    Ok(())
}
