//! Minimal spacelike surfaces in the pseudo-Euclidean space R⁴₂.
//!
//! The crate builds conformal minimal immersions `f = base + Re ∫ g` from
//! analytic data (Cauchy and Björling problems, Weierstrass data, pairs of
//! holomorphic functions), and checks them: fundamental forms, Gauss
//! curvature, isoclinicity, hyperbolic angles, geodesics and singular sets.

// `!(a > b)` is used on purpose so that NaN fails a check
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod analytic;
pub mod config;
pub mod diagnostics;
pub mod error;
pub mod export;
pub mod gallery;
pub mod grid;
pub mod quadric;
pub mod report;
pub mod solvers;

pub use error::{Error, ErrorKind};
