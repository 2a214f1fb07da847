//! Real-analytic data: expressions, their parser, curves and path quadrature.

pub mod curve;
pub mod expr;
pub mod parse;
pub mod quadrature;

pub use curve::{CurveError, CurveR4, Triad};
pub use expr::{EvalError, Expr, Func};
pub use parse::{parse, ParseError};
pub use quadrature::{path_integral, QuadConfig, QuadError};
