//! Top-level error with a stable class name and process exit code.

use std::fmt;

use crate::analytic::{CurveError, EvalError, ParseError, QuadError};
use crate::diagnostics::DiagError;
use crate::solvers::SolverError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad input (exit 1).
    Config,
    /// A solver or diagnostic precondition failed (exit 2).
    Precondition,
    /// A numerical target or invariant was not met (exit 3).
    Tolerance,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Error {
    pub kind: ErrorKind,
    pub class: &'static str,
    pub message: String,
}

impl Error {
    pub fn new(kind: ErrorKind, class: &'static str, message: impl Into<String>) -> Self {
        Error { kind, class, message: message.into() }
    }

    pub fn config(message: impl Into<String>) -> Self {
        Error::new(ErrorKind::Config, "ConfigError", message)
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            ErrorKind::Config => 1,
            ErrorKind::Precondition => 2,
            ErrorKind::Tolerance => 3,
        }
    }

    pub fn context(mut self, what: impl fmt::Display) -> Self {
        self.message = format!("{what}: {}", self.message);
        self
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error[{}]: {}", self.class, self.message)
    }
}

impl std::error::Error for Error {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        let class = match e {
            ParseError::Syntax { .. } => "SyntaxError",
            ParseError::UnknownFunction { .. } => "UnknownFunction",
            ParseError::NonIntegerExponent { .. } => "NonIntegerExponent",
        };
        Error::new(ErrorKind::Config, class, e.to_string())
    }
}

impl From<EvalError> for Error {
    fn from(e: EvalError) -> Self {
        let class = match e {
            EvalError::DivisionByZero { .. } => "DivisionByZero",
            EvalError::NotReal(_) => "NotReal",
            EvalError::NonFinite(_) => "NonFinite",
        };
        Error::new(ErrorKind::Precondition, class, e.to_string())
    }
}

impl From<QuadError> for Error {
    fn from(e: QuadError) -> Self {
        match e {
            QuadError::InvalidConfig(m) => Error::config(m),
            QuadError::ToleranceNotMet { .. } => Error::new(ErrorKind::Tolerance, "ToleranceNotMet", e.to_string()),
            QuadError::Eval(e) => e.into(),
        }
    }
}

impl From<CurveError> for Error {
    fn from(e: CurveError) -> Self {
        match e {
            CurveError::Parse { component, source } => Error::from(source).context(format_args!("component {}", component + 1)),
            CurveError::BadRadius(_) => Error::config(e.to_string()),
            CurveError::Eval { component, t, source } => {
                Error::from(source).context(format_args!("component {} at t = {t}", component + 1))
            }
        }
    }
}

impl From<SolverError> for Error {
    fn from(e: SolverError) -> Self {
        let class = match &e {
            SolverError::Curve(c) => return c.clone().into(),
            SolverError::Quad(q) => return q.clone().into(),
            SolverError::Eval(v) => return v.clone().into(),
            SolverError::Domain(m) => return Error::config(m.clone()),
            SolverError::WrongCausalSign { .. } => "WrongCausalSign",
            SolverError::SingularOnAxis { .. } => "SingularOnAxis",
            SolverError::TriadInvalid { .. } => "TriadInvalid",
            SolverError::IncompatibleDPrime { .. } => "IncompatibleDPrime",
            SolverError::SignMismatch { .. } => "SignMismatch",
            SolverError::DegenerateMu => "DegenerateMu",
            SolverError::SingularDomain { .. } => "SingularDomain",
            SolverError::NotGoodCurve { .. } => "NotGoodCurve",
        };
        Error::new(ErrorKind::Precondition, class, e.to_string())
    }
}

impl From<DiagError> for Error {
    fn from(e: DiagError) -> Self {
        let class = match &e {
            DiagError::Quad(q) => return q.clone().into(),
            DiagError::Eval(v) => return v.clone().into(),
            DiagError::Curve(c) => return c.clone().into(),
            DiagError::Quadric(_) => "QuadricError",
            DiagError::Algebra(_) => "NotIsothermic",
            DiagError::NearSingular { .. } => "NearSingular",
            DiagError::NotSpacelike { .. } => "NotSpacelike",
            DiagError::CurveOffSurface { .. } => "CurveOffSurface",
        };
        Error::new(ErrorKind::Precondition, class, e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::new(ErrorKind::Config, "IoError", e.to_string())
    }
}
