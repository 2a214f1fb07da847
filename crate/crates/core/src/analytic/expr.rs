//! Expression trees for real-analytic data of one variable.
//!
//! The same tree serves both the real function on the interval and its
//! holomorphic extension: every primitive is entire (or a quotient of
//! entire functions, or the principal square root), so evaluating at a
//! complex argument *is* the extension.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Sinh,
    Cosh,
    Exp,
    /// Principal branch.
    Sqrt,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Exp => "exp",
            Func::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "exp" => Func::Exp,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }

    fn apply_complex(self, z: Complex64) -> Complex64 {
        match self {
            Func::Sin => z.sin(),
            Func::Cos => z.cos(),
            Func::Sinh => z.sinh(),
            Func::Cosh => z.cosh(),
            Func::Exp => z.exp(),
            Func::Sqrt => z.sqrt(),
        }
    }

    fn apply_real(self, x: f64) -> Option<f64> {
        Some(match self {
            Func::Sin => x.sin(),
            Func::Cos => x.cos(),
            Func::Sinh => x.sinh(),
            Func::Cosh => x.cosh(),
            Func::Exp => x.exp(),
            Func::Sqrt if x >= 0.0 => x.sqrt(),
            Func::Sqrt => return None,
        })
    }
}

/// Expression AST. Build it through the operator impls and the helper
/// constructors, which fold constants and drop trivial identities; the
/// parser uses the same constructors, so printed output reparses to the
/// same tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    /// The imaginary unit.
    Imag,
    /// The (single) variable.
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Call(Func, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("division by zero in denominator `{denominator}`")]
    DivisionByZero { denominator: String },
    #[error("expression `{0}` is not real-valued here")]
    NotReal(String),
    #[error("non-finite value from `{0}`")]
    NonFinite(String),
}

impl Expr {
    pub fn constant(c: f64) -> Expr {
        Expr::Const(c)
    }

    pub fn var() -> Expr {
        Expr::Var
    }

    pub fn imag() -> Expr {
        Expr::Imag
    }

    pub fn zero() -> Expr {
        Expr::Const(0.0)
    }

    pub fn one() -> Expr {
        Expr::Const(1.0)
    }

    pub fn as_const(&self) -> Option<f64> {
        match self {
            Expr::Const(c) => Some(*c),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_const() == Some(0.0)
    }

    fn is_one(&self) -> bool {
        self.as_const() == Some(1.0)
    }

    /// True when the expression does not depend on the variable.
    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Const(_) | Expr::Imag => true,
            Expr::Var => false,
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Call(_, a) => a.is_constant(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.is_constant() && b.is_constant()
            }
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Imag | Expr::Var => 1,
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Call(_, a) => 1 + a.size(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn pow(self, n: i32) -> Expr {
        match (n, &self) {
            (0, _) => Expr::one(),
            (1, _) => self,
            (_, Expr::Const(c)) => fold(c.powi(n)).unwrap_or_else(|| Expr::Pow(Box::new(self), n)),
            _ => Expr::Pow(Box::new(self), n),
        }
    }

    pub fn call(f: Func, arg: Expr) -> Expr {
        if let Expr::Const(c) = arg {
            if let Some(v) = f.apply_real(c).and_then(fold) {
                return v;
            }
        }
        Expr::Call(f, Box::new(arg))
    }

    pub fn sin(self) -> Expr {
        Expr::call(Func::Sin, self)
    }

    pub fn cos(self) -> Expr {
        Expr::call(Func::Cos, self)
    }

    pub fn sinh(self) -> Expr {
        Expr::call(Func::Sinh, self)
    }

    pub fn cosh(self) -> Expr {
        Expr::call(Func::Cosh, self)
    }

    pub fn exp(self) -> Expr {
        Expr::call(Func::Exp, self)
    }

    pub fn sqrt(self) -> Expr {
        Expr::call(Func::Sqrt, self)
    }

    /// Symbolic derivative with respect to the variable.
    pub fn differentiate(&self) -> Expr {
        match self {
            Expr::Const(_) | Expr::Imag => Expr::zero(),
            Expr::Var => Expr::one(),
            Expr::Neg(a) => -a.differentiate(),
            Expr::Add(a, b) => a.differentiate() + b.differentiate(),
            Expr::Sub(a, b) => a.differentiate() - b.differentiate(),
            Expr::Mul(a, b) => {
                if a.is_constant() {
                    (**a).clone() * b.differentiate()
                } else if b.is_constant() {
                    a.differentiate() * (**b).clone()
                } else {
                    a.differentiate() * (**b).clone() + (**a).clone() * b.differentiate()
                }
            }
            Expr::Div(a, b) => {
                if b.is_constant() {
                    a.differentiate() / (**b).clone()
                } else {
                    let num = a.differentiate() * (**b).clone() - (**a).clone() * b.differentiate();
                    num / (**b).clone().pow(2)
                }
            }
            Expr::Pow(a, n) => Expr::Const(*n as f64) * (**a).clone().pow(n - 1) * a.differentiate(),
            Expr::Call(f, a) => {
                let inner = a.differentiate();
                if inner.is_zero() {
                    return Expr::zero();
                }
                let a = (**a).clone();
                let outer = match f {
                    Func::Sin => a.cos(),
                    Func::Cos => -a.sin(),
                    Func::Sinh => a.cosh(),
                    Func::Cosh => a.sinh(),
                    Func::Exp => a.exp(),
                    Func::Sqrt => return inner / (Expr::Const(2.0) * a.sqrt()),
                };
                outer * inner
            }
        }
    }

    /// Evaluate at a complex argument (holomorphic extension).
    pub fn eval_complex(&self, w: Complex64) -> Result<Complex64, EvalError> {
        let v = self.eval_c(w)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(EvalError::NonFinite(self.to_string()))
        }
    }

    fn eval_c(&self, w: Complex64) -> Result<Complex64, EvalError> {
        Ok(match self {
            Expr::Const(c) => Complex64::new(*c, 0.0),
            Expr::Imag => Complex64::new(0.0, 1.0),
            Expr::Var => w,
            Expr::Neg(a) => -a.eval_c(w)?,
            Expr::Add(a, b) => a.eval_c(w)? + b.eval_c(w)?,
            Expr::Sub(a, b) => a.eval_c(w)? - b.eval_c(w)?,
            Expr::Mul(a, b) => a.eval_c(w)? * b.eval_c(w)?,
            Expr::Div(a, b) => {
                let d = b.eval_c(w)?;
                if d == Complex64::new(0.0, 0.0) {
                    return Err(EvalError::DivisionByZero { denominator: b.to_string() });
                }
                a.eval_c(w)? / d
            }
            Expr::Pow(a, n) => {
                let base = a.eval_c(w)?;
                if *n < 0 && base == Complex64::new(0.0, 0.0) {
                    return Err(EvalError::DivisionByZero { denominator: a.to_string() });
                }
                base.powi(*n)
            }
            Expr::Call(f, a) => f.apply_complex(a.eval_c(w)?),
        })
    }

    /// Evaluate at a real argument in plain `f64` arithmetic. Fails on
    /// expressions that are not real there (the imaginary unit, square
    /// roots of negative numbers).
    pub fn eval_real(&self, t: f64) -> Result<f64, EvalError> {
        let v = self.eval_r(t)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(EvalError::NonFinite(self.to_string()))
        }
    }

    fn eval_r(&self, t: f64) -> Result<f64, EvalError> {
        Ok(match self {
            Expr::Const(c) => *c,
            Expr::Imag => return Err(EvalError::NotReal(self.to_string())),
            Expr::Var => t,
            Expr::Neg(a) => -a.eval_r(t)?,
            Expr::Add(a, b) => a.eval_r(t)? + b.eval_r(t)?,
            Expr::Sub(a, b) => a.eval_r(t)? - b.eval_r(t)?,
            Expr::Mul(a, b) => a.eval_r(t)? * b.eval_r(t)?,
            Expr::Div(a, b) => {
                let d = b.eval_r(t)?;
                if d == 0.0 {
                    return Err(EvalError::DivisionByZero { denominator: b.to_string() });
                }
                a.eval_r(t)? / d
            }
            Expr::Pow(a, n) => {
                let base = a.eval_r(t)?;
                if *n < 0 && base == 0.0 {
                    return Err(EvalError::DivisionByZero { denominator: a.to_string() });
                }
                base.powi(*n)
            }
            Expr::Call(f, a) => {
                f.apply_real(a.eval_r(t)?).ok_or_else(|| EvalError::NotReal(self.to_string()))?
            }
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Const(c) if c.is_sign_negative() => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }
}

fn fold(v: f64) -> Option<Expr> {
    v.is_finite().then_some(Expr::Const(v))
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        match self {
            Expr::Const(c) => Expr::Const(-c),
            Expr::Neg(a) => *a,
            other => Expr::Neg(Box::new(other)),
        }
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(self, o: Expr) -> Expr {
        match (&self, &o) {
            (Expr::Const(a), Expr::Const(b)) => Expr::Const(a + b),
            _ if self.is_zero() => o,
            _ if o.is_zero() => self,
            _ => Expr::Add(Box::new(self), Box::new(o)),
        }
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, o: Expr) -> Expr {
        match (&self, &o) {
            (Expr::Const(a), Expr::Const(b)) => Expr::Const(a - b),
            _ if o.is_zero() => self,
            _ if self.is_zero() => -o,
            _ => Expr::Sub(Box::new(self), Box::new(o)),
        }
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, o: Expr) -> Expr {
        match (&self, &o) {
            (Expr::Const(a), Expr::Const(b)) => Expr::Const(a * b),
            (Expr::Imag, Expr::Imag) => Expr::Const(-1.0),
            _ if self.is_zero() || o.is_zero() => Expr::zero(),
            _ if self.is_one() => o,
            _ if o.is_one() => self,
            (Expr::Const(c), _) if *c == -1.0 => -o,
            (_, Expr::Const(c)) if *c == -1.0 => -self,
            _ => Expr::Mul(Box::new(self), Box::new(o)),
        }
    }
}

impl Div for Expr {
    type Output = Expr;
    fn div(self, o: Expr) -> Expr {
        match (&self, &o) {
            (Expr::Const(a), Expr::Const(b)) if *b != 0.0 => Expr::Const(a / b),
            _ if o.is_one() => self,
            _ if self.is_zero() && o.as_const().is_some_and(|c| c != 0.0) => Expr::zero(),
            _ => Expr::Div(Box::new(self), Box::new(o)),
        }
    }
}

impl Default for Expr {
    fn default() -> Self {
        Expr::zero()
    }
}

impl From<f64> for Expr {
    fn from(c: f64) -> Self {
        Expr::Const(c)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, e: &Expr, paren: bool| -> fmt::Result {
            if paren {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        let p = self.precedence();
        match self {
            Expr::Const(c) if c.is_sign_negative() => write!(f, "(-{})", -c),
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Imag => f.write_str("i"),
            Expr::Var => f.write_str("t"),
            Expr::Neg(a) => {
                f.write_str("-")?;
                wrap(f, a, a.precedence() < 4)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                let op = match self {
                    Expr::Add(..) => " + ",
                    Expr::Sub(..) => " - ",
                    Expr::Mul(..) => "*",
                    _ => "/",
                };
                wrap(f, a, a.precedence() < p)?;
                f.write_str(op)?;
                wrap(f, b, b.precedence() <= p)
            }
            Expr::Pow(a, n) => {
                wrap(f, a, a.precedence() <= 4)?;
                if *n < 0 {
                    write!(f, "^(-{})", -(*n as i64))
                } else {
                    write!(f, "^{n}")
                }
            }
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}
