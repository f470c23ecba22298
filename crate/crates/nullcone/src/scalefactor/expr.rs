use std::fmt;

use crate::error::{Error, Result};
use crate::numeric::{HyperDual, Real};

use super::{parse_scale_factor, Preset};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Exp,
    Ln,
    Sqrt,
    Csc,
    Csch,
    Sech,
    Cot,
    Coth,
}

impl Func {
    pub const ALL: [Func; 14] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Sinh,
        Func::Cosh,
        Func::Tanh,
        Func::Exp,
        Func::Ln,
        Func::Sqrt,
        Func::Csc,
        Func::Csch,
        Func::Sech,
        Func::Cot,
        Func::Coth,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
            Func::Csc => "csc",
            Func::Csch => "csch",
            Func::Sech => "sech",
            Func::Cot => "cot",
            Func::Coth => "coth",
        }
    }

    pub fn from_name(s: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == s)
    }

    fn apply<S: Real>(self, x: S) -> Result<S> {
        let nonzero = |d: S, what: &str| -> Result<S> {
            if d.value() == 0.0 {
                Err(Error::Domain(format!("{what} of {}", x.value())))
            } else {
                Ok(d)
            }
        };
        Ok(match self {
            Func::Sin => x.sin(),
            Func::Cos => x.cos(),
            Func::Tan => x.tan(),
            Func::Sinh => x.sinh(),
            Func::Cosh => x.cosh(),
            Func::Tanh => x.tanh(),
            Func::Exp => x.exp(),
            Func::Ln => {
                if x.value() <= 0.0 {
                    return Err(Error::Domain(format!("ln of non-positive {}", x.value())));
                }
                x.ln()
            }
            Func::Sqrt => {
                if x.value() < 0.0 {
                    return Err(Error::Domain(format!("sqrt of negative {}", x.value())));
                }
                x.sqrt()
            }
            Func::Csc => nonzero(x.sin(), "csc")?.recip(),
            Func::Csch => nonzero(x.sinh(), "csch")?.recip(),
            Func::Sech => x.cosh().recip(),
            Func::Cot => x.cos() / nonzero(x.sin(), "cot")?,
            Func::Coth => x.cosh() / nonzero(x.sinh(), "coth")?,
        })
    }
}

/// Abstract syntax tree of a scale-factor expression in the variable `t`.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    T,
    Pi,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    fn has_t(&self) -> bool {
        match self {
            Expr::T => true,
            Expr::Num(_) | Expr::Pi => false,
            Expr::Neg(a) | Expr::Call(_, a) => a.has_t(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                a.has_t() || b.has_t()
            }
        }
    }

    pub fn eval<S: Real>(&self, t: &S) -> Result<S> {
        Ok(match self {
            Expr::Num(v) => S::cst(*v),
            Expr::Pi => S::cst(std::f64::consts::PI),
            Expr::T => t.clone(),
            Expr::Neg(a) => -a.eval(t)?,
            Expr::Add(a, b) => a.eval(t)? + b.eval(t)?,
            Expr::Sub(a, b) => a.eval(t)? - b.eval(t)?,
            Expr::Mul(a, b) => a.eval(t)? * b.eval(t)?,
            Expr::Div(a, b) => {
                let d = b.eval(t)?;
                if d.value() == 0.0 {
                    return Err(Error::Domain(format!("division by zero at t = {}", t.value())));
                }
                a.eval(t)? / d
            }
            Expr::Pow(a, b) => {
                let base = a.eval(t)?;
                if b.has_t() {
                    if base.value() <= 0.0 {
                        return Err(Error::Domain("variable exponent of a non-positive base".into()));
                    }
                    (b.eval(t)? * base.ln()).exp()
                } else {
                    let e = b.eval(&0.0f64)?;
                    if e.fract() == 0.0 && e.abs() <= 64.0 {
                        if e < 0.0 && base.value() == 0.0 {
                            return Err(Error::Domain("zero raised to a negative power".into()));
                        }
                        base.powi(e as i32)
                    } else {
                        if base.value() <= 0.0 {
                            return Err(Error::Domain(format!(
                                "non-integer power of non-positive {}",
                                base.value()
                            )));
                        }
                        base.powf(e)
                    }
                }
            }
            Expr::Call(f, a) => f.apply(a.eval(t)?)?,
        })
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(v) if *v < 0.0 => 3,
            _ => 5,
        }
    }

    fn write_child(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) if *v < 0.0 => write!(f, "-{:?}", -v),
            Expr::Num(v) => write!(f, "{v:?}"),
            Expr::T => write!(f, "t"),
            Expr::Pi => write!(f, "pi"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.write_child(f, 3)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write_child(f, 1)?;
                write!(f, " {} ", if matches!(self, Expr::Add(..)) { "+" } else { "-" })?;
                b.write_child(f, 2)
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.write_child(f, 2)?;
                write!(f, "{}", if matches!(self, Expr::Mul(..)) { "*" } else { "/" })?;
                b.write_child(f, 3)
            }
            Expr::Pow(a, b) => {
                a.write_child(f, 5)?;
                write!(f, "^")?;
                b.write_child(f, 3)
            }
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

/// A parsed scale factor, optionally tagged with the preset it came from.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaleExpr {
    pub expr: Expr,
    pub preset: Option<Preset>,
}

impl ScaleExpr {
    pub fn parse(src: &str) -> Result<ScaleExpr> {
        parse_scale_factor(src)
    }

    /// Accepts a preset name or an expression.
    pub fn resolve(src: &str) -> Result<ScaleExpr> {
        match Preset::from_name(src.trim()) {
            Some(p) => Ok(p.expr()),
            None => parse_scale_factor(src),
        }
    }

    pub fn constant(v: f64) -> ScaleExpr {
        ScaleExpr { expr: Expr::Num(v), preset: None }
    }

    /// `factor * a(t)`.
    pub fn scaled(&self, factor: f64) -> ScaleExpr {
        ScaleExpr { expr: Expr::Mul(Box::new(Expr::Num(factor)), Box::new(self.expr.clone())), preset: None }
    }

    pub fn is_constant(&self) -> bool {
        !self.expr.has_t()
    }

    /// Evaluates `a` on any scalar representation, rejecting non-finite results.
    pub fn eval<S: Real>(&self, t: &S) -> Result<S> {
        let v = self.expr.eval(t)?;
        if !v.is_finite() {
            return Err(Error::Domain(format!("non-finite scale factor at t = {}", t.value())));
        }
        Ok(v)
    }

    /// Like [`ScaleExpr::eval`], additionally requiring `a(t) > 0`.
    pub fn eval_positive<S: Real>(&self, t: &S) -> Result<S> {
        let v = self.eval(t)?;
        if v.value() <= 0.0 {
            return Err(Error::NonPositiveScale { t: t.value(), value: v.value() });
        }
        Ok(v)
    }

    /// `(a, a', a'')` at `t`.
    pub fn eval_a(&self, t: f64) -> Result<(f64, f64, f64)> {
        let r = self.eval(&HyperDual::variable(t, 0, 1))?;
        Ok((r.value(), r.grad().first().copied().unwrap_or(0.0), r.hess(0, 0)))
    }

    /// Logarithmic derivative `a'/a`.
    pub fn psi_dot(&self, t: f64) -> Result<f64> {
        let (a, da, _) = self.eval_a(t)?;
        if a <= 0.0 {
            return Err(Error::NonPositiveScale { t, value: a });
        }
        Ok(da / a)
    }
}

impl fmt::Display for ScaleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.expr)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_derivatives() {
        assert_eq!(Preset::Einstein.expr().eval_a(0.37).unwrap(), (1.0, 0.0, 0.0));
        assert_eq!(Preset::MatterK0.expr().eval_a(2.0).unwrap(), (4.0, 4.0, 2.0));
        let (a, da, dda) = Preset::DsK0.expr().eval_a(0.5).unwrap();
        assert!((a - 2.0).abs() < 1e-15 && (da + 4.0).abs() < 1e-14 && (dda - 16.0).abs() < 1e-13);
    }

    #[test]
    fn parsed_sum_with_finite_difference_oracle() {
        let e = ScaleExpr::parse("2*t + sin(t^2)").unwrap();
        let (a, da, _) = e.eval_a(1.0).unwrap();
        let h = 1e-5;
        let fd = (e.eval(&(1.0 + h)).unwrap() - e.eval(&(1.0 - h)).unwrap()) / (2.0 * h);
        assert!((a - 2.8414709848078967).abs() < 1e-15);
        assert!((da - fd).abs() < 1e-9);
        assert!((da - 3.0806046117362795).abs() < 1e-14);
    }

    #[test]
    fn domain_errors() {
        let e = ScaleExpr::parse("1/t").unwrap();
        assert!(matches!(e.eval_a(0.0), Err(Error::Domain(_))));
        let e = ScaleExpr::parse("ln(t)").unwrap();
        assert!(matches!(e.eval_a(-1.0), Err(Error::Domain(_))));
        let e = ScaleExpr::parse("sqrt(t)").unwrap();
        assert!(matches!(e.eval_a(0.0), Err(Error::Domain(_))));
        let e = ScaleExpr::parse("-t").unwrap();
        assert!(matches!(e.eval_positive(&1.0), Err(Error::NonPositiveScale { .. })));
    }

    #[test]
    fn csch_identity() {
        let a = ScaleExpr::parse("1/sinh(t)").unwrap();
        let b = Preset::DsKm1.expr();
        for i in 0..20 {
            let t = 0.1 + 2.9 * i as f64 / 19.0;
            assert!((a.eval(&t).unwrap() - b.eval(&t).unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn de_sitter_presets_times_conformal_factor() {
        for i in 0..20 {
            let t = 0.1 + 2.9 * i as f64 / 19.0;
            assert!((Preset::DsKm1.expr().eval(&t).unwrap() * t.sinh() - 1.0).abs() < 1e-13);
            assert!((Preset::DsK0.expr().eval(&t).unwrap() * t - 1.0).abs() < 1e-13);
            assert!((Preset::DsKp1.expr().eval(&t).unwrap() * t.sin() - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn psi_dot_matches_log_derivative() {
        for p in Preset::ALL {
            let e = p.expr();
            let (lo, hi) = p.sample_domain();
            for i in 0..20 {
                let t = lo + (hi - lo) * i as f64 / 19.0;
                let l = e.eval(&HyperDual::variable(t, 0, 1)).unwrap().ln();
                assert!((e.psi_dot(t).unwrap() - l.grad().first().copied().unwrap_or(0.0)).abs() < 1e-12, "{p:?} at {t}");
            }
        }
    }
}
