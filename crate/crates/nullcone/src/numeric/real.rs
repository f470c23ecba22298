use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Scalar type that geometric formulas are generic over.
///
/// Elementary functions are expressed through [`Real::lift`], which composes a
/// univariate function, given its value and first three derivatives at
/// `self.value()`, with the argument.
pub trait Real:
    Clone
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
{
    fn cst(v: f64) -> Self;
    fn value(&self) -> f64;
    fn lift(&self, d: [f64; 4]) -> Self;
    /// True when the value and every carried derivative are finite.
    fn is_finite(&self) -> bool;
    /// True when the value and every carried derivative vanish.
    fn is_zero(&self) -> bool;

    fn sq(&self) -> Self {
        self.clone() * self.clone()
    }
    fn recip(&self) -> Self {
        let x = self.value();
        let r = 1.0 / x;
        self.lift([r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r])
    }
    fn sin(&self) -> Self {
        let (s, c) = self.value().sin_cos();
        self.lift([s, c, -s, -c])
    }
    fn cos(&self) -> Self {
        let (s, c) = self.value().sin_cos();
        self.lift([c, -s, -c, s])
    }
    fn tan(&self) -> Self {
        let t = self.value().tan();
        let p = 1.0 + t * t;
        self.lift([t, p, 2.0 * t * p, (2.0 + 6.0 * t * t) * p])
    }
    fn sinh(&self) -> Self {
        let x = self.value();
        let (s, c) = (x.sinh(), x.cosh());
        self.lift([s, c, s, c])
    }
    fn cosh(&self) -> Self {
        let x = self.value();
        let (s, c) = (x.sinh(), x.cosh());
        self.lift([c, s, c, s])
    }
    fn tanh(&self) -> Self {
        let u = self.value().tanh();
        let p = 1.0 - u * u;
        self.lift([u, p, -2.0 * u * p, (6.0 * u * u - 2.0) * p])
    }
    fn exp(&self) -> Self {
        let e = self.value().exp();
        self.lift([e; 4])
    }
    fn ln(&self) -> Self {
        let x = self.value();
        let r = 1.0 / x;
        self.lift([x.ln(), r, -r * r, 2.0 * r * r * r])
    }
    fn sqrt(&self) -> Self {
        let s = self.value().sqrt();
        self.lift([s, 0.5 / s, -0.25 / (s * s * s), 0.375 / (s * s * s * s * s)])
    }
    fn atan(&self) -> Self {
        let x = self.value();
        let p = 1.0 / (1.0 + x * x);
        self.lift([x.atan(), p, -2.0 * x * p * p, (6.0 * x * x - 2.0) * p * p * p])
    }
    fn atanh(&self) -> Self {
        let x = self.value();
        let p = 1.0 / (1.0 - x * x);
        self.lift([x.atanh(), p, 2.0 * x * p * p, (2.0 + 6.0 * x * x) * p * p * p])
    }
    fn powf(&self, e: f64) -> Self {
        let x = self.value();
        self.lift([
            x.powf(e),
            e * x.powf(e - 1.0),
            e * (e - 1.0) * x.powf(e - 2.0),
            e * (e - 1.0) * (e - 2.0) * x.powf(e - 3.0),
        ])
    }
    fn powi(&self, k: i32) -> Self {
        if k < 0 {
            return self.powi(-k).recip();
        }
        let mut acc = Self::cst(1.0);
        let mut base = self.clone();
        let mut e = k as u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.sq();
            }
        }
        acc
    }
}

/// Two-argument arctangent with exact derivatives on any representation.
///
/// The value follows `f64::atan2`; derivatives are those of `atan(y/x)` or
/// `-atan(x/y)`, whichever quotient is bounded.
pub fn atan2<S: Real>(y: &S, x: &S) -> S {
    let (yv, xv) = (y.value(), x.value());
    let target = yv.atan2(xv);
    let base = if xv.abs() >= yv.abs() {
        (y.clone() / x.clone()).atan()
    } else {
        -(x.clone() / y.clone()).atan()
    };
    let shift = target - base.value();
    base + shift
}

impl Real for f64 {
    fn cst(v: f64) -> Self {
        v
    }
    fn value(&self) -> f64 {
        *self
    }
    fn lift(&self, d: [f64; 4]) -> Self {
        d[0]
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn sq(&self) -> Self {
        self * self
    }
    fn recip(&self) -> Self {
        1.0 / self
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn tan(&self) -> Self {
        f64::tan(*self)
    }
    fn sinh(&self) -> Self {
        f64::sinh(*self)
    }
    fn cosh(&self) -> Self {
        f64::cosh(*self)
    }
    fn tanh(&self) -> Self {
        f64::tanh(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn atan(&self) -> Self {
        f64::atan(*self)
    }
    fn atanh(&self) -> Self {
        f64::atanh(*self)
    }
    fn powf(&self, e: f64) -> Self {
        f64::powf(*self, e)
    }
    fn powi(&self, k: i32) -> Self {
        f64::powi(*self, k)
    }
}
