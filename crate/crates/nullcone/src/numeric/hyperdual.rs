use std::ops::{Add, Div, Mul, Neg, Sub};

use nalgebra::DMatrix;

use super::Real;
use crate::error::{Error, Result};

/// Largest number of active directions a [`HyperDual`] can carry.
pub const MAX_DIRS: usize = 8;

/// Truncated second-order Taylor number: value, gradient and symmetric Hessian.
///
/// Storage is a fixed-size array; only the first `dirs` slots are meaningful.
/// Constants have `dirs == 0` and combine with any other hyper-dual.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HyperDual {
    dirs: usize,
    v: f64,
    g: [f64; MAX_DIRS],
    h: [[f64; MAX_DIRS]; MAX_DIRS],
}

impl HyperDual {
    pub fn constant(v: f64) -> Self {
        HyperDual { dirs: 0, v, g: [0.0; MAX_DIRS], h: [[0.0; MAX_DIRS]; MAX_DIRS] }
    }

    /// The `index`-th coordinate among `dirs` active directions, seeded at `v`.
    pub fn variable(v: f64, index: usize, dirs: usize) -> Self {
        assert!(dirs <= MAX_DIRS && index < dirs, "direction {index} of {dirs} out of range");
        let mut x = Self::constant(v);
        x.dirs = dirs;
        x.g[index] = 1.0;
        x
    }

    /// Seeds every coordinate of `point` as an active direction.
    pub fn seed(point: &[f64]) -> Vec<HyperDual> {
        point.iter().enumerate().map(|(i, &v)| Self::variable(v, i, point.len())).collect()
    }

    pub fn dirs(&self) -> usize {
        self.dirs
    }

    pub fn grad(&self) -> &[f64] {
        &self.g[..self.dirs]
    }

    pub fn hess(&self, i: usize, j: usize) -> f64 {
        self.h[i][j]
    }

    pub fn hess_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.dirs, self.dirs, |i, j| self.h[i][j])
    }

    fn width(a: &Self, b: &Self) -> usize {
        a.dirs.max(b.dirs)
    }

    fn scale(mut self, s: f64) -> Self {
        let n = self.dirs;
        self.v *= s;
        for i in 0..n {
            self.g[i] *= s;
            for j in 0..n {
                self.h[i][j] *= s;
            }
        }
        self
    }
}

impl Add for HyperDual {
    type Output = Self;
    fn add(mut self, b: Self) -> Self {
        let n = Self::width(&self, &b);
        self.dirs = n;
        self.v += b.v;
        for i in 0..n {
            self.g[i] += b.g[i];
            for j in 0..n {
                self.h[i][j] += b.h[i][j];
            }
        }
        self
    }
}

impl Sub for HyperDual {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Neg for HyperDual {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul for HyperDual {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let n = Self::width(&self, &b);
        let mut r = Self::constant(self.v * b.v);
        r.dirs = n;
        for i in 0..n {
            r.g[i] = self.g[i] * b.v + self.v * b.g[i];
            for j in 0..n {
                r.h[i][j] = self.h[i][j] * b.v
                    + self.v * b.h[i][j]
                    + self.g[i] * b.g[j]
                    + b.g[i] * self.g[j];
            }
        }
        r
    }
}

impl Div for HyperDual {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        self * b.recip()
    }
}

impl Add<f64> for HyperDual {
    type Output = Self;
    fn add(mut self, b: f64) -> Self {
        self.v += b;
        self
    }
}

impl Sub<f64> for HyperDual {
    type Output = Self;
    fn sub(mut self, b: f64) -> Self {
        self.v -= b;
        self
    }
}

impl Mul<f64> for HyperDual {
    type Output = Self;
    fn mul(self, b: f64) -> Self {
        self.scale(b)
    }
}

impl Div<f64> for HyperDual {
    type Output = Self;
    fn div(self, b: f64) -> Self {
        self.scale(1.0 / b)
    }
}

impl Real for HyperDual {
    fn cst(v: f64) -> Self {
        Self::constant(v)
    }
    fn value(&self) -> f64 {
        self.v
    }
    fn lift(&self, d: [f64; 4]) -> Self {
        let n = self.dirs;
        let mut r = Self::constant(d[0]);
        r.dirs = n;
        for i in 0..n {
            r.g[i] = d[1] * self.g[i];
            for j in 0..n {
                r.h[i][j] = d[1] * self.h[i][j] + d[2] * self.g[i] * self.g[j];
            }
        }
        r
    }
    fn is_zero(&self) -> bool {
        let n = self.dirs;
        self.v == 0.0 && self.g[..n].iter().all(|&x| x == 0.0) && self.h[..n].iter().all(|row| row[..n].iter().all(|&x| x == 0.0))
    }
    fn is_finite(&self) -> bool {
        let n = self.dirs;
        self.v.is_finite()
            && self.g[..n].iter().all(|x| x.is_finite())
            && self.h[..n].iter().all(|row| row[..n].iter().all(|x| x.is_finite()))
    }
}

/// Evaluates `f` at `point` and returns its value, gradient and Hessian.
pub fn hyperdual_eval<F>(f: F, point: &[f64]) -> Result<(f64, Vec<f64>, DMatrix<f64>)>
where
    F: Fn(&[HyperDual]) -> Result<HyperDual>,
{
    if point.is_empty() || point.len() > MAX_DIRS {
        return Err(Error::Invalid(format!(
            "hyper-dual evaluation needs 1..={MAX_DIRS} directions, got {}",
            point.len()
        )));
    }
    let x = HyperDual::seed(point);
    let mut r = f(&x)?;
    if !r.is_finite() {
        return Err(Error::Domain("non-finite derivative".into()));
    }
    r.dirs = point.len();
    Ok((r.v, r.grad().to_vec(), r.hess_matrix()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_at_two() {
        let (v, g, h) = hyperdual_eval(|x| Ok(x[0].powi(3)), &[2.0]).unwrap();
        assert_eq!((v, g[0], h[(0, 0)]), (8.0, 12.0, 12.0));
    }

    #[test]
    fn quadratic_form() {
        let (v, g, h) =
            hyperdual_eval(|y| Ok((y[0] * y[0] - y[1] * y[1]) * 0.5), &[3.0, 1.0]).unwrap();
        assert_eq!(v, 4.0);
        assert_eq!(g, vec![3.0, -1.0]);
        assert_eq!(h, DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]));
    }

    #[test]
    fn mixed_partial_of_sinh_times_chi() {
        let f = |x: &[HyperDual]| Ok(x[0].sinh() * x[1]);
        let (_, _, h) = hyperdual_eval(f, &[1.0, 2.0]).unwrap();
        // central-difference oracle for the mixed partial
        let e = 1e-4;
        let g = |t: f64, c: f64| t.sinh() * c;
        let fd = (g(1.0 + e, 2.0 + e) - g(1.0 + e, 2.0 - e) - g(1.0 - e, 2.0 + e)
            + g(1.0 - e, 2.0 - e))
            / (4.0 * e * e);
        assert!((h[(0, 1)] - fd).abs() < 1e-7);
        assert!((h[(0, 1)] - 1.5430806348152437).abs() < 1e-15);
    }

    #[test]
    fn constants_carry_no_derivatives() {
        let c = HyperDual::constant(3.5);
        assert!(c.grad().is_empty());
        let x = HyperDual::variable(2.0, 0, 1);
        let p = c * x;
        assert_eq!(p.grad(), &[3.5]);
        assert_eq!(p.hess(0, 0), 0.0);
    }

    #[test]
    fn log_domain_surfaces_as_non_finite() {
        let r = hyperdual_eval(|x| Ok(x[0].sqrt()), &[0.0]);
        assert!(matches!(r, Err(Error::Domain(_))));
    }
}
